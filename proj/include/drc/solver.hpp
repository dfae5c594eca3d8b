#pragma once

#include "drc/cinstance.hpp"

#include <map>
#include <optional>
#include <string>

namespace drc {

// Equality closure of a global condition: classes of nulls and constants that
// every satisfying mapping sends to one value.
class Closure {
public:
    bool consistent = true;
    std::string reason;  // why inconsistent

    // Canonical class member: the bound constant if any, else the smallest null.
    Value rep(const Value& v) const;
    bool same(const Value& a, const Value& b) const { return rep(a) == rep(b); }
    std::optional<Constant> binding(const Value& v) const;

    std::map<Value, Value> reps;  // only non-trivial classes
};

Closure solve(const CInstance& i);
bool is_consistent(const CInstance& i);
bool forced_equal(const CInstance& i, const Value& a, const Value& b);
// φ entails the comparison c (φ ∧ ¬c unsatisfiable).
bool entails(const CInstance& i, const Condition& c);
Condition negate_condition(const Condition& c);

}  // namespace drc
