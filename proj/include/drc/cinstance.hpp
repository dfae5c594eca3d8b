#pragma once

#include "drc/tree.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace drc {

// Atomic condition of the global condition. Comparisons are stored with
// op in {=, !=, <, <=, LIKE}: > and >= are mirrored, = and != sort operands.
struct Condition {
    bool is_fact = false;  // NegatedFact
    CmpOp op = CmpOp::Eq;
    Value lhs, rhs;
    bool negated = false;  // NOT LIKE
    int rel = -1;
    std::vector<Value> args;

    static Condition compare(Value l, CmpOp op, Value r, bool negated_like = false);
    static Condition negated_fact(int rel, std::vector<Value> args);

    auto operator<=>(const Condition&) const = default;
    bool operator==(const Condition&) const = default;
};

struct Tuple {
    std::vector<Value> cells;
    bool core = true;  // inserted for a query atom (false: foreign-key fill)
};

using Homomorphism = std::vector<std::optional<Value>>;
using Coverage = std::set<int>;

class CInstance {
public:
    SchemaPtr schema;
    std::vector<std::vector<Tuple>> tables;
    std::vector<Condition> conditions;
    std::vector<int> counters;                // last allocated null index per domain
    std::vector<std::vector<Value>> members;  // values in table cells per domain, first-appearance order
    Coverage tracked;

    static CInstance empty(SchemaPtr schema);

    Null fresh_null(int domain);
    bool has_tuple(int rel, const std::vector<Value>& cells) const;
    // Inserts a tuple and closes it under foreign keys with fresh fills.
    void insert_tuple(int rel, std::vector<Value> cells, bool core = true);
    // Appends a condition unless already present; negated facts get their
    // foreign-key targets anchored in the tables.
    void add_condition(Condition c);
    bool has_condition(const Condition& c) const;
    bool is_member(int domain, const Value& v) const;

    int tuple_count() const;
    int size() const { return tuple_count() + static_cast<int>(conditions.size()); }
    // Tuples inserted for query atoms plus conditions: the measure the chase limit bounds.
    int search_size() const;

    std::string null_name(const Null& n) const;
    std::string value_text(const Value& v) const;
    std::string condition_text(const Condition& c) const;
    std::vector<Null> nulls() const;  // every null in tables or conditions, sorted

private:
    void anchor(int rel, int attr, const Value& key);
    void note_member(int domain, const Value& v);
};

int instance_size(const CInstance& i);
CInstance new_instance(SchemaPtr schema);

// h-image of a conjunction added to a copy of i; throws Error on unmapped variables.
CInstance add_to_ins(const CInstance& i, const Conjunction& conj, const Homomorphism& h);
Value image(const Term& t, const Homomorphism& h);
Condition condition_of(const Atom& a, const Homomorphism& h);

CInstance merge_instances(const CInstance& a, const CInstance& b);

// Invariant under renaming of unpinned nulls: equal iff isomorphic.
std::string canonical_key(const CInstance& i, const std::vector<Null>& pinned = {});
// Exact serialization including null names, tuple order and counters.
std::string exact_key(const CInstance& i);

struct GroundInstance {
    SchemaPtr schema;
    std::vector<std::set<std::vector<Constant>>> tables;

    static GroundInstance empty(SchemaPtr schema);
    bool contains(int rel, const std::vector<Constant>& t) const { return tables[rel].count(t) > 0; }
    // Typed active domain: constants per schema domain, sorted.
    std::vector<std::vector<Constant>> active_domain() const;
    std::string to_text() const;
    bool operator==(const GroundInstance& o) const { return tables == o.tables; }
};

using Mapping = std::map<Null, Constant>;
using Pool = std::vector<std::vector<Constant>>;  // candidate constants per domain

Constant apply(const Mapping& mu, const Value& v);
GroundInstance apply(const CInstance& i, const Mapping& mu);
bool compare_holds(const Constant& l, CmpOp op, const Constant& r, bool negated_like = false);
// Truth of one atomic condition under a total mapping into world `k`.
bool holds(const Condition& c, const Mapping& mu, const GroundInstance& k);

bool satisfies_keys(const GroundInstance& k);

// Visits every total mapping of the instance's nulls into `pool` that satisfies
// the global condition and the schema's keys; the visitor returns false to stop.
void for_each_world(const CInstance& i, const Pool& pool,
                    const std::function<bool(const Mapping&, const GroundInstance&)>& visit);
// Possible worlds within the pool, deduplicated under set semantics.
std::vector<GroundInstance> enumerate_worlds(const CInstance& i, const Pool& pool);

}  // namespace drc
