#include "drc/eval.hpp"

#include <functional>

namespace drc {

namespace {

// Leaves are judged modulo the equality closure of φ: positive atoms need the
// tuple, negated atoms need its absence or the negated fact in φ, comparisons
// need membership in φ or an analytic truth over their operands.
class TreeSat {
public:
    TreeSat(const Query& q, const CInstance& i, const TreeSatOptions& opts)
        : q_(q), i_(i), opts_(opts), cl_(solve(i)) {
        tables_.resize(i.tables.size());
        for (std::size_t r = 0; r < i.tables.size(); ++r)
            for (const auto& t : i.tables[r]) tables_[r].insert(reps(t.cells));
        for (const auto& c : i.conditions) conds_.insert(rep_condition(c));
    }

    bool run(const NodePtr& t, Homomorphism h) {
        h.resize(q_.vars.size());
        std::vector<int> open;
        for (int v : t->free)
            if (!h[v]) open.push_back(v);
        std::function<bool(std::size_t)> rec = [&](std::size_t p) -> bool {
            if (p == open.size()) return sat(t, h);
            for (const auto& m : i_.members[q_.var_domain(open[p])]) {
                h[open[p]] = m;
                if (rec(p + 1)) return true;
            }
            h[open[p]].reset();
            return false;
        };
        return rec(0);
    }

private:
    const Query& q_;
    const CInstance& i_;
    TreeSatOptions opts_;
    Closure cl_;
    std::vector<std::set<std::vector<Value>>> tables_;
    std::set<Condition> conds_;

    std::vector<Value> reps(const std::vector<Value>& vs) const {
        std::vector<Value> out;
        out.reserve(vs.size());
        for (const auto& v : vs) out.push_back(cl_.rep(v));
        return out;
    }

    Condition rep_condition(const Condition& c) const {
        if (c.is_fact) return Condition::negated_fact(c.rel, reps(c.args));
        return Condition::compare(cl_.rep(c.lhs), c.op, cl_.rep(c.rhs), c.negated);
    }

    bool leaf(const Atom& a, const Homomorphism& h) const {
        if (a.relational) {
            std::vector<Value> cells;
            for (const auto& t : a.args) cells.push_back(cl_.rep(image(t, h)));
            bool present = tables_[a.rel].count(cells) > 0;
            if (!a.negated) return present;
            return !present || conds_.count(Condition::negated_fact(a.rel, cells)) > 0;
        }
        Condition c = condition_of(a, h);
        Condition r = rep_condition(c);
        if (conds_.count(r)) return true;
        if (!r.lhs.is_null() && !r.rhs.is_null())
            return compare_holds(r.lhs.constant(), r.op, r.rhs.constant(), r.negated);
        if (r.lhs == r.rhs && (r.op == CmpOp::Eq || r.op == CmpOp::Le)) return true;
        return opts_.entailment && entails(i_, c);
    }

    bool sat(const NodePtr& n, Homomorphism& h) const {
        switch (n->kind) {
        case NKind::Leaf: return leaf(n->atom, h);
        case NKind::And: return sat(n->left, h) && sat(n->right, h);
        case NKind::Or: return sat(n->left, h) || sat(n->right, h);
        case NKind::Exists:
        case NKind::Forall: {
            bool exists = n->kind == NKind::Exists;
            auto saved = h[n->var];
            bool result = !exists;
            for (const auto& m : i_.members[q_.var_domain(n->var)]) {
                h[n->var] = m;
                if (sat(n->left, h) == exists) {
                    result = exists;
                    break;
                }
            }
            h[n->var] = saved;
            return result;
        }
        }
        return false;
    }
};

}  // namespace

bool tree_sat(const Query& q, const NodePtr& t, const CInstance& i, const Homomorphism& h,
              const TreeSatOptions& opts) {
    TreeSat s(q, i, opts);
    return s.run(t, h);
}

bool tree_sat(const Query& q, const SyntaxTree& t, const CInstance& i, const Homomorphism& h,
              const TreeSatOptions& opts) {
    return tree_sat(q, t.root, i, h, opts);
}

}  // namespace drc
