#include "drc/chase.hpp"

#include <functional>

namespace drc {

bool is_cq_neg(const Query& input) {
    Query q = normalize_query(input);
    std::function<bool(const FormulaPtr&)> ok = [&](const FormulaPtr& f) -> bool {
        switch (f->kind) {
        case FKind::Atom: return true;
        case FKind::And: return ok(f->left) && ok(f->right);
        case FKind::Exists: return ok(f->left);
        default: return false;
        }
    };
    return ok(q.formula);
}

CInstance cq_neg_universal(const Query& input) {
    Query q = normalize_query(input);
    if (!is_cq_neg(q)) throw Error("cq_neg_universal: query uses disjunction or a universal quantifier");
    SafetyReport safety = check_safety(q);
    if (!safety.ok) throw Error("cq_neg_universal: unsafe query");
    SyntaxTree t = build_syntax_tree(q);
    CInstance i = new_instance(q.schema);
    Homomorphism h(q.vars.size());
    Conjunction conj;
    for (int id = 0; id < t.leaf_count(); ++id) {
        const Atom& a = t.leaves[id];
        auto bind = [&](const Term& term) {
            if (term.is_var() && !h[term.var]) h[term.var] = Value(i.fresh_null(q.var_domain(term.var)));
        };
        if (a.relational)
            for (const auto& x : a.args) bind(x);
        else {
            bind(a.lhs);
            bind(a.rhs);
        }
        conj.push_back({a, id, false});
    }
    for (int v : q.output)
        if (!h[v]) h[v] = Value(i.fresh_null(q.var_domain(v)));
    return add_to_ins(i, conj, h);
}

}  // namespace drc
