#include "drc/query.hpp"

#include <cctype>
#include <functional>
#include <set>

namespace drc {

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
    case FKind::Atom: return neg ? Formula::make_atom(negate_atom(f->atom)) : f;
    case FKind::And:
    case FKind::Or: {
        FKind k = f->kind;
        if (neg) k = k == FKind::And ? FKind::Or : FKind::And;
        return Formula::make_binary(k, nnf(f->left, neg), nnf(f->right, neg));
    }
    case FKind::Not: return nnf(f->left, !neg);
    case FKind::Exists:
    case FKind::Forall: {
        FKind k = f->kind;
        if (neg) k = k == FKind::Exists ? FKind::Forall : FKind::Exists;
        return Formula::make_quant(k, f->var, nnf(f->left, neg));
    }
    }
    return f;
}

std::string fresh_name(const std::string& name, const std::set<std::string>& used) {
    std::size_t end = name.size();
    while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
    std::string base = name.substr(0, end);
    for (int k = 1;; ++k) {
        std::string cand = base + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

void collect(const FormulaPtr& f, std::vector<int>& used) {
    auto term = [&](const Term& t) {
        if (t.is_var()) used[t.var] = 1;
    };
    switch (f->kind) {
    case FKind::Atom:
        for (const auto& t : f->atom.args) term(t);
        term(f->atom.lhs);
        term(f->atom.rhs);
        break;
    case FKind::And:
    case FKind::Or:
        collect(f->left, used);
        collect(f->right, used);
        break;
    case FKind::Not:
    case FKind::Exists:
    case FKind::Forall:
        if (f->var >= 0) used[f->var] = 1;
        collect(f->left, used);
        break;
    }
}

FormulaPtr renumber(const FormulaPtr& f, const std::vector<int>& m) {
    auto term = [&](Term t) {
        if (t.is_var()) t.var = m[t.var];
        return t;
    };
    switch (f->kind) {
    case FKind::Atom: {
        Atom a = f->atom;
        for (auto& t : a.args) t = term(t);
        a.lhs = term(a.lhs);
        a.rhs = term(a.rhs);
        return Formula::make_atom(a);
    }
    case FKind::And:
    case FKind::Or: return Formula::make_binary(f->kind, renumber(f->left, m), renumber(f->right, m));
    case FKind::Not: return Formula::make_not(renumber(f->left, m));
    case FKind::Exists:
    case FKind::Forall: return Formula::make_quant(f->kind, m[f->var], renumber(f->left, m));
    }
    return f;
}

}  // namespace

Query normalize_query(const Query& q) {
    Query out = q;
    out.formula = nnf(q.formula, false);

    // Drop variables the formula no longer references, keeping outputs.
    std::vector<int> used(q.vars.size(), 0);
    collect(out.formula, used);
    for (int v : q.output) used[v] = 1;
    std::vector<int> m(q.vars.size(), -1);
    out.vars.clear();
    for (std::size_t v = 0; v < q.vars.size(); ++v)
        if (used[v]) {
            m[v] = static_cast<int>(out.vars.size());
            out.vars.push_back(q.vars[v]);
        }
    for (auto& v : out.output) v = m[v];
    out.formula = renumber(out.formula, m);

    // Unique names: free variables keep theirs, quantified ones are renamed
    // in depth-first order when they clash with a name already in use.
    std::set<std::string> names;
    for (int v : free_variables(out.formula)) names.insert(out.vars[v].name);
    for (int v : out.output) names.insert(out.vars[v].name);
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
        switch (f->kind) {
        case FKind::Atom: break;
        case FKind::And:
        case FKind::Or:
            walk(f->left);
            walk(f->right);
            break;
        case FKind::Not: walk(f->left); break;
        case FKind::Exists:
        case FKind::Forall: {
            auto& name = out.vars[f->var].name;
            if (names.count(name)) name = fresh_name(name, names);
            names.insert(name);
            walk(f->left);
            break;
        }
        }
    };
    walk(out.formula);
    return out;
}

}  // namespace drc
