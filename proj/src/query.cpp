#include "drc/query.hpp"

#include <functional>
#include <set>

namespace drc {

std::string_view op_text(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Like: return "LIKE";
    }
    return "?";
}

CmpOp complement(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Like: return CmpOp::Like;
    }
    return op;
}

CmpOp mirror(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
    default: return op;
    }
}

Atom negate_atom(Atom a) {
    if (a.relational || a.op == CmpOp::Like)
        a.negated = !a.negated;
    else
        a.op = complement(a.op);
    return a;
}

LikePattern parse_like(const std::string& pattern) {
    auto pos = pattern.find('%');
    if (pos == std::string::npos) return {pattern, true};
    if (pos != pattern.size() - 1)
        throw ParseError("unsupported LIKE pattern '" + pattern + "' (only a single trailing %)");
    return {pattern.substr(0, pos), false};
}

bool like_matches(const std::string& s, const LikePattern& p) {
    if (p.exact) return s == p.prefix;
    return s.size() >= p.prefix.size() && s.compare(0, p.prefix.size(), p.prefix) == 0;
}

FormulaPtr Formula::make_atom(Atom a) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Atom;
    f->atom = std::move(a);
    return f;
}

FormulaPtr Formula::make_binary(FKind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}

FormulaPtr Formula::make_not(FormulaPtr c) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Not;
    f->left = std::move(c);
    return f;
}

FormulaPtr Formula::make_quant(FKind k, int var, FormulaPtr c) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = var;
    f->left = std::move(c);
    return f;
}

std::vector<int> free_variables(const FormulaPtr& f) {
    std::vector<int> out;
    std::set<int> seen;
    std::vector<int> bound;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        auto use = [&](const Term& t) {
            if (!t.is_var()) return;
            for (int b : bound)
                if (b == t.var) return;
            if (seen.insert(t.var).second) out.push_back(t.var);
        };
        switch (g->kind) {
        case FKind::Atom:
            if (g->atom.relational)
                for (const auto& t : g->atom.args) use(t);
            else {
                use(g->atom.lhs);
                use(g->atom.rhs);
            }
            break;
        case FKind::And:
        case FKind::Or:
            walk(g->left);
            walk(g->right);
            break;
        case FKind::Not: walk(g->left); break;
        case FKind::Exists:
        case FKind::Forall:
            bound.push_back(g->var);
            walk(g->left);
            bound.pop_back();
            break;
        }
    };
    walk(f);
    return out;
}

std::string term_text(const Query& q, const Term& t) {
    return t.is_var() ? q.var_name(t.var) : t.c.literal();
}

std::string atom_text(const Query& q, const Atom& a) {
    std::string body;
    if (a.relational) {
        body = q.schema->relations[a.rel].name + "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) body += ", ";
            body += term_text(q, a.args[i]);
        }
        body += ")";
        return a.negated ? "¬" + body : body;
    }
    body = term_text(q, a.lhs) + " " + std::string(op_text(a.op)) + " " + term_text(q, a.rhs);
    return a.negated ? "¬(" + body + ")" : body;
}

std::string formula_text(const Query& q, const FormulaPtr& f) {
    switch (f->kind) {
    case FKind::Atom: return atom_text(q, f->atom);
    case FKind::And: return "(" + formula_text(q, f->left) + " ∧ " + formula_text(q, f->right) + ")";
    case FKind::Or: return "(" + formula_text(q, f->left) + " ∨ " + formula_text(q, f->right) + ")";
    case FKind::Not: return "¬" + formula_text(q, f->left);
    case FKind::Exists: return "∃" + q.var_name(f->var) + " " + formula_text(q, f->left);
    case FKind::Forall: return "∀" + q.var_name(f->var) + " " + formula_text(q, f->left);
    }
    return "?";
}

std::string query_text(const Query& q) {
    std::string out = "{(";
    for (std::size_t i = 0; i < q.output.size(); ++i) {
        if (i) out += ", ";
        out += q.var_name(q.output[i]);
    }
    return out + ") | " + formula_text(q, q.formula) + "}";
}

namespace {

FormulaPtr remap(const FormulaPtr& f, const std::vector<int>& m) {
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
    case FKind::Or: return Formula::make_binary(f->kind, remap(f->left, m), remap(f->right, m));
    case FKind::Not: return Formula::make_not(remap(f->left, m));
    case FKind::Exists:
    case FKind::Forall: return Formula::make_quant(f->kind, m[f->var], remap(f->left, m));
    }
    return f;
}

}  // namespace

Query difference_query(const Query& q1, const Query& q2) {
    if (q1.schema != q2.schema && q1.schema->to_json() != q2.schema->to_json())
        throw ParseError("difference of queries over different schemas");
    if (q1.output.size() != q2.output.size())
        throw ParseError("difference of queries with output arity " + std::to_string(q1.output.size()) +
                         " and " + std::to_string(q2.output.size()));
    for (std::size_t i = 0; i < q1.output.size(); ++i)
        if (q1.var_domain(q1.output[i]) != q2.var_domain(q2.output[i]))
            throw ParseError("difference of queries whose output position " + std::to_string(i) +
                             " has different domains");
    Query d;
    d.schema = q1.schema;
    d.vars = q1.vars;
    d.output = q1.output;
    std::vector<int> m(q2.vars.size());
    for (std::size_t v = 0; v < q2.vars.size(); ++v) {
        m[v] = static_cast<int>(d.vars.size());
        d.vars.push_back(q2.vars[v]);
    }
    for (std::size_t i = 0; i < q2.output.size(); ++i) m[q2.output[i]] = q1.output[i];
    d.formula = Formula::make_binary(FKind::And, q1.formula, Formula::make_not(remap(q2.formula, m)));
    return normalize_query(d);
}

SafetyReport check_safety(const Query& input) {
    Query q = normalize_query(input);
    // A variable under a negated relational atom is restricted when it also
    // occurs positively, or when it is universally bound (the dual of an
    // existential variable in a positive atom).
    std::vector<int> positive(q.vars.size(), 0), negative(q.vars.size(), 0), universal(q.vars.size(), 0);
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
        switch (f->kind) {
        case FKind::Atom:
            if (f->atom.relational)
                for (const auto& t : f->atom.args)
                    if (t.is_var()) (f->atom.negated ? negative : positive)[t.var] = 1;
            break;
        case FKind::And:
        case FKind::Or:
            walk(f->left);
            walk(f->right);
            break;
        case FKind::Not: walk(f->left); break;
        case FKind::Exists: walk(f->left); break;
        case FKind::Forall:
            universal[f->var] = 1;
            walk(f->left);
            break;
        }
    };
    walk(q.formula);
    SafetyReport r;
    for (std::size_t v = 0; v < q.vars.size(); ++v)
        if (negative[v] && !positive[v] && !universal[v]) {
            r.ok = false;
            r.offending.push_back(q.vars[v].name);
        }
    return r;
}

}  // namespace drc
