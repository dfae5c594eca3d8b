#include "drc/eval.hpp"

#include <functional>

namespace drc {

namespace {

const Constant& term_value(const Term& t, const Assignment& a) {
    if (!t.is_var()) return t.c;
    if (!a[t.var]) throw Error("evaluation reached an unassigned variable");
    return *a[t.var];
}

bool eval_leaf(const Atom& atom, const GroundInstance& k, const Assignment& a) {
    if (atom.relational) {
        std::vector<Constant> row;
        row.reserve(atom.args.size());
        for (const auto& t : atom.args) row.push_back(term_value(t, a));
        return k.contains(atom.rel, row) != atom.negated;
    }
    return compare_holds(term_value(atom.lhs, a), atom.op, term_value(atom.rhs, a), atom.negated);
}

struct Ground {
    const Query& q;
    const GroundInstance& k;
    std::vector<std::vector<Constant>> dom;

    Ground(const Query& q, const GroundInstance& k) : q(q), k(k), dom(k.active_domain()) {}

    const std::vector<Constant>& range(int var) const { return dom[q.var_domain(var)]; }

    bool eval(const NodePtr& n, Assignment& a) const {
        switch (n->kind) {
        case NKind::Leaf: return eval_leaf(n->atom, k, a);
        case NKind::And: return eval(n->left, a) && eval(n->right, a);
        case NKind::Or: return eval(n->left, a) || eval(n->right, a);
        case NKind::Exists:
        case NKind::Forall: {
            bool exists = n->kind == NKind::Exists;
            auto saved = a[n->var];
            bool result = !exists;
            for (const auto& c : range(n->var)) {
                a[n->var] = c;
                if (eval(n->left, a) == exists) {
                    result = exists;
                    break;
                }
            }
            a[n->var] = saved;
            return result;
        }
        }
        return false;
    }

    // Visits every satisfying assignment of the output variables.
    void outputs(const NodePtr& root, const std::function<void(Assignment&)>& visit) const {
        Assignment a(q.vars.size());
        std::vector<int> vars;
        for (int v : q.output)
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        std::function<void(std::size_t)> rec = [&](std::size_t p) {
            if (p == vars.size()) {
                if (eval(root, a)) visit(a);
                return;
            }
            for (const auto& c : range(vars[p])) {
                a[vars[p]] = c;
                rec(p + 1);
            }
            a[vars[p]].reset();
        };
        rec(0);
    }

    void cover(const NodePtr& n, Assignment& a, Coverage& out) const {
        switch (n->kind) {
        case NKind::Leaf:
            if (eval_leaf(n->atom, k, a)) out.insert(n->leaf_id);
            return;
        case NKind::And:
        case NKind::Or:
            cover(n->left, a, out);
            cover(n->right, a, out);
            return;
        case NKind::Exists:
        case NKind::Forall: {
            auto saved = a[n->var];
            for (const auto& c : range(n->var)) {
                a[n->var] = c;
                cover(n->left, a, out);
            }
            a[n->var] = saved;
            return;
        }
        }
    }
};

struct LeafPath {
    NodePtr leaf;
    std::vector<int> bound;  // quantified variables on the root path
};

void collect_paths(const NodePtr& n, std::vector<int>& bound, std::vector<LeafPath>& out) {
    switch (n->kind) {
    case NKind::Leaf: out.push_back({n, bound}); return;
    case NKind::And:
    case NKind::Or:
        collect_paths(n->left, bound, out);
        collect_paths(n->right, bound, out);
        return;
    case NKind::Exists:
    case NKind::Forall:
        bound.push_back(n->var);
        collect_paths(n->left, bound, out);
        bound.pop_back();
        return;
    }
}

}  // namespace

bool eval_node(const Query& q, const NodePtr& n, const GroundInstance& k, Assignment& a) {
    return Ground(q, k).eval(n, a);
}

std::set<OutputTuple> eval_ground(const Query& q, const SyntaxTree& t, const GroundInstance& k) {
    std::set<OutputTuple> out;
    Ground(q, k).outputs(t.root, [&](Assignment& a) {
        OutputTuple row;
        for (int v : q.output) row.push_back(*a[v]);
        out.insert(std::move(row));
    });
    return out;
}

std::set<OutputTuple> eval_ground(const Query& q, const GroundInstance& k) {
    Query n = normalize_query(q);
    return eval_ground(n, build_syntax_tree(n), k);
}

Coverage cov_ground(const Query& q, const SyntaxTree& t, const GroundInstance& k) {
    Ground g(q, k);
    Coverage out;
    g.outputs(t.root, [&](Assignment& a) { g.cover(t.root, a, out); });
    return out;
}

Coverage cov_ground(const Query& q, const GroundInstance& k) {
    Query n = normalize_query(q);
    return cov_ground(n, build_syntax_tree(n), k);
}

Coverage cov_ground_fast(const Query& q, const SyntaxTree& t, const GroundInstance& k,
                         const std::optional<Coverage>& candidates) {
    Ground g(q, k);
    std::vector<LeafPath> paths;
    std::vector<int> bound;
    collect_paths(t.root, bound, paths);

    // Only the bound variables that occur in the leaf need values; an empty
    // range anywhere on the path leaves nothing to union over.
    struct Todo {
        const LeafPath* path;
        std::vector<int> vars;
    };
    std::vector<Todo> todo;
    for (const auto& p : paths) {
        if (candidates && !candidates->count(p.leaf->leaf_id)) continue;
        bool empty = false;
        for (int v : p.bound) empty = empty || g.range(v).empty();
        if (empty) continue;
        std::vector<int> vars;
        for (int v : p.leaf->free)
            if (std::find(p.bound.begin(), p.bound.end(), v) != p.bound.end()) vars.push_back(v);
        todo.push_back({&p, vars});
    }

    Coverage out;
    g.outputs(t.root, [&](Assignment& a) {
        for (const auto& item : todo) {
            int id = item.path->leaf->leaf_id;
            if (out.count(id)) continue;
            std::function<bool(std::size_t)> rec = [&](std::size_t p) -> bool {
                if (p == item.vars.size()) return eval_leaf(item.path->leaf->atom, k, a);
                int v = item.vars[p];
                auto saved = a[v];
                bool hit = false;
                for (const auto& c : g.range(v)) {
                    a[v] = c;
                    if (rec(p + 1)) {
                        hit = true;
                        break;
                    }
                }
                a[v] = saved;
                return hit;
            };
            if (rec(0)) out.insert(id);
        }
    });
    return out;
}

std::string coverage_text(const Coverage& c) {
    std::string s = "{";
    bool first = true;
    for (int id : c) {
        s += (first ? "" : ",") + std::to_string(id);
        first = false;
    }
    return s + "}";
}

}  // namespace drc
