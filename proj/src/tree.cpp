#include "drc/tree.hpp"

#include <algorithm>
#include <functional>

namespace drc {

namespace {

void merge_free(std::vector<int>& into, const std::vector<int>& from, int bound = -1) {
    for (int v : from)
        if (v != bound && std::find(into.begin(), into.end(), v) == into.end()) into.push_back(v);
}

std::vector<int> atom_vars(const Atom& a) {
    std::vector<int> out;
    auto add = [&](const Term& t) {
        if (t.is_var() && std::find(out.begin(), out.end(), t.var) == out.end()) out.push_back(t.var);
    };
    if (a.relational)
        for (const auto& t : a.args) add(t);
    else {
        add(a.lhs);
        add(a.rhs);
    }
    return out;
}

}  // namespace

NodePtr Node::leaf(Atom a, int id, bool flipped) {
    auto n = std::make_shared<Node>();
    n->kind = NKind::Leaf;
    n->free = atom_vars(a);
    n->atom = std::move(a);
    n->leaf_id = id;
    n->flipped = flipped;
    return n;
}

NodePtr Node::binary(NKind k, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->free = l->free;
    merge_free(n->free, r->free);
    n->has_quantifier = l->has_quantifier || r->has_quantifier;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

NodePtr Node::quant(NKind k, int var, NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->var = var;
    merge_free(n->free, child->free, var);
    n->has_quantifier = true;
    n->left = std::move(child);
    return n;
}

SyntaxTree build_syntax_tree(const Query& q) {
    SyntaxTree t;
    std::function<NodePtr(const FormulaPtr&)> build = [&](const FormulaPtr& f) -> NodePtr {
        switch (f->kind) {
        case FKind::Atom: {
            int id = static_cast<int>(t.leaves.size());
            t.leaves.push_back(f->atom);
            return Node::leaf(f->atom, id, false);
        }
        case FKind::And:
        case FKind::Or: {
            auto l = build(f->left);
            auto r = build(f->right);
            return Node::binary(f->kind == FKind::And ? NKind::And : NKind::Or, l, r);
        }
        case FKind::Not: throw Error("syntax tree needs a normalized query (negation found above an atom)");
        case FKind::Exists:
        case FKind::Forall:
            return Node::quant(f->kind == FKind::Exists ? NKind::Exists : NKind::Forall, f->var, build(f->left));
        }
        return nullptr;
    };
    t.root = build(q.formula);
    return t;
}

NodePtr negate_tree(const NodePtr& t) {
    switch (t->kind) {
    case NKind::Leaf: return Node::leaf(negate_atom(t->atom), t->leaf_id, !t->flipped);
    case NKind::And: return Node::binary(NKind::Or, negate_tree(t->left), negate_tree(t->right));
    case NKind::Or: return Node::binary(NKind::And, negate_tree(t->left), negate_tree(t->right));
    case NKind::Exists: return Node::quant(NKind::Forall, t->var, negate_tree(t->left));
    case NKind::Forall: return Node::quant(NKind::Exists, t->var, negate_tree(t->left));
    }
    return t;
}

std::array<NodePtr, 3> expand_disjunction(const NodePtr& t) {
    if (t->kind != NKind::Or) throw Error("expand_disjunction needs a tree rooted at a disjunction");
    const NodePtr& a = t->left;
    const NodePtr& b = t->right;
    return {Node::binary(NKind::And, a, b), Node::binary(NKind::And, a, negate_tree(b)),
            Node::binary(NKind::And, negate_tree(a), b)};
}

std::vector<NodePtr> disjtree_to_conjtrees(const NodePtr& t) {
    switch (t->kind) {
    case NKind::Leaf: return {t};
    case NKind::And: {
        auto ls = disjtree_to_conjtrees(t->left);
        auto rs = disjtree_to_conjtrees(t->right);
        std::vector<NodePtr> out;
        out.reserve(ls.size() * rs.size());
        for (const auto& l : ls)
            for (const auto& r : rs) out.push_back(Node::binary(NKind::And, l, r));
        return out;
    }
    case NKind::Or: {
        std::vector<NodePtr> out;
        for (const auto& c : expand_disjunction(t)) {
            auto part = disjtree_to_conjtrees(c);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    case NKind::Exists:
    case NKind::Forall: {
        std::vector<NodePtr> out;
        for (const auto& c : disjtree_to_conjtrees(t->left)) out.push_back(Node::quant(t->kind, t->var, c));
        return out;
    }
    }
    return {};
}

std::vector<Conjunction> tree_to_conjunctions(const NodePtr& t) {
    if (t->has_quantifier) throw Error("tree_to_conjunctions needs a quantifier-free tree");
    std::vector<Conjunction> out;
    for (const auto& c : disjtree_to_conjtrees(t)) {
        Conjunction conj;
        std::function<void(const NodePtr&)> flat = [&](const NodePtr& n) {
            if (n->kind == NKind::Leaf) {
                conj.push_back({n->atom, n->leaf_id, n->flipped});
                return;
            }
            flat(n->left);
            flat(n->right);
        };
        flat(c);
        out.push_back(std::move(conj));
    }
    return out;
}

QueryMetrics complexity_metrics(const NodePtr& t) {
    QueryMetrics m;
    std::function<int(const NodePtr&, bool)> walk = [&](const NodePtr& n, bool under_forall) -> int {
        ++m.node_count;
        switch (n->kind) {
        case NKind::Leaf: return 1;
        case NKind::And:
        case NKind::Or: {
            if (n->kind == NKind::Or && under_forall) ++m.universal_plus_or_below;
            int h = std::max(walk(n->left, under_forall), walk(n->right, under_forall));
            return h + 1;
        }
        case NKind::Exists:
        case NKind::Forall: {
            ++m.quantifier_count;
            bool u = under_forall;
            if (n->kind == NKind::Forall) {
                ++m.universal_plus_or_below;
                u = true;
            }
            return walk(n->left, u) + 1;
        }
        }
        return 0;
    };
    m.height = walk(t, false);
    return m;
}

std::vector<int> leaf_ids(const NodePtr& t) {
    std::vector<int> out;
    std::function<void(const NodePtr&)> walk = [&](const NodePtr& n) {
        if (n->kind == NKind::Leaf) {
            out.push_back(n->leaf_id);
            return;
        }
        walk(n->left);
        if (n->right) walk(n->right);
    };
    walk(t);
    return out;
}

std::string dump_tree(const Query& q, const NodePtr& t) {
    std::string out;
    std::function<void(const NodePtr&, int)> walk = [&](const NodePtr& n, int depth) {
        out += std::string(2 * depth, ' ');
        switch (n->kind) {
        case NKind::Leaf: out += "[" + std::to_string(n->leaf_id) + "] " + atom_text(q, n->atom) + "\n"; return;
        case NKind::And: out += "AND\n"; break;
        case NKind::Or: out += "OR\n"; break;
        case NKind::Exists: out += "EXISTS " + q.var_name(n->var) + "\n"; break;
        case NKind::Forall: out += "FORALL " + q.var_name(n->var) + "\n"; break;
        }
        walk(n->left, depth + 1);
        if (n->right) walk(n->right, depth + 1);
    };
    walk(t, 0);
    return out;
}

std::string metrics_text(const QueryMetrics& m) {
    return "nodes=" + std::to_string(m.node_count) + " height=" + std::to_string(m.height) +
           " forall_or=" + std::to_string(m.universal_plus_or_below) + " quantifiers=" + std::to_string(m.quantifier_count);
}

}  // namespace drc
