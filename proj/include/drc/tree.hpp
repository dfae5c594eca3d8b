#pragma once

#include "drc/query.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace drc {

enum class NKind { Leaf, And, Or, Exists, Forall };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable syntax-tree node. Leaves keep the id of the original query leaf;
// `flipped` records that the atom is the negation of that original leaf.
struct Node {
    NKind kind = NKind::Leaf;
    Atom atom;
    int leaf_id = -1;
    bool flipped = false;
    int var = -1;
    NodePtr left, right;  // quantifiers use `left`

    std::vector<int> free;  // free variables, first-occurrence order
    bool has_quantifier = false;

    static NodePtr leaf(Atom a, int id, bool flipped);
    static NodePtr binary(NKind k, NodePtr l, NodePtr r);
    static NodePtr quant(NKind k, int var, NodePtr child);
};

struct SyntaxTree {
    NodePtr root;
    std::vector<Atom> leaves;  // original atoms by leaf id
    int leaf_count() const { return static_cast<int>(leaves.size()); }
};

struct Literal {
    Atom atom;
    int leaf_id = -1;
    bool flipped = false;
};
using Conjunction = std::vector<Literal>;

struct QueryMetrics {
    int node_count = 0;
    int height = 0;  // nodes on the longest root-to-leaf path
    int universal_plus_or_below = 0;
    int quantifier_count = 0;
    bool operator==(const QueryMetrics&) const = default;
};

SyntaxTree build_syntax_tree(const Query& q);
NodePtr negate_tree(const NodePtr& t);
std::array<NodePtr, 3> expand_disjunction(const NodePtr& t);
std::vector<NodePtr> disjtree_to_conjtrees(const NodePtr& t);
std::vector<Conjunction> tree_to_conjunctions(const NodePtr& t);
QueryMetrics complexity_metrics(const NodePtr& t);

std::vector<int> leaf_ids(const NodePtr& t);  // DFS order
std::string dump_tree(const Query& q, const NodePtr& t);
std::string metrics_text(const QueryMetrics& m);

}  // namespace drc
