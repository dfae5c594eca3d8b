#include "support/fixtures.hpp"

#include <gtest/gtest.h>

using namespace drc;
namespace fx = drc::testing;

namespace {

SyntaxTree tree_of(const std::string& text) {
    return build_syntax_tree(normalize_query(parse_query(text, fx::beers())));
}

}  // namespace

TEST(SyntaxTree, DifferenceHasTenLeaves) {
    Query q = fx::diff_ba();
    SyntaxTree t = build_syntax_tree(q);
    ASSERT_EQ(t.leaf_count(), 10);
    std::vector<int> ids = leaf_ids(t.root);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(ids[k], k);
    EXPECT_EQ(atom_text(q, t.leaves[0]).rfind("Likes", 0), 0u);
    EXPECT_NE(atom_text(q, t.leaves[4]).find(">"), std::string::npos);
}

TEST(SyntaxTree, FreeVariablesAtRootAreOutputs) {
    Query q = fx::diff_ba();
    SyntaxTree t = build_syntax_tree(q);
    std::vector<int> free = t.root->free, out = q.output;
    std::sort(free.begin(), free.end());
    std::sort(out.begin(), out.end());
    EXPECT_EQ(free, out);
    EXPECT_TRUE(t.root->has_quantifier);
}

TEST(Metrics, RunningDifference) {
    SyntaxTree t = build_syntax_tree(fx::diff_ba());
    EXPECT_EQ(complexity_metrics(t.root), (QueryMetrics{27, 8, 5, 8}));
}

TEST(Metrics, SingleLeaf) {
    SyntaxTree t = tree_of("{(d, b) | Likes(d, b)}");
    EXPECT_EQ(complexity_metrics(t.root), (QueryMetrics{1, 1, 0, 0}));
}

TEST(Metrics, OneExistential) {
    SyntaxTree t = tree_of("{(d) | exists b (Likes(d, b))}");
    EXPECT_EQ(complexity_metrics(t.root), (QueryMetrics{2, 2, 0, 1}));
}

TEST(Metrics, CountsDisjunctionsUnderUniversals) {
    SyntaxTree t = tree_of("{(d) | exists b (Likes(d, b)) and forall b (not Likes(d, b) or exists x, p (Serves(x, b, p)))}");
    QueryMetrics m = complexity_metrics(t.root);
    EXPECT_EQ(m.universal_plus_or_below, 2);
    EXPECT_EQ(m.quantifier_count, 4);
}

TEST(Negate, IsAnInvolution) {
    SyntaxTree t = build_syntax_tree(fx::diff_ba());
    NodePtr n = negate_tree(negate_tree(t.root));
    Query q = fx::diff_ba();
    EXPECT_EQ(dump_tree(q, n), dump_tree(q, t.root));
}

TEST(Negate, SwapsConnectivesAndFlipsLeaves) {
    SyntaxTree t = tree_of("{(d) | exists b (Likes(d, b) or d LIKE 'Eve%')}");
    NodePtr n = negate_tree(t.root);
    EXPECT_EQ(n->kind, NKind::Forall);
    EXPECT_EQ(n->left->kind, NKind::And);
    EXPECT_TRUE(n->left->left->flipped);
    EXPECT_TRUE(n->left->left->atom.negated);
    EXPECT_EQ(n->left->left->leaf_id, 0);
}

TEST(Expand, ThreeConjunctiveCases) {
    SyntaxTree t = tree_of("{(d, b) | Likes(d, b) or d LIKE 'Eve%'}");
    auto parts = expand_disjunction(t.root);
    for (const auto& p : parts) {
        EXPECT_EQ(p->kind, NKind::And);
        EXPECT_EQ(leaf_ids(p), (std::vector<int>{0, 1}));
    }
    EXPECT_FALSE(parts[0]->left->flipped || parts[0]->right->flipped);
    EXPECT_TRUE(parts[1]->right->flipped);
    EXPECT_TRUE(parts[2]->left->flipped);
    EXPECT_THROW(expand_disjunction(t.root->left), Error);
}

TEST(Expand, ConjunctiveTreesMultiply) {
    SyntaxTree t = tree_of("{(d, b) | (Likes(d, b) or d LIKE 'A%') and (d LIKE 'B%' or d LIKE 'C%')}");
    EXPECT_EQ(disjtree_to_conjtrees(t.root).size(), 9u);
    auto conj = tree_to_conjunctions(t.root);
    ASSERT_EQ(conj.size(), 9u);
    for (const auto& c : conj) EXPECT_EQ(c.size(), 4u);
}

TEST(Expand, ConjunctionsNeedQuantifierFreeTrees) {
    SyntaxTree t = tree_of("{(d) | exists b (Likes(d, b))}");
    EXPECT_THROW(tree_to_conjunctions(t.root), Error);
}

TEST(Expand, RunningDifferenceConjunctiveTrees) {
    SyntaxTree t = build_syntax_tree(fx::diff_ba());
    auto trees = disjtree_to_conjtrees(t.root);
    EXPECT_GT(trees.size(), 1u);
    for (const auto& c : trees) EXPECT_EQ(leaf_ids(c).size(), 10u);
}
