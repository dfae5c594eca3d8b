#include "support/fixtures.hpp"
#include "support/random.hpp"

#include <gtest/gtest.h>

using namespace drc;
namespace fx = drc::testing;

namespace {

Query tiny_query(const std::string& text) {
    return normalize_query(parse_query(text, fx::tiny_schema()));
}

ChaseResult run(const Query& q, Variant v, int limit) {
    ChaseConfig cfg;
    cfg.variant = v;
    cfg.limit = limit;
    return characterize(q, cfg);
}

}  // namespace

TEST(Variants, NamesRoundTrip) {
    for (Variant v : {Variant::DisjNaive, Variant::DisjEo, Variant::DisjAdd, Variant::ConjNaive, Variant::ConjEo,
                      Variant::ConjAdd})
        EXPECT_EQ(parse_variant(variant_name(v)), v);
    EXPECT_FALSE(parse_variant("fast"));
    EXPECT_TRUE(is_conjunctive(Variant::ConjEo));
    EXPECT_TRUE(is_eo(Variant::DisjEo));
    EXPECT_TRUE(is_add(Variant::ConjAdd));
    EXPECT_FALSE(is_add(Variant::DisjNaive));
}

TEST(Chase, DefaultLimitIsTwiceTheLeaves) {
    EXPECT_EQ(default_limit(build_syntax_tree(fx::diff_ba())), 20);
}

TEST(Chase, SingleAtom) {
    Query q = tiny_query("{(k) | U(k)}");
    ChaseResult r = run(q, Variant::DisjNaive, 4);
    ASSERT_EQ(r.solution.size(), 1u);
    EXPECT_EQ(r.solution[0].instance.size(), 1);
    EXPECT_EQ(r.solution[0].coverage, (Coverage{0}));
}

TEST(Chase, ExistentialReusesOrCreates) {
    Query q = tiny_query("{(k) | U(k) and exists v (S(k, v) and v > 1)}");
    ChaseResult r = run(q, Variant::DisjNaive, 6);
    ASSERT_EQ(r.solution.size(), 1u);
    EXPECT_EQ(r.solution[0].instance.size(), 3);
}

TEST(Chase, DisjunctionGivesThreeCoverages) {
    Query q = tiny_query("{(k) | U(k) and exists v (S(k, v) and (v > 1 or v < 3))}");
    ChaseResult r = run(q, Variant::DisjNaive, 6);
    std::set<Coverage> covs;
    for (const auto& e : r.solution) covs.insert(e.coverage);
    EXPECT_EQ(covs, (std::set<Coverage>{{0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}}));
}

TEST(Chase, UniversalOverEmptyTableHolds) {
    Query q = tiny_query("{(k) | U(k) and forall v (not S(k, v) or v > 0)}");
    ChaseResult r = run(q, Variant::DisjNaive, 6);
    ASSERT_FALSE(r.solution.empty());
    bool has_plain = false;
    for (const auto& e : r.solution) has_plain |= e.instance.size() == 1;
    EXPECT_TRUE(has_plain);
}

TEST(Chase, LimitZeroIsEmpty) {
    ChaseResult r = run(fx::diff_ba(), Variant::DisjAdd, 0);
    EXPECT_TRUE(r.solution.empty());
    EXPECT_TRUE(r.raw.empty());
}

TEST(Chase, EveryEmissionSatisfiesTheQuery) {
    Query q = tiny_query("{(k) | U(k) and forall v (not S(k, v) or exists c (T(k, c) and c > 1))}");
    SyntaxTree t = build_syntax_tree(q);
    ChaseResult r = run(q, Variant::DisjAdd, 6);
    ASSERT_FALSE(r.raw.empty());
    for (const auto& i : r.raw) {
        EXPECT_TRUE(is_consistent(i));
        EXPECT_TRUE(tree_sat(q, t, i)) << render_text(i);
        EXPECT_LE(i.search_size(), 6);
    }
}

TEST(Chase, ExploredBoundedByDistinctKeys) {
    Query q = tiny_query("{(k) | U(k) and (exists v (S(k, v) and v < 2) or exists c (T(k, c)))}");
    ChaseResult r = run(q, Variant::DisjNaive, 6);
    EXPECT_LE(r.stats.explored, r.stats.distinct_keys);
}

TEST(Chase, Deterministic) {
    Query q = tiny_query("{(k) | U(k) and forall v (not S(k, v) or v > 0 or k LIKE 'a%')}");
    auto a = run(q, Variant::DisjAdd, 6), b = run(q, Variant::DisjAdd, 6);
    ASSERT_EQ(a.raw.size(), b.raw.size());
    for (std::size_t k = 0; k < a.raw.size(); ++k) EXPECT_EQ(exact_key(a.raw[k]), exact_key(b.raw[k]));
}

TEST(Chase, TimeoutStopsEarly) {
    ChaseConfig cfg;
    cfg.limit = 20;
    cfg.timeout = 1e-6;
    ChaseResult r = characterize(fx::diff_q2(), cfg);
    EXPECT_TRUE(r.stats.timed_out);
}

TEST(Minimal, KeepsSmallestPerCoverage) {
    Query q = fx::diff_ba();
    SyntaxTree t = build_syntax_tree(q);
    CInstance big = fx::instance_i2();
    CInstance third = fx::instance_third();
    auto out = minimal_filter(q, t, {big, third, fx::instance_i0()});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].instance.size(), 12);
    EXPECT_EQ(out[0].coverage.size(), 10u);
    EXPECT_EQ(out[1].coverage, (Coverage{0, 1, 2, 3, 4, 7, 8, 9}));
}

TEST(Seeding, UncoveredLeavesAreSeeded) {
    Query q = tiny_query("{(k) | U(k) and (k LIKE 'a%' or k LIKE 'b%')}");
    SyntaxTree t = build_syntax_tree(q);
    ChaseConfig cfg;
    cfg.limit = 6;
    CInstance partial = fx::build_instance(fx::tiny_schema(), "U(k)\nk LIKE 'a%'");
    auto more = seed_uncovered(q, t, {partial}, cfg);
    ASSERT_FALSE(more.empty());
    bool covers_b = false;
    for (const auto& i : more) covers_b |= cov_cinstance(q, t, i).count(2) > 0;
    EXPECT_TRUE(covers_b);
}

TEST(CqNeg, Recognizer) {
    EXPECT_TRUE(is_cq_neg(fx::fixture_query("cqneg.drc", fx::beers())));
    EXPECT_FALSE(is_cq_neg(fx::fixture_query("qA.drc", fx::beers())));
}

TEST(CqNeg, UniversalInstance) {
    Query q = fx::fixture_query("cqneg.drc", fx::beers());
    CInstance i = cq_neg_universal(q);
    CInstance expected = fx::build_instance(fx::beers(), "Beer(b, x)\nDrinker(d, a)\nnot Likes(d, b)");
    EXPECT_EQ(canonical_key(i), canonical_key(expected));
    EXPECT_THROW(cq_neg_universal(fx::fixture_query("qA.drc", fx::beers())), Error);
}

TEST(CqNeg, MatchesChase) {
    Query q = normalize_query(fx::fixture_query("cqneg.drc", fx::beers()));
    SyntaxTree t = build_syntax_tree(q);
    ChaseResult r = run(q, Variant::DisjAdd, default_limit(t));
    ASSERT_EQ(r.solution.size(), 1u);
    EXPECT_EQ(r.solution[0].coverage, cov_cinstance(q, t, cq_neg_universal(q)));
}
