#include "support/fixtures.hpp"
#include "support/random.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace drc;
namespace fx = drc::testing;

namespace {

int rel(const SchemaPtr& s, const char* name) { return *s->find_relation(name); }

}  // namespace

TEST(CInstance, ForeignKeysAnchorReferencedRows) {
    SchemaPtr s = fx::beers();
    CInstance i = new_instance(s);
    Null d = i.fresh_null(*s->find_domain("drinker"));
    Null b = i.fresh_null(*s->find_domain("beer"));
    i.insert_tuple(rel(s, "Likes"), {Value(d), Value(b)});
    EXPECT_EQ(i.tuple_count(), 3);
    EXPECT_EQ(i.search_size(), 1);
    EXPECT_FALSE(i.tables[rel(s, "Drinker")][0].core);
    i.insert_tuple(rel(s, "Likes"), {Value(d), Value(b)});
    EXPECT_EQ(i.tuple_count(), 3);
}

TEST(CInstance, NegatedFactsAnchorTheirArguments) {
    CInstance i = fx::build_instance(fx::beers(), "not Likes(d, b)");
    EXPECT_EQ(i.tuple_count(), 2);
    EXPECT_EQ(i.conditions.size(), 1u);
    EXPECT_EQ(i.search_size(), 1);
}

TEST(CInstance, ComparisonsAreNormalized) {
    Value a(Null{0, 1}), b(Null{0, 2});
    Condition gt = Condition::compare(a, CmpOp::Gt, b);
    EXPECT_EQ(gt.op, CmpOp::Lt);
    EXPECT_EQ(gt.lhs, b);
    EXPECT_EQ(Condition::compare(b, CmpOp::Eq, a), Condition::compare(a, CmpOp::Eq, b));
    EXPECT_FALSE(Condition::compare(a, CmpOp::Lt, b, true).negated);
}

TEST(CInstance, RunningInstanceSizes) {
    EXPECT_EQ(fx::instance_i0().size(), 12);
    EXPECT_EQ(fx::instance_i1().size(), 10);
    EXPECT_EQ(fx::instance_third().size(), 12);
    EXPECT_EQ(fx::instance_i2().size(), 16);
}

TEST(CInstance, AddToInsRequiresMappedVariables) {
    Query q = fx::diff_ba();
    SyntaxTree t = build_syntax_tree(q);
    Conjunction conj{{t.leaves[0], 0, false}};
    EXPECT_THROW(add_to_ins(new_instance(q.schema), conj, Homomorphism(q.vars.size())), Error);
}

TEST(CInstance, MergeKeepsBothSides) {
    CInstance a = fx::build_instance(fx::beers(), "Likes(d, b)");
    CInstance b = fx::build_instance(fx::beers(), "Likes(d, b)\nd LIKE 'Eve%'");
    CInstance m = merge_instances(a, b);
    EXPECT_EQ(m.tuple_count(), 3);
    EXPECT_EQ(m.conditions.size(), 1u);
}

TEST(Canonical, InvariantUnderRenaming) {
    std::mt19937 rng(7);
    for (const CInstance& i : {fx::instance_i0(), fx::instance_i1(), fx::instance_third(),
                               fx::instance_i2()}) {
        std::string key = canonical_key(i);
        for (int k = 0; k < 20; ++k) EXPECT_EQ(canonical_key(fx::random_renaming(i, rng)), key);
    }
}

TEST(Canonical, DistinguishesNonIsomorphicInstances) {
    EXPECT_NE(canonical_key(fx::instance_i1()), canonical_key(fx::instance_third()));
    CInstance a = fx::build_instance(fx::beers(), "Serves(x, b, p)\nServes(y, b, q)\np < q");
    CInstance b = fx::build_instance(fx::beers(), "Serves(x, b, p)\nServes(y, c, q)\np < q");
    EXPECT_NE(canonical_key(a), canonical_key(b));
}

TEST(Canonical, PinnedNullsAreNotInterchangeable) {
    CInstance i = fx::build_instance(fx::beers(), "Likes(d, b)\nLikes(e, b)");
    Null d1{*i.schema->find_domain("drinker"), 1}, d2{*i.schema->find_domain("drinker"), 2};
    EXPECT_NE(canonical_key(i, {d1}), canonical_key(i, {d2}));
    EXPECT_EQ(canonical_key(i), canonical_key(i));
}

TEST(Worlds, EnumeratesSatisfyingMappings) {
    SchemaPtr s = fx::beers();
    CInstance i = fx::build_instance(s, "Serves(x, b, p)\nServes(y, b, q)\np < q");
    Pool pool(s->domains.size());
    for (std::size_t d = 0; d < pool.size(); ++d)
        pool[d] = s->domains[d].kind == Kind::String
                      ? std::vector<Constant>{Constant::string("u"), Constant::string("v")}
                      : std::vector<Constant>{Constant::number(1), Constant::number(2)};
    long count = 0;
    for_each_world(i, pool, [&](const Mapping& mu, const GroundInstance&) {
        EXPECT_LT(drc::apply(mu, i.tables[rel(s, "Serves")][0].cells[2]), drc::apply(mu, i.tables[rel(s, "Serves")][1].cells[2]));
        ++count;
        return true;
    });
    EXPECT_GT(count, 0);
    EXPECT_FALSE(enumerate_worlds(i, pool).empty());
}

TEST(Worlds, NegatedFactsExcludeTuples) {
    SchemaPtr s = fx::beers();
    CInstance i = fx::build_instance(s, "Likes(d, b)\nnot Likes(d, b)");
    Pool pool(s->domains.size(), std::vector<Constant>{Constant::string("u")});
    EXPECT_TRUE(enumerate_worlds(i, pool).empty());
}

TEST(Ground, ActiveDomainIsTyped) {
    GroundInstance k = fx::k0();
    auto dom = k.active_domain();
    const Schema& s = *k.schema;
    auto price = *s.find_domain("price");
    EXPECT_EQ(dom[price].size(), 3u);
    EXPECT_EQ(dom[price][0], Constant::number(Rational(9, 4)));
}
