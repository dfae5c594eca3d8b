#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace drc;
namespace fx = drc::testing;

namespace {

struct CliRun {
    int status;
    std::string out;
};

CliRun drcchase(const std::string& args) {
    std::string cmd = std::string(DRCCHASE_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Render, TextTables) {
    std::string text = render_text(fx::instance_i1());
    EXPECT_NE(text.find("Serves\n  bar"), std::string::npos);
    EXPECT_NE(text.find("Global condition\n  "), std::string::npos);
    EXPECT_NE(text.find("¬(drinker#1 LIKE 'Eve %')"), std::string::npos);
    EXPECT_NE(text.find("∗"), std::string::npos);
    EXPECT_EQ(text.find("Frequents"), std::string::npos);
}

TEST(Render, EmptyInstance) {
    std::string text = render_text(new_instance(fx::beers()));
    EXPECT_NE(text.find("(empty)"), std::string::npos);
    EXPECT_NE(text.find("Global condition\n  true"), std::string::npos);
}

TEST(Render, DontCareNulls) {
    CInstance i = fx::instance_i1();
    int drinker = *i.schema->find_domain("drinker"), addr = *i.schema->find_domain("addr");
    EXPECT_FALSE(is_dont_care(i, Null{drinker, 1}));
    EXPECT_TRUE(is_dont_care(i, Null{addr, 1}));
}

TEST(Render, UnknownFormatThrows) { EXPECT_THROW(render_instance(fx::instance_i0(), "xml"), Error); }

TEST(Documents, StructuredRoundTrip) {
    for (const CInstance& i : {fx::instance_i0(), fx::instance_third(), fx::instance_i2()}) {
        Coverage c{0, 3};
        CInstance back = load_structured_instance(i.schema, render_structured(i, c));
        EXPECT_EQ(canonical_key(back), canonical_key(i));
        EXPECT_EQ(back.tracked, c);
    }
}

TEST(Documents, GroundInstanceTyping) {
    EXPECT_THROW(load_ground_instance(fx::beers(), R"({"tables": {"Serves": [["a", "b", "cheap"]]}})"), Error);
    EXPECT_THROW(load_ground_instance(fx::beers(), R"({"tables": {"Pubs": []}})"), Error);
    EXPECT_THROW(load_ground_instance(fx::beers(), "[1,"), Error);
    GroundInstance k = fx::k0();
    EXPECT_EQ(k.tables[*k.schema->find_relation("Serves")].size(), 3u);
}

TEST(Cli, Metrics) {
    CliRun r = drcchase("metrics --query1 qB --query2 qA");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "nodes=27 height=8 forall_or=5 quantifiers=8\n");
}

TEST(Cli, Eval) {
    CliRun r = drcchase("eval --query qA --instance k0 --coverage");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("Tadim, American Pale Ale"), std::string::npos);
    EXPECT_NE(r.out.find("coverage {"), std::string::npos);
}

TEST(Cli, CharacterizeSmallQuery) {
    CliRun r = drcchase("characterize --query cqneg --limit 6 --stats");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("minimal c-solution: 1 instance(s)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("stats: explored="), std::string::npos);
}

TEST(Cli, StructuredOutput) {
    CliRun r = drcchase("characterize --query cqneg --limit 6 --format structured");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"instances\": ["), std::string::npos);
    EXPECT_NE(r.out.find("\"leaf_legend\""), std::string::npos);
}

TEST(Cli, Errors) {
    EXPECT_EQ(drcchase("characterize --query cqneg --variant fast").status, 1);
    EXPECT_EQ(drcchase("characterize --query cqneg --format xml").status, 1);
    EXPECT_EQ(drcchase("characterize").status, 1);
    EXPECT_EQ(drcchase("frobnicate").status, 1);
    EXPECT_EQ(drcchase("metrics --query /nonexistent.drc").status, 2);
}
