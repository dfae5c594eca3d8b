#include "support/fixtures.hpp"

#include <benchmark/benchmark.h>

namespace t = drc::testing;

namespace {

const drc::CInstance& instance(int which) {
    static const std::vector<drc::CInstance> all = {t::instance_i0(), t::instance_i1(), t::instance_i2()};
    return all[which];
}

void BM_CoverageSerial(benchmark::State& state) {
    drc::Query q = t::diff_ba();
    drc::SyntaxTree tree = drc::build_syntax_tree(q);
    const drc::CInstance& i = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(drc::cov_cinstance_serial(q, tree, i));
}

void BM_CoverageParallel(benchmark::State& state) {
    drc::Query q = t::diff_ba();
    drc::SyntaxTree tree = drc::build_syntax_tree(q);
    const drc::CInstance& i = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(drc::cov_cinstance(q, tree, i));
}

void BM_GenericWorlds(benchmark::State& state) {
    drc::Query q = t::diff_ba();
    const drc::CInstance& i = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(drc::generic_worlds(&q, i));
}

}  // namespace

BENCHMARK(BM_CoverageSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverageParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenericWorlds)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
