#include <benchmark/benchmark.h>

#include "cmlat/hodge.hpp"
#include "cmlat/report.hpp"
#include "cmlat/scenario.hpp"

namespace {

using namespace cmlat;

void BM_SmithNormalForm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 7;
    ZMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            m.at(i, j) = static_cast<long>((seed >> 33) % 19) - 9;
        }
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m).rank);
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(12);

void BM_EnumerateClasses(benchmark::State& state) {
    FiniteGaloisGroup g = build_group("C2xC4");
    SubgroupHandle d = SubgroupHandle::generated_by(g, {*g.index_of("it2")});
    CosetSpace x(g, d);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_simple_classes(x).size());
}
BENCHMARK(BM_EnumerateClasses);

void BM_SplitPairPipeline(benchmark::State& state) {
    Scenario sc = make_fixture("g6-split");
    for (auto _ : state) {
        Workspace ws(sc);
        ExoticPairData data;
        benchmark::DoNotOptimize(check_exotic_pair(ws, &data).status);
    }
}
BENCHMARK(BM_SplitPairPipeline);

void BM_EigenspaceScan(benchmark::State& state) {
    Scenario sc = make_fixture("g6-split");
    Workspace ws(sc);
    HodgeModel model(ws.spec(), {1, 1});
    ZVec chi(8);
    chi[0] = 1; chi[2] = 1; chi[4] = 1; chi[6] = -1; chi[7] = -2;
    ZVec target = model.lefschetz().canonical(chi);
    for (auto _ : state)
        for (int r = 0; r <= 4; ++r)
            benchmark::DoNotOptimize(eigenspace_dimension(model, target, r));
}
BENCHMARK(BM_EigenspaceScan);

void BM_FixtureReport(benchmark::State& state) {
    Scenario sc = make_fixture("g6-ord");
    for (auto _ : state) benchmark::DoNotOptimize(build_check_report(sc).render().size());
}
BENCHMARK(BM_FixtureReport);

}  // namespace

BENCHMARK_MAIN();
