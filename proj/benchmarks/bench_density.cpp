#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/density.hpp>
#include <ddc/game_comonad.hpp>

#include <benchmark/benchmark.h>

using namespace ddc;

static void BM_ApplyCyclesToK4(benchmark::State & state)
{
    auto fam = generators(class_by_name("cycles"), static_cast<int>(state.range(0)));
    auto k4 = Structure::graph(4, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 }, { 1, 3 }, { 2, 3 } });
    std::size_t size = 0;
    for (auto _ : state) {
        auto d = apply(fam, k4);
        size = d.carrier().size();
        benchmark::DoNotOptimize(size);
    }
    state.counters["carrier"] = static_cast<double>(size);
}
BENCHMARK(BM_ApplyCyclesToK4)->DenseRange(3, 6);

static void BM_DensityLaws(benchmark::State & state)
{
    DensityComonad dc{ generators(class_by_name("trees"), 3) };
    auto corpus = all_graphs_up_to(3);
    LawOptions opts;
    opts.jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_density_laws(dc, corpus, opts).all_passed());
}
BENCHMARK(BM_DensityLaws)->Arg(1)->Arg(4)->UseRealTime();

static void BM_CoalgebraSearchVsDecomposition(benchmark::State & state)
{
    DensityComonad dc{ generators(class_by_name("trees"), 4) };
    auto corpus = all_graphs_up_to(5);
    bool search = state.range(0) == 1;
    for (auto _ : state)
        for (auto & g : corpus)
            benchmark::DoNotOptimize(search ? coalgebra_by_search(dc, g) : coalgebra_by_decomposition(dc, g));
    state.SetLabel(search ? "search" : "decomposition");
}
BENCHMARK(BM_CoalgebraSearchVsDecomposition)->Arg(0)->Arg(1);

static void BM_EFForestCover(benchmark::State & state)
{
    auto corpus = all_graphs(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (auto & g : corpus)
            benchmark::DoNotOptimize(ef_admits_coalgebra(3, g));
}
BENCHMARK(BM_EFForestCover)->Arg(5)->Arg(6);
