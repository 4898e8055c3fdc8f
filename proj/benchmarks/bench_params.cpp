#include <ddc/canonical.hpp>
#include <ddc/equivalence.hpp>
#include <ddc/params.hpp>

#include <benchmark/benchmark.h>

using namespace ddc;

static void BM_TreeDepthAll(benchmark::State & state)
{
    auto & graphs = all_graphs(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (auto & g : graphs)
            benchmark::DoNotOptimize(tree_depth(g));
    state.counters["graphs"] = static_cast<double>(graphs.size());
}
BENCHMARK(BM_TreeDepthAll)->DenseRange(5, 7);

static void BM_TreeWidthAll(benchmark::State & state)
{
    auto & graphs = all_graphs(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (auto & g : graphs)
            benchmark::DoNotOptimize(tree_width(g));
}
BENCHMARK(BM_TreeWidthAll)->DenseRange(5, 7);

static void BM_CharPoly(benchmark::State & state)
{
    int n = static_cast<int>(state.range(0));
    std::vector<std::pair<int, int>> edges;
    for (int u = 0 ; u < n ; ++u)
        for (int v = u + 1 ; v < n ; ++v)
            if ((u * 7 + v * 3) % 5 < 2)
                edges.emplace_back(u, v);
    auto g = Structure::graph(n, edges);
    for (auto _ : state)
        benchmark::DoNotOptimize(char_poly(g));
}
BENCHMARK(BM_CharPoly)->RangeMultiplier(2)->Range(8, 32);

static void BM_ColorRefinement(benchmark::State & state)
{
    auto & graphs = all_graphs(6);
    for (auto _ : state)
        for (std::size_t i = 0 ; i + 1 < graphs.size() ; ++i)
            benchmark::DoNotOptimize(fractional_iso(graphs[i], graphs[i + 1]));
}
BENCHMARK(BM_ColorRefinement);
