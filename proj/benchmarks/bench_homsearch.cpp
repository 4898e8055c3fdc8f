#include <ddc/canonical.hpp>
#include <ddc/homsearch.hpp>

#include <benchmark/benchmark.h>

using namespace ddc;

namespace
{
    auto cycle(int n) -> Structure
    {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0 ; i < n ; ++i)
            edges.emplace_back(i, (i + 1) % n);
        return Structure::graph(n, edges);
    }

    auto clique(int n) -> Structure
    {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                edges.emplace_back(u, v);
        return Structure::graph(n, edges);
    }
}

// hom(C_k, K_n) grows like (n-1)^k; counting walks every one of them
static void BM_CountCyclesIntoClique(benchmark::State & state)
{
    auto c = cycle(static_cast<int>(state.range(0)));
    auto k = clique(5);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_homs(c, k));
    state.SetLabel("C" + std::to_string(state.range(0)) + " -> K5");
}
BENCHMARK(BM_CountCyclesIntoClique)->DenseRange(4, 8, 2);

static void BM_ExistenceNoHom(benchmark::State & state)
{
    // K4 into C_n: no homomorphism, the search must exhaust
    auto k4 = clique(4);
    auto c = cycle(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(find_hom(k4, c));
}
BENCHMARK(BM_ExistenceNoHom)->Arg(8)->Arg(32)->Arg(128);

static void BM_IsomorphismAllPairs(benchmark::State & state)
{
    auto & graphs = all_graphs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        std::size_t iso = 0;
        for (std::size_t i = 0 ; i < graphs.size() ; i += 7)
            for (std::size_t j = 0 ; j < graphs.size() ; j += 7)
                iso += is_isomorphic(graphs[i], graphs[j]).has_value();
        benchmark::DoNotOptimize(iso);
    }
}
BENCHMARK(BM_IsomorphismAllPairs)->Arg(5)->Arg(6);
