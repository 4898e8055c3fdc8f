#include "oracles.hpp"

#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/error.hpp>
#include <ddc/params.hpp>

#include <doctest.h>

using namespace ddc;
using oracle::clique;
using oracle::cycle;
using oracle::path;

TEST_CASE("graph enumeration matches the labelled-graph oracle")
{
    const std::vector<std::size_t> known{ 1, 1, 2, 4, 11, 34, 156, 1044 };
    for (int n = 0 ; n <= 7 ; ++n)
        CHECK(all_graphs(n).size() == known[static_cast<std::size_t>(n)]);

    for (int n = 1 ; n <= 5 ; ++n) {
        // each labelled graph is isomorphic to exactly one representative
        std::vector<int> hits(all_graphs(n).size(), 0);
        for (auto & g : oracle::labelled_graphs(n)) {
            int found = 0;
            for (std::size_t i = 0 ; i < all_graphs(n).size() ; ++i)
                if (oracle::isomorphic(g, all_graphs(n)[i])) {
                    ++found;
                    ++hits[i];
                }
            REQUIRE(found == 1);
        }
        CHECK(std::none_of(hits.begin(), hits.end(), [] (int h) { return h == 0; }));
    }
}

TEST_CASE("canonical keys are labelling invariant")
{
    std::mt19937 rng{ 23 };
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        auto g = oracle::random_graph(rng, n, 0.45);
        auto h = relabel(g, oracle::random_permutation(rng, n));
        CHECK(canonical_key(g) == canonical_key(h));
        CHECK(canonical_graph(g) == canonical_graph(h));
    }
    CHECK(canonical_key(cycle(6)) != canonical_key(disjoint_union(cycle(3), cycle(3))));
}

TEST_CASE("readable names")
{
    CHECK(graph_name(clique(1)) == "K1");
    CHECK(graph_name(clique(4)) == "K4");
    CHECK(graph_name(cycle(5)) == "C5");
    CHECK(graph_name(path(4)) == "P4");
    CHECK(graph_name(oracle::star(3)) == "K1,3");
    CHECK(graph_name(disjoint_union(clique(3), cycle(5))) == "K3+C5");
    CHECK(graph_name(Structure{}) == "empty");
}

TEST_CASE("generator families of the built-in classes")
{
    auto cyc = generators(class_by_name("cycles"), 6);
    CHECK(cyc.size() == 4);
    CHECK(cyc.names() == std::vector<std::string>{ "C3", "C4", "C5", "C6" });

    auto trees = generators(class_by_name("trees"), 4);
    CHECK(trees.size() == 5);
    auto names = trees.names();
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{ "K1", "K1,3", "K2", "P3", "P4" });
    CHECK(generators(class_by_name("trees"), 7).size() == 1 + 1 + 1 + 2 + 3 + 6 + 11);

    for (int max = 1 ; max <= 5 ; ++max) {
        auto td1 = generators(class_by_name("td<=1"), max);
        REQUIRE(td1.size() == 1);
        CHECK(td1.generator(0) == clique(1));
    }
    CHECK_THROWS_AS(generators(class_by_name("trees"), 8), OutOfRange);

    // ordered by size, pairwise non-isomorphic, connected
    auto bip = generators(class_by_name("bipartite"), 5);
    for (std::size_t i = 0 ; i < bip.size() ; ++i) {
        CHECK(is_connected(bip.generator(i)));
        if (i)
            CHECK(bip.generator(i - 1).size() <= bip.generator(i).size());
        for (std::size_t j = 0 ; j < i ; ++j)
            CHECK_FALSE(oracle::isomorphic(bip.generator(i), bip.generator(j)));
    }
}

TEST_CASE("unknown class names list the valid ones")
{
    try {
        class_by_name("outerplanar");
        FAIL("expected InvalidArgument");
    }
    catch (const InvalidArgument & e) {
        std::string what = e.what();
        CHECK(what.find("cycles") != std::string::npos);
        CHECK(what.find("maxdeg<=K") != std::string::npos);
    }
    CHECK_THROWS_AS(class_by_name("td<=x"), InvalidArgument);
    CHECK_THROWS_AS(class_by_name("tw<"), InvalidArgument);
}

TEST_CASE("membership")
{
    CHECK(membership(class_by_name("cycles"), disjoint_union(cycle(3), cycle(5))));
    CHECK_FALSE(membership(class_by_name("cycles"), path(3)));
    CHECK_FALSE(membership(class_by_name("planar"), disjoint_union(clique(5), clique(1))));
    CHECK(membership(class_by_name("paths"), disjoint_union(path(3), path(1))));
    CHECK(membership(class_by_name("td<=2"), oracle::star(5)));
    CHECK_FALSE(membership(class_by_name("td<=2"), path(4)));
    CHECK(membership(class_by_name("tw<2"), path(7)));
    CHECK_FALSE(membership(class_by_name("tw<2"), cycle(4)));
    CHECK(membership(class_by_name("pw<2"), path(6)));
    CHECK(membership(class_by_name("maxdeg<=2"), cycle(7)));
    CHECK(membership(class_by_name("cores"), disjoint_union(clique(3), clique(2))));
    CHECK(membership(class_by_name("bipartite"), Structure{}));
}

TEST_CASE("property: membership is component-based and predicates are labelling invariant")
{
    auto small = all_graphs_up_to(4);
    std::mt19937 rng{ 29 };
    for (auto & name : { "cycles", "trees", "paths", "bipartite", "planar", "cores", "td<=2", "tw<2", "pw<2", "maxdeg<=2" }) {
        auto spec = class_by_name(name);
        for (std::size_t i = 0 ; i < small.size() ; i += 2)
            for (std::size_t j = 0 ; j < small.size() ; j += 3) {
                auto & a = small[i];
                auto & b = small[j];
                CHECK(membership(spec, disjoint_union(a, b)) == (membership(spec, a) && membership(spec, b)));
            }
        for (auto & g : small)
            if (is_connected(g))
                CHECK(spec.connected_predicate(g) == spec.connected_predicate(relabel(g, oracle::random_permutation(rng, g.size()))));
    }
}

TEST_CASE("property: monotone classes survive deletions")
{
    std::mt19937 rng{ 31 };
    for (auto & name : { "trees", "paths", "bipartite", "planar", "td<=3", "tw<3", "pw<2", "maxdeg<=3" }) {
        auto spec = class_by_name(name);
        REQUIRE(spec.monotone);
        for (int trial = 0 ; trial < 40 ; ++trial) {
            auto g = oracle::random_graph(rng, 6, 0.4);
            if (! membership(spec, g))
                continue;
            auto edges = oracle::edges_of(g);
            if (! edges.empty()) {
                edges.erase(edges.begin() + static_cast<long>(rng() % edges.size()));
                CHECK(membership(spec, Structure::graph(g.size(), edges)));
            }
            std::vector<int> keep;
            int drop = static_cast<int>(rng() % 6u);
            for (int v = 0 ; v < 6 ; ++v)
                if (v != drop)
                    keep.push_back(v);
            CHECK(membership(spec, induced(g, keep)));
        }
    }
    CHECK_FALSE(class_by_name("cycles").monotone);
    CHECK_FALSE(class_by_name("cores").monotone);
}

TEST_CASE("snapshot closure checks")
{
    std::vector<Structure> bipartite;
    for (auto & g : all_graphs_up_to(5))
        if (membership(class_by_name("bipartite"), g))
            bipartite.push_back(g);
    auto ok = component_based_snapshot_check(bipartite);
    CHECK(ok.passed());

    auto remark = component_based_snapshot_check({ disjoint_union(clique(3), cycle(5)) });
    CHECK_FALSE(remark.summand_closed);
    REQUIRE_FALSE(remark.violations.empty());
    CHECK(remark.violations.front().find("K3") != std::string::npos);

    CHECK(component_based_snapshot_check({}).passed());

    auto missing = component_based_snapshot_check({ clique(1), clique(2) });
    CHECK_FALSE(missing.coproduct_closed);
}

TEST_CASE("subdivided cliques")
{
    CHECK(subdivided_clique(3, 0) == clique(3));
    auto k41 = subdivided_clique(4, 1);
    CHECK(k41.size() == 10);
    CHECK(k41.edge_count() == 12);
    for (int n = 1 ; n <= 6 ; ++n)
        CHECK(is_bipartite(subdivided_clique(n, 1)));
    for (int n = 3 ; n <= 4 ; ++n)
        for (int p = 0 ; p <= 2 ; ++p)
            CHECK(oracle::girth(subdivided_clique(n, p)) >= 3 * (1 << p));
    CHECK_THROWS_AS(subdivided_clique(0, 1), InvalidArgument);
}

TEST_CASE("cores")
{
    CHECK(is_core(clique(3)));
    CHECK_FALSE(is_core(path(3)));
    CHECK(is_core(clique(1)));
    CHECK(is_core(cycle(5)));
    CHECK_FALSE(is_core(cycle(6)));
}

TEST_CASE("planarity agrees with the Boyer-Myrvold oracle")
{
    for (int n = 0 ; n <= 7 ; ++n)
        for (auto & g : all_graphs(n))
            REQUIRE(is_planar(g) == oracle::planar(g));
    for (int n = 1 ; n <= 6 ; ++n)
        CHECK(is_planar(subdivided_clique(n, 1)) == oracle::planar(subdivided_clique(n, 1)));
    std::mt19937 rng{ 37 };
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto g = oracle::random_graph(rng, 8 + static_cast<int>(rng() % 3), 0.35);
        CHECK(is_planar(g) == oracle::planar(g));
    }
}
