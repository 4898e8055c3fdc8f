#include "oracles.hpp"

#include <ddc/canonical.hpp>
#include <ddc/error.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/structure.hpp>

#include <doctest.h>

using namespace ddc;
using oracle::clique;
using oracle::cycle;

TEST_CASE("graph normalisation stores both orientations and rejects loops")
{
    auto g = Structure::graph(3, { { 1, 0 }, { 0, 1 }, { 2, 1 } });
    CHECK(g.edge_count() == 2);
    CHECK(g.tuple_count(0) == 4);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK_THROWS_AS(Structure::graph(2, { { 1, 1 } }), InvalidArgument);
    CHECK_THROWS_AS(Structure::graph(2, { { 0, 2 } }), InvalidArgument);
}

TEST_CASE("coproduct shifts parts and injects them disjointly")
{
    auto empty = coproduct({});
    CHECK(empty.sum.size() == 0);
    CHECK(empty.injections.empty());

    std::vector<Structure> parts{ cycle(3), cycle(5) };
    auto c = coproduct(parts);
    CHECK(c.sum.size() == 8);
    CHECK(c.sum.edge_count() == 8);
    CHECK(component_count(c.sum) == 2);
    std::vector<int> hit(8, 0);
    for (auto & inj : c.injections) {
        CHECK(inj.is_valid());
        CHECK(inj.is_injective());
        for (int y : inj.map())
            ++hit[static_cast<std::size_t>(y)];
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [] (int h) { return h == 1; }));

    auto twice = disjoint_union(clique(3), clique(3));
    CHECK(twice.size() == 6);
    CHECK(twice.edge_count() == 6);

    Signature ternary{ { { "R", 3 } } };
    CHECK_THROWS_AS(coproduct(std::vector<Structure>{ cycle(3), Structure::empty(ternary, 2) }), SignatureMismatch);
}

TEST_CASE("gaifman graph")
{
    Signature ternary{ { { "R", 3 } } };
    Structure s{ ternary, 3, { { 0, 1, 2 } } };
    CHECK(is_isomorphic(gaifman(s), clique(3)));
    CHECK(gaifman(cycle(5)) == cycle(5));
    auto loose = gaifman(Structure::empty(ternary, 4));
    CHECK(loose.size() == 4);
    CHECK(loose.edge_count() == 0);
}

TEST_CASE("components are ordered by smallest element and invert coproducts")
{
    auto parts = components(disjoint_union(cycle(3), cycle(5)));
    REQUIRE(parts.components.size() == 2);
    CHECK(parts.components[0] == cycle(3));
    CHECK(is_isomorphic(parts.components[1], cycle(5)));
    CHECK(components(cycle(6)).components.size() == 1);
    CHECK(components(Structure{}).components.empty());

    // interleaved labels: component of 0 first, local order preserved
    auto g = Structure::graph(5, { { 0, 3 }, { 1, 4 }, { 2, 4 } });
    auto d = components(g);
    REQUIRE(d.components.size() == 2);
    CHECK(d.inclusions[0].map() == std::vector<int>{ 0, 3 });
    CHECK(d.inclusions[1].map() == std::vector<int>{ 1, 2, 4 });
    CHECK(d.witness[4] == std::pair{ 1, 2 });
}

TEST_CASE("property: coproduct then components recovers the parts")
{
    std::mt19937 rng{ 7 };
    for (int trial = 0 ; trial < 60 ; ++trial) {
        std::vector<Structure> parts;
        int count = 1 + static_cast<int>(rng() % 3);
        while (static_cast<int>(parts.size()) < count) {
            auto g = oracle::random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.6);
            if (is_connected(g))
                parts.push_back(g);
        }
        auto sum = coproduct(parts).sum;
        auto back = components(sum);
        REQUIRE(back.components.size() == parts.size());
        for (std::size_t i = 0 ; i < parts.size() ; ++i)
            CHECK(is_isomorphic(back.components[i], parts[i]));
        for (auto & inc : back.inclusions)
            CHECK(inc.is_valid());
    }
}

TEST_CASE("isomorphism witnesses")
{
    std::vector<int> perm{ 3, 0, 5, 1, 4, 2 };
    auto shuffled = relabel(cycle(6), perm);
    auto w = is_isomorphic(cycle(6), shuffled);
    REQUIRE(w);
    CHECK(w->is_valid());
    CHECK(w->is_injective());
    CHECK_FALSE(is_isomorphic(cycle(6), disjoint_union(cycle(3), cycle(3))));
    CHECK_FALSE(is_isomorphic(oracle::star(4), disjoint_union(cycle(4), clique(1))));

    Signature ternary{ { { "R", 3 } } };
    CHECK_THROWS_AS(is_isomorphic(cycle(3), Structure::empty(ternary, 3)), SignatureMismatch);
}

TEST_CASE("property: isomorphism agrees with the permutation oracle on all pairs up to 5 vertices")
{
    std::vector<Structure> corpus;
    for (int n = 0 ; n <= 5 ; ++n)
        for (auto & g : all_graphs(n))
            corpus.push_back(g);
    std::mt19937 rng{ 11 };
    for (auto & g : std::vector<Structure>(corpus))
        corpus.push_back(relabel(g, oracle::random_permutation(rng, g.size())));

    for (std::size_t i = 0 ; i < corpus.size() ; ++i)
        for (std::size_t j = 0 ; j < corpus.size() ; ++j) {
            if (corpus[i].size() != corpus[j].size())
                continue;
            auto w = is_isomorphic(corpus[i], corpus[j]);
            REQUIRE(w.has_value() == oracle::isomorphic(corpus[i], corpus[j]));
            if (w) {
                CHECK(w->is_valid());
                CHECK(is_homomorphism(corpus[j], corpus[i], [&] {
                    std::vector<int> inv(w->map().size());
                    for (std::size_t x = 0 ; x < inv.size() ; ++x)
                        inv[static_cast<std::size_t>(w->map()[x])] = static_cast<int>(x);
                    return inv;
                }()));
            }
        }
}

TEST_CASE("isomorphism on a ternary signature")
{
    Signature sig{ { { "R", 3 }, { "P", 1 } } };
    Structure a{ sig, 4, { { 0, 1, 2, 1, 2, 3 }, { 0 } } };
    Structure b{ sig, 4, { { 3, 2, 1, 2, 1, 0 }, { 3 } } };
    Structure c{ sig, 4, { { 3, 2, 1, 2, 1, 0 }, { 0 } } };
    CHECK(is_isomorphic(a, b));
    CHECK_FALSE(is_isomorphic(a, c));
}

TEST_CASE("property: composites of homomorphisms are homomorphisms")
{
    std::mt19937 rng{ 3 };
    auto k3 = clique(3);
    int composed = 0;
    for (int trial = 0 ; trial < 60 ; ++trial) {
        auto g = oracle::random_graph(rng, 5, 0.4);
        auto f = find_hom(g, k3);
        if (! f)
            continue;
        auto perm = oracle::random_permutation(rng, 4);
        Homomorphism h{ k3, clique(4), { perm[0], perm[1], perm[2] } };
        CHECK(compose(h, *f).is_valid());
        ++composed;
    }
    CHECK(composed > 10);
}

TEST_CASE("text format round-trips and reports line numbers")
{
    auto g = disjoint_union(cycle(3), oracle::path(3));
    CHECK(parse_structure(serialize(g)) == g);

    Signature sig{ { { "R", 3 }, { "P", 1 } } };
    Structure s{ sig, 4, { { 0, 1, 2, 3, 3, 3 }, { 2 } } };
    CHECK(parse_structure(serialize(s)) == s);
    CHECK(serialize(parse_structure(serialize(s))) == serialize(s));

    CHECK(parse_structure("# comment\ngraph\nuniverse 2\ne 0 1\n") == clique(2));
    try {
        parse_structure("graph\nuniverse 2\ne 0 7\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError & e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_structure("graph\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("signature R/0\nuniverse 1\n"), ParseError);
}
