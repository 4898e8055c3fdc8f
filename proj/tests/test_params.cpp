#include "oracles.hpp"

#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/error.hpp>
#include <ddc/params.hpp>

#include <doctest.h>

#include <cmath>

using namespace ddc;
using oracle::clique;
using oracle::cycle;
using oracle::path;

TEST_CASE("extended integers")
{
    CHECK(ExtReal::neg_inf() < ExtReal{ -1000 });
    CHECK(ExtReal{ 1000 } < ExtReal::pos_inf());
    CHECK(ExtReal{ 2 } < ExtReal{ 3 });
    CHECK(ExtReal::neg_inf() == ExtReal::neg_inf());
    CHECK(std::max(ExtReal::neg_inf(), ExtReal{ 0 }) == ExtReal{ 0 });
    for (auto text : { "-inf", "+inf", "0", "-3", "17" })
        CHECK(ExtReal::parse(text).to_string() == text);
    CHECK_THROWS_AS(ExtReal::parse("three"), InvalidArgument);
    CHECK_THROWS(ExtReal::pos_inf().value());
}

TEST_CASE("tree-depth")
{
    CHECK(tree_depth(clique(1)) == ExtReal{ 1 });
    CHECK(tree_depth(path(4)) == ExtReal{ 3 });
    for (int n = 1 ; n <= 5 ; ++n)
        CHECK(tree_depth(clique(n)) == ExtReal{ n });
    for (int n = 1 ; n <= 7 ; ++n)
        CHECK(tree_depth(path(n)) == ExtReal{ static_cast<std::int64_t>(std::ceil(std::log2(n + 1))) });
    CHECK(tree_depth(Structure{}) == ExtReal::neg_inf());
    CHECK(tree_depth(disjoint_union(clique(3), path(4))) == ExtReal{ 3 });
    CHECK_THROWS_AS(tree_depth(path(11)), CapExceeded);
    CHECK(tree_depth(path(11), 12) == ExtReal{ 4 });
}

TEST_CASE("property: width parameters agree with brute force up to 6 vertices")
{
    for (auto & g : all_graphs_up_to(6)) {
        if (g.size() == 0)
            continue;
        REQUIRE(tree_depth(g) == ExtReal{ oracle::tree_depth(g) });
        REQUIRE(tree_width(g) == ExtReal{ oracle::tree_width(g) });
        REQUIRE(path_width(g) == ExtReal{ oracle::path_width(g) });
    }
}

TEST_CASE("width examples")
{
    CHECK(tree_width(path(5)) == ExtReal{ 1 });
    CHECK(tree_width(oracle::star(4)) == ExtReal{ 1 });
    CHECK(tree_width(cycle(5)) == ExtReal{ 2 });
    CHECK(path_width(cycle(5)) == ExtReal{ 2 });
    CHECK(tree_width(clique(4)) == ExtReal{ 3 });
    CHECK(tree_width(oracle::edgeless(3)) == ExtReal{ 0 });
    CHECK(tree_width(Structure{}) == ExtReal::neg_inf());
    CHECK(path_width(Structure{}) == ExtReal::neg_inf());
}

TEST_CASE("degree, clique, chromatic and girth")
{
    for (int n = 3 ; n <= 8 ; ++n)
        CHECK(max_degree(cycle(n)) == ExtReal{ 2 });
    CHECK(chromatic_number(clique(3)) == ExtReal{ 3 });
    CHECK(chromatic_number(cycle(5)) == ExtReal{ 3 });
    CHECK(chromatic_number(cycle(6)) == ExtReal{ 2 });
    CHECK(clique_number(oracle::star(4)) == ExtReal{ 2 });
    CHECK(clique_number(oracle::edgeless(3)) == ExtReal{ 1 });
    CHECK(max_degree(Structure{}) == ExtReal::neg_inf());
    CHECK(girth(disjoint_union(cycle(3), cycle(5))) == ExtReal{ 3 });
    CHECK(girth(path(5)) == ExtReal::pos_inf());
    for (auto & g : all_graphs_up_to(6)) {
        int expected = oracle::girth(g);
        CHECK(girth(g) == (expected < 0 ? ExtReal::pos_inf() : ExtReal{ expected }));
    }
}

TEST_CASE("parameter names")
{
    for (auto & name : parameter_names())
        CHECK(parameter_by_name(name).name == name);
    CHECK(parameter_by_name("tw+1").eval(clique(4)) == ExtReal{ 4 });
    CHECK_THROWS_AS(parameter_by_name("genus"), InvalidArgument);
}

TEST_CASE("standardness")
{
    auto corpus = all_graphs_up_to(4);
    for (auto & name : { "td", "tw", "tw+1", "pw", "pw+1", "maxdeg", "clique", "chromatic" }) {
        auto r = is_standard_on(parameter_by_name(name), corpus);
        INFO(name);
        CHECK(r.passed);
        CHECK(r.pairs_checked == corpus.size() * corpus.size());
    }
    auto girth_report = is_standard_on(parameter_by_name("girth"), { cycle(3), cycle(5) });
    CHECK_FALSE(girth_report.passed);
    CHECK_FALSE(girth_report.violations.empty());

    Parameter constant{ "constant", [] (const Structure &) { return ExtReal{ 7 }; } };
    CHECK(is_standard_on(constant, corpus).passed);
}

TEST_CASE("graded families are nested")
{
    auto gf = graded_family(parameter_by_name("td"), 3, 1, 3);
    REQUIRE(gf.grades.count(ExtReal{ 1 }));
    auto & g1 = gf.grades.at(ExtReal{ 1 });
    REQUIRE(g1.size() == 1);
    CHECK(g1.generator(0) == clique(1));
    auto & g2 = gf.grades.at(ExtReal{ 2 });
    CHECK(g2.index_of(clique(2)));
    CHECK(g2.index_of(path(3)));
    CHECK(gf.grades.at(ExtReal::neg_inf()).empty());
    auto & top = gf.grades.at(ExtReal::pos_inf());
    CHECK(top.size() == connected_graphs(1).size() + connected_graphs(2).size() + connected_graphs(3).size());

    for (auto & name : { "td", "tw+1", "maxdeg", "pw+1" }) {
        auto f = graded_family(parameter_by_name(name), 5, 0, 5);
        const GeneratorFamily * prev = nullptr;
        for (auto & [k, fam] : f.grades) {
            if (prev) {
                CHECK(prev->size() <= fam.size());
                // sub-list: generators appear in the same relative order
                std::size_t at = 0;
                for (auto & g : prev->generators()) {
                    while (at < fam.size() && ! (fam.generator(at) == g))
                        ++at;
                    CHECK(at < fam.size());
                }
            }
            prev = &fam;
        }
    }
}

TEST_CASE("coalgebra numbers")
{
    auto td = graded_family(parameter_by_name("td"), 5, 1, 5);
    CHECK(coalgebra_number(td, path(4)).value == ExtReal{ 3 });
    CHECK(coalgebra_number(td, Structure{}).value == ExtReal::neg_inf());
    auto mixed = coalgebra_number(td, disjoint_union(clique(3), path(4)));
    CHECK(mixed.value == ExtReal{ 3 });
    CHECK(mixed.witnesses == std::vector<std::string>{ "K3", "P4" });
    CHECK_THROWS_AS(coalgebra_number(td, path(6)), OutOfRange);

    auto narrow = graded_family(parameter_by_name("td"), 5, 1, 2);
    CHECK(coalgebra_number(narrow, path(4)).value == ExtReal::pos_inf());
}

TEST_CASE("property: the coalgebra number recovers standard parameters")
{
    for (auto & name : { "td", "tw+1", "maxdeg" }) {
        auto param = parameter_by_name(name);
        auto gf = graded_family(param, 5, 0, 5);
        for (auto & g : all_graphs_up_to(5)) {
            INFO(name << " on " << graph_name(g));
            CHECK(coalgebra_number(gf, g).value == param.eval(g));
        }
    }
}
