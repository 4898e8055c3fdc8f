#include "cli.hpp"
#include "oracles.hpp"

#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/density.hpp>
#include <ddc/equivalence.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/params.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ddc;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        int code;
        std::string out;
        std::string err;
    };

    auto dd(std::vector<std::string> args) -> Outcome
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return { code, out.str(), err.str() };
    }

    class Scratch
    {
    public:
        Scratch()
        {
            static int counter = 0;
            dir_ = fs::temp_directory_path() / ("dd-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
            fs::create_directories(dir_);
        }
        ~Scratch() { fs::remove_all(dir_); }

        auto write(const std::string & name, const Structure & s) -> std::string
        {
            auto p = dir_ / name;
            write_structure(p, s);
            return p.string();
        }
        auto path(const std::string & name) const -> std::string { return (dir_ / name).string(); }

    private:
        fs::path dir_;
    };

    auto slurp(const fs::path & p) -> std::string
    {
        std::ifstream in{ p, std::ios::binary };
        return { std::istreambuf_iterator<char>(in), {} };
    }
}

TEST_CASE("hom prints the library count")
{
    Scratch s;
    auto tri = s.write("triangle.g", oracle::clique(3));
    auto k4 = s.write("k4.g", oracle::clique(4));
    auto r = dd({ "hom", tri, k4 });
    CHECK(r.code == 0);
    CHECK(r.out == "RESULT: hom_count=24\n");
    auto listed = dd({ "hom", "--list", "--mode", "iso", tri, tri });
    CHECK(listed.out.find("map: 0 1 2\n") == 0);
    CHECK(listed.out.find("RESULT: iso_count=6") != std::string::npos);
}

TEST_CASE("coalgebra verdicts and exit codes")
{
    Scratch s;
    auto c3c5 = s.write("c3c5.g", disjoint_union(oracle::cycle(3), oracle::cycle(5)));
    auto p3 = s.write("p3.g", oracle::path(3));
    auto r = dd({ "coalgebra", "--class", "cycles", "--max", "6", c3c5 });
    CHECK(r.code == 0);
    CHECK(r.out == "RESULT: coalgebra=yes grade_witnesses=C3,C5\n");
    auto no = dd({ "coalgebra", "--class", "cycles", "--max", "6", p3 });
    CHECK(no.code == 1);
    CHECK(no.out == "RESULT: coalgebra=no\n");
    auto both = dd({ "coalgebra", "--class", "trees", "--max", "4", "--method", "both", p3 });
    CHECK(both.code == 0);

    auto gen = s.write("k3c5.g", disjoint_union(oracle::clique(3), oracle::cycle(5)));
    auto k3 = s.write("k3.g", oracle::clique(3));
    CHECK(dd({ "coalgebra", "--gen", gen, "--allow-disconnected", gen }).code == 0);
    CHECK(dd({ "coalgebra", "--gen", gen, "--allow-disconnected", k3 }).code == 1);
    CHECK(dd({ "coalgebra", "--gen", gen, k3 }).code == 2);
}

TEST_CASE("usage errors, parse errors and caps")
{
    Scratch s;
    auto k4 = s.write("k4.g", oracle::clique(4));
    CHECK(dd({}).code == 2);
    CHECK(dd({ "frobnicate" }).code == 2);
    CHECK(dd({ "hom", k4 }).code == 2);
    CHECK(dd({ "hom", s.path("missing.g"), k4 }).code == 2);

    {
        std::ofstream bad{ s.path("bad.g") };
        bad << "graph\nuniverse 2\ne 0 5\n";
    }
    auto parse = dd({ "hom", s.path("bad.g"), k4 });
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 3") != std::string::npos);

    auto unknown = dd({ "classify", "--class", "squiggly", k4 });
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("td<=K") != std::string::npos);

    auto capped = dd({ "apply", "--class", "cycles", "--max", "6", "--cap-carrier", "100", k4 });
    CHECK(capped.code == 3);
    CHECK(capped.err.find("would be") != std::string::npos);
    CHECK(dd({ "generate", "--max", "9", "--out", s.path("big") }).code == 3);
}

TEST_CASE("apply, param, kappa and classify match library calls")
{
    Scratch s;
    auto k4 = oracle::clique(4);
    auto file = s.write("k4.g", k4);
    auto fam = generators(class_by_name("cycles"), 4);
    auto d = apply(fam, k4);
    auto r = dd({ "apply", "--class", "cycles", "--max", "4", file, "--out", s.path("d.g") });
    CHECK(r.code == 0);
    CHECK(r.out.find("blocks=" + std::to_string(d.blocks().size()) + " carrier=" + std::to_string(d.carrier().size())) != std::string::npos);
    CHECK(read_structure(s.path("d.g")) == d.carrier());

    auto p4 = s.write("p4.g", oracle::path(4));
    CHECK(dd({ "param", "td", p4 }).out == "RESULT: td=" + tree_depth(oracle::path(4)).to_string() + "\n");
    CHECK(dd({ "param", "girth", p4 }).out == "RESULT: girth=+inf\n");
    CHECK(dd({ "kappa", "td", "5", p4 }).out == "RESULT: kappa=3 grade_witnesses=P4\n");

    CHECK(dd({ "classify", "--class", "planar", file }).code == 0);
    auto k5 = s.write("k5k1.g", disjoint_union(oracle::clique(5), oracle::clique(1)));
    auto nonplanar = dd({ "classify", "--class", "planar", k5 });
    CHECK(nonplanar.code == 1);
    CHECK(nonplanar.out.find("rejected_components=K5") != std::string::npos);
}

TEST_CASE("equiv and report")
{
    Scratch s;
    auto a = s.write("c4k1.g", disjoint_union(oracle::cycle(4), oracle::clique(1)));
    auto b = s.write("star.g", oracle::star(4));
    auto cos = dd({ "equiv", "--relation", "cospectral", a, b });
    CHECK(cos.code == 0);
    CHECK(cos.out.find("equivalent=yes") != std::string::npos);
    CHECK(cos.out.find("x^5 - 4x^3") != std::string::npos);
    CHECK(dd({ "equiv", "--relation", "fractional", a, b }).code == 1);
    CHECK(dd({ "equiv", "--relation", "doublecover", a, b }).code == 1);
    auto hv = dd({ "equiv", "--relation", "homvec:cycles:6", "--jobs", "2", a, b });
    CHECK(hv.code == 0);
    CHECK(hv.out.find("left=(0, 32, 0, 128) right=(0, 32, 0, 128)") != std::string::npos);
    CHECK(dd({ "equiv", "--relation", "homvec:cycles", a, b }).code == 2);
    CHECK(dd({ "equiv", "--relation", "quantum", a, b }).code == 2);

    auto rep = dd({ "report", a, b, "--max", "6" });
    CHECK(rep.code == 0);
    CHECK(rep.out.find("RESULT: row.cycles.status=agree-true\n") != std::string::npos);
    CHECK(rep.out.find("RESULT: row.trees.status=agree-false\n") != std::string::npos);
}

TEST_CASE("generate writes one file per isomorphism class, deterministically")
{
    Scratch s;
    auto r3 = dd({ "generate", "--max", "3", "--out", s.path("g3") });
    CHECK(r3.code == 0);
    CHECK(r3.out == "RESULT: files=8 max=3\n");
    auto r5 = dd({ "generate", "--max", "5", "--out", s.path("g5") });
    CHECK(r5.out == "RESULT: files=53 max=5\n");

    std::vector<fs::path> files;
    for (auto & e : fs::directory_iterator(s.path("g5")))
        files.push_back(e.path());
    CHECK(files.size() == 53);
    for (auto & f : files) {
        auto text = slurp(f);
        CHECK(f.filename().string() == cli::corpus_file_name(text));
        CHECK(f.filename().string().size() == 18);
    }

    dd({ "generate", "--max", "5", "--out", s.path("again") });
    for (auto & f : files)
        CHECK(slurp(f) == slurp(fs::path(s.path("again")) / f.filename()));
}

TEST_CASE("laws over a generated corpus")
{
    Scratch s;
    dd({ "generate", "--max", "3", "--out", s.path("g3") });
    auto r = dd({ "laws", "--class", "trees", "--max", "3", "--corpus", s.path("g3"), "--jobs", "2" });
    CHECK(r.code == 0);
    for (auto law : { "counit-left", "counit-right", "coassociativity", "DC1-lift-of-inclusion", "DC2-counit-of-inclusion", "DC3-comultiplication-of-inclusion" })
        CHECK(r.out.find(std::string("RESULT: law=") + law + " status=PASS") != std::string::npos);
    auto ef = dd({ "laws", "--ef", "2", "--corpus", s.path("g3") });
    CHECK(ef.code == 0);
    CHECK(ef.out.find("RESULT: laws=pass corpus=8 skipped=0") != std::string::npos);

    // identical invocations give identical bytes
    CHECK(dd({ "laws", "--class", "trees", "--max", "3", "--corpus", s.path("g3") }).out ==
          dd({ "laws", "--class", "trees", "--max", "3", "--corpus", s.path("g3"), "--jobs", "3" }).out);
}

TEST_CASE("subdivide")
{
    Scratch s;
    auto r = dd({ "subdivide", "4", "1", "--out", s.path("k41.g") });
    CHECK(r.out == "RESULT: vertices=10 edges=12\n");
    CHECK(read_structure(s.path("k41.g")) == subdivided_clique(4, 1));
}

TEST_CASE("snapshot closure checks")
{
    Scratch s;
    fs::create_directories(s.path("snap"));
    s.write("snap/two.g", disjoint_union(oracle::clique(3), oracle::clique(3)));
    auto missing = dd({ "classify", "--snapshot", s.path("snap") });
    CHECK(missing.code == 1);
    CHECK(missing.out.find("summand_closed=no") != std::string::npos);

    s.write("snap/one.g", oracle::clique(3));
    auto closed = dd({ "classify", "--snapshot", s.path("snap") });
    CHECK(closed.code == 0);
    CHECK(closed.out == "RESULT: iso_closed=yes summand_closed=yes coproduct_closed=yes\n");
}
