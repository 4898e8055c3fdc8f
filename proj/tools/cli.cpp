#include "cli.hpp"

#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/density.hpp>
#include <ddc/equivalence.hpp>
#include <ddc/error.hpp>
#include <ddc/game_comonad.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/params.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace ddc::cli {

namespace fs = std::filesystem;

auto corpus_file_name(const std::string & canonical_serialization) -> std::string
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_serialization)));
    return std::string(buf) + ".g";
}

namespace
{
    struct Options
    {
        std::vector<std::string> files;
        std::string klass;
        int max = 0;
        std::vector<std::string> gen;
        bool allow_disconnected = false;
        std::size_t cap_carrier = Caps{}.carrier;
        std::size_t cap_square = Caps{}.square;
        unsigned jobs = 1;
        std::string corpus;
        std::string method;
        std::string relation;
        std::string out;
        std::string mode = "hom";
        bool list = false;
        std::string snapshot;
        int ef = 0;
        std::string param;
        int n = 0, p = 0;
    };

    auto yes_no(bool b) -> const char * { return b ? "yes" : "no"; }

    auto joined(const std::vector<std::string> & items, const char * sep = ",") -> std::string
    {
        std::string s;
        for (auto & i : items)
            s += (s.empty() ? "" : sep) + i;
        return s;
    }

    auto family_from(const Options & o) -> GeneratorFamily
    {
        if (! o.gen.empty()) {
            std::vector<Structure> gens;
            for (auto & f : o.gen)
                gens.push_back(read_structure(f));
            auto sig = gens.front().signature();
            return GeneratorFamily{ sig, std::move(gens), ! o.allow_disconnected };
        }
        if (o.klass.empty())
            throw InvalidArgument("a generator family needs --class (with --max) or --gen");
        return generators(class_by_name(o.klass), o.max);
    }

    auto read_corpus(const std::string & dir) -> std::vector<Structure>
    {
        std::vector<fs::path> paths;
        for (auto & entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".g")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        std::vector<Structure> corpus;
        for (auto & p : paths)
            corpus.push_back(read_structure(p));
        return corpus;
    }

    auto cmd_hom(const Options & o, std::ostream & out) -> int
    {
        auto a = read_structure(o.files.at(0));
        auto b = read_structure(o.files.at(1));
        auto mode = o.mode == "mono" ? HomMode::mono : o.mode == "iso" ? HomMode::iso : HomMode::hom;
        if (o.list)
            for (auto & map : hom_maps(HomQuery{ a, b, mode, std::nullopt })) {
                out << "map:";
                for (int y : map)
                    out << " " << y;
                out << "\n";
            }
        out << "RESULT: " << o.mode << "_count=" << count_homs(a, b, mode) << "\n";
        return ok;
    }

    auto cmd_apply(const Options & o, std::ostream & out) -> int
    {
        auto fam = family_from(o);
        auto b = read_structure(o.files.at(0));
        auto d = apply(fam, b, o.cap_carrier);
        std::vector<std::string> per;
        for (std::size_t g = 0 ; g < fam.size() ; ++g)
            per.push_back(fam.name(g) + ":" + std::to_string(d.hom_count(g)));
        if (! o.out.empty())
            write_structure(o.out, d.carrier());
        out << "RESULT: blocks=" << d.blocks().size() << " carrier=" << d.carrier().size()
            << " tuples=" << d.carrier().total_tuple_count() << " homs=" << joined(per) << "\n";
        return ok;
    }

    // Generator names used by α, in order of first use.
    auto witnesses(const DensityComonad & dc, const Coalgebra & c) -> std::vector<std::string>
    {
        auto d = dc.density(c.carrier);
        std::vector<std::string> names;
        for (int x = 0 ; x < c.carrier.size() ; ++x) {
            auto & name = dc.family().name(d->triple(c.alpha(x)).generator);
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.push_back(name);
        }
        return names;
    }

    auto cmd_coalgebra(const Options & o, std::ostream & out) -> int
    {
        auto fam = family_from(o);
        auto x = read_structure(o.files.at(0));
        DensityComonad dc{ fam, Caps{ o.cap_carrier, o.cap_square } };
        auto method = o.method.empty() ? (fam.requires_connected() ? "decomposition" : "search") : o.method;

        std::optional<Coalgebra> found;
        std::vector<std::string> names;
        if (method == "decomposition" || method == "both") {
            found = coalgebra_by_decomposition(dc, x);
            if (found)
                for (auto & g : classify_components(fam, x))
                    names.push_back(fam.name(*g));
        }
        if (method == "search" || method == "both") {
            auto searched = coalgebra_by_search(dc, x, SearchOptions{ std::max(6, x.size()) });
            if (method == "both" && searched.has_value() != found.has_value()) {
                out << "RESULT: coalgebra=disagree decomposition=" << yes_no(found.has_value())
                    << " search=" << yes_no(searched.has_value()) << "\n";
                return negative;
            }
            if (method == "search") {
                found = searched;
                if (found)
                    names = witnesses(dc, *found);
            }
        }
        if (method != "decomposition" && method != "search" && method != "both")
            throw InvalidArgument("--method must be decomposition, search or both");

        if (! found) {
            out << "RESULT: coalgebra=no\n";
            return negative;
        }
        out << "RESULT: coalgebra=yes grade_witnesses=" << joined(names) << "\n";
        return ok;
    }

    auto cmd_laws(const Options & o, std::ostream & out) -> int
    {
        auto corpus = read_corpus(o.corpus);
        Caps caps{ o.cap_carrier, o.cap_square };
        LawOptions opts;
        opts.jobs = o.jobs;
        LawReport report;
        if (o.ef > 0)
            report = check_comonad_laws(EFComonad{ o.ef, caps }, corpus, opts);
        else
            report = check_density_laws(DensityComonad{ family_from(o), caps }, corpus, opts);

        for (auto & s : report.skipped)
            out << "SKIP " << s << "\n";
        for (auto & l : report.laws) {
            auto name = l.law;
            std::replace(name.begin(), name.end(), ' ', '-');
            out << "RESULT: law=" << name << " status=" << (l.passed ? "PASS" : "FAIL") << " checked=" << l.checked;
            if (! l.passed)
                out << " counterexample=\"" << l.counterexample << "\"";
            out << "\n";
        }
        out << "RESULT: laws=" << (report.all_passed() ? "pass" : "fail") << " corpus=" << corpus.size()
            << " skipped=" << report.skipped.size() << "\n";
        return report.all_passed() ? ok : negative;
    }

    auto cmd_classify(const Options & o, std::ostream & out) -> int
    {
        if (! o.snapshot.empty()) {
            auto r = component_based_snapshot_check(read_corpus(o.snapshot));
            for (auto & v : r.violations)
                out << "violation: " << v << "\n";
            out << "RESULT: iso_closed=" << yes_no(r.iso_closed) << " summand_closed=" << yes_no(r.summand_closed)
                << " coproduct_closed=" << yes_no(r.coproduct_closed) << "\n";
            return r.passed() ? ok : negative;
        }
        if (o.files.empty())
            throw InvalidArgument("classify needs a structure file or --snapshot");
        auto spec = class_by_name(o.klass);
        auto g = read_structure(o.files.at(0));
        std::vector<std::string> rejected;
        for (auto & c : components(g.is_graph() ? g : gaifman(g)).components)
            if (! spec.connected_predicate(c))
                rejected.push_back(graph_name(c));
        bool member = rejected.empty();
        out << "RESULT: member=" << yes_no(member) << " class=" << spec.name;
        if (! member)
            out << " rejected_components=" << joined(rejected);
        out << "\n";
        return member ? ok : negative;
    }

    auto cmd_param(const Options & o, std::ostream & out) -> int
    {
        auto param = parameter_by_name(o.param);
        auto g = read_structure(o.files.at(0));
        out << "RESULT: " << param.name << "=" << param.eval(g).to_string() << "\n";
        return ok;
    }

    auto cmd_kappa(const Options & o, std::ostream & out) -> int
    {
        auto param = parameter_by_name(o.param);
        auto g = read_structure(o.files.at(0));
        auto gf = graded_family(param, o.max, 0, o.max);
        auto k = coalgebra_number(gf, g);
        out << "RESULT: kappa=" << k.value.to_string() << " grade_witnesses=" << joined(k.witnesses) << "\n";
        return ok;
    }

    auto cmd_equiv(const Options & o, std::ostream & out) -> int
    {
        auto a = read_structure(o.files.at(0));
        auto b = read_structure(o.files.at(1));
        bool equal = false;
        std::string extra;
        if (o.relation == "cospectral") {
            auto pa = char_poly(a), pb = char_poly(b);
            equal = pa == pb;
            extra = " left=\"" + pa.to_string() + "\" right=\"" + pb.to_string() + "\"";
        }
        else if (o.relation == "fractional")
            equal = fractional_iso(a, b);
        else if (o.relation == "doublecover")
            equal = double_cover_iso(a, b);
        else if (o.relation.rfind("homvec:", 0) == 0) {
            auto rest = o.relation.substr(7);
            auto colon = rest.rfind(':');
            if (colon == std::string::npos)
                throw InvalidArgument("expected homvec:<class>:<n>");
            int n = 0;
            try {
                n = std::stoi(rest.substr(colon + 1));
            }
            catch (const std::exception &) {
                throw InvalidArgument("expected homvec:<class>:<n>");
            }
            auto fam = generators(class_by_name(rest.substr(0, colon)), n);
            auto va = hom_vector(fam, a, o.jobs), vb = hom_vector(fam, b, o.jobs);
            equal = va == vb;
            extra = " generators=" + joined(fam.names()) + " left=" + va.to_string() + " right=" + vb.to_string();
        }
        else
            throw InvalidArgument("unknown relation '" + o.relation + "'; valid: cospectral, fractional, doublecover, homvec:<class>:<n>");

        out << "RESULT: relation=" << o.relation << " equivalent=" << yes_no(equal) << extra << "\n";
        return equal ? ok : negative;
    }

    auto cmd_report(const Options & o, std::ostream & out) -> int
    {
        auto a = read_structure(o.files.at(0));
        auto b = read_structure(o.files.at(1));
        auto r = relation_report(a, b, o.max);
        out << r.table();
        std::istringstream lines{ r.machine() };
        for (std::string line ; std::getline(lines, line) ; )
            out << "RESULT: " << line << "\n";
        bool contradiction = std::any_of(r.rows.begin(), r.rows.end(), [] (auto & row) { return row.status == RowStatus::contradiction; });
        return contradiction ? negative : ok;
    }

    auto cmd_generate(const Options & o, std::ostream & out) -> int
    {
        if (o.max > max_enumerated_order)
            throw CapExceeded("graph enumeration", static_cast<std::size_t>(max_enumerated_order), static_cast<std::size_t>(o.max));
        fs::create_directories(o.out);
        std::size_t written = 0;
        for (auto & g : all_graphs_up_to(o.max)) {
            auto text = serialize(canonical_graph(g));
            std::ofstream f{ fs::path(o.out) / corpus_file_name(text), std::ios::binary };
            f << text;
            ++written;
        }
        out << "RESULT: files=" << written << " max=" << o.max << "\n";
        return ok;
    }

    auto cmd_subdivide(const Options & o, std::ostream & out) -> int
    {
        auto g = subdivided_clique(o.n, o.p);
        if (o.out.empty())
            out << serialize(g);
        else
            write_structure(o.out, g);
        out << "RESULT: vertices=" << g.size() << " edges=" << g.edge_count() << "\n";
        return ok;
    }

    void add_family(CLI::App * c, Options & o)
    {
        c->add_option("--class", o.klass, "Generator class, e.g. cycles, trees, td<=2");
        c->add_option("--max", o.max, "Largest generator size")->check(CLI::Range(0, max_generator_size));
        c->add_option("--gen", o.gen, "Explicit generator files (instead of --class)");
        c->add_flag("--allow-disconnected", o.allow_disconnected, "Admit disconnected generators");
    }

    void add_caps(CLI::App * c, Options & o)
    {
        c->add_option("--cap-carrier", o.cap_carrier, "Largest D(B) built on request");
        c->add_option("--cap-square", o.cap_square, "Largest structure built internally");
    }
}

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{ "Density comonads, coalgebras and homomorphism-counting equivalences on finite graphs", "dd" };
    app.require_subcommand(1);
    Options o;

    auto hom = app.add_subcommand("hom", "Count homomorphisms A -> B");
    hom->add_option("files", o.files, "A B")->required()->expected(2);
    hom->add_option("--mode", o.mode)->check(CLI::IsMember({ "hom", "mono", "iso" }));
    hom->add_flag("--list", o.list, "Print every map in lexicographic order");

    auto apply_cmd = app.add_subcommand("apply", "Build the density structure D(B)");
    apply_cmd->add_option("B", o.files)->required()->expected(1);
    add_family(apply_cmd, o);
    add_caps(apply_cmd, o);
    apply_cmd->add_option("--out", o.out, "Write the carrier here");

    auto coalg = app.add_subcommand("coalgebra", "Decide whether X admits a coalgebra");
    coalg->add_option("X", o.files)->required()->expected(1);
    add_family(coalg, o);
    add_caps(coalg, o);
    coalg->add_option("--method", o.method, "decomposition, search or both");

    auto laws = app.add_subcommand("laws", "Check comonad laws pointwise on a corpus");
    add_family(laws, o);
    add_caps(laws, o);
    laws->add_option("--ef", o.ef, "Check the Ehrenfeucht-Fraisse comonad E_k instead")->check(CLI::PositiveNumber);
    laws->add_option("--corpus", o.corpus, "Directory of .g files")->required()->check(CLI::ExistingDirectory);
    laws->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);

    auto classify = app.add_subcommand("classify", "Class membership, or closure checks on a snapshot");
    classify->add_option("G", o.files)->expected(0, 1);
    classify->add_option("--class", o.klass);
    classify->add_option("--snapshot", o.snapshot, "Directory of .g files")->check(CLI::ExistingDirectory);

    auto param = app.add_subcommand("param", "Evaluate a graph parameter");
    param->add_option("name", o.param)->required();
    param->add_option("G", o.files)->required()->expected(1);

    auto kappa = app.add_subcommand("kappa", "Coalgebra number over the grades of a parameter");
    kappa->add_option("param", o.param)->required();
    kappa->add_option("maxsize", o.max)->required()->check(CLI::Range(0, max_generator_size));
    kappa->add_option("G", o.files)->required()->expected(1);

    auto equiv = app.add_subcommand("equiv", "Decide one relation between A and B");
    equiv->add_option("files", o.files, "A B")->required()->expected(2);
    equiv->add_option("--relation", o.relation, "cospectral, fractional, doublecover or homvec:<class>:<n>")->required();
    equiv->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);

    auto report = app.add_subcommand("report", "Hom-count families against their oracles");
    report->add_option("files", o.files, "A B")->required()->expected(2);
    report->add_option("--max", o.max)->required()->check(CLI::Range(0, max_generator_size));

    auto generate = app.add_subcommand("generate", "Write every graph up to isomorphism");
    generate->add_option("--max", o.max)->required()->check(CLI::NonNegativeNumber);
    generate->add_option("--out", o.out)->required();

    auto subdivide = app.add_subcommand("subdivide", "The p-fold subdivided clique");
    subdivide->add_option("n", o.n)->required()->check(CLI::PositiveNumber);
    subdivide->add_option("p", o.p)->required()->check(CLI::NonNegativeNumber);
    subdivide->add_option("--out", o.out);

    std::vector<std::string> argv_store{ "dd" };
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (auto & a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (hom->parsed())
            return cmd_hom(o, out);
        if (apply_cmd->parsed())
            return cmd_apply(o, out);
        if (coalg->parsed())
            return cmd_coalgebra(o, out);
        if (laws->parsed())
            return cmd_laws(o, out);
        if (classify->parsed())
            return cmd_classify(o, out);
        if (param->parsed())
            return cmd_param(o, out);
        if (kappa->parsed())
            return cmd_kappa(o, out);
        if (equiv->parsed())
            return cmd_equiv(o, out);
        if (report->parsed())
            return cmd_report(o, out);
        if (generate->parsed())
            return cmd_generate(o, out);
        if (subdivide->parsed())
            return cmd_subdivide(o, out);
    }
    catch (const CapExceeded & e) {
        err << "dd: " << e.what() << "\n";
        return cap;
    }
    catch (const std::exception & e) {
        err << "dd: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

} // namespace ddc::cli
