#include <ddc/equivalence.hpp>
#include <ddc/classes.hpp>
#include <ddc/error.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/parallel.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace ddc {

auto HomVector::to_string() const -> std::string
{
    std::string out = "(";
    for (std::size_t i = 0 ; i < counts.size() ; ++i)
        out += (i ? ", " : "") + counts[i].str();
    return out + ")";
}

auto hom_vector(const GeneratorFamily & fam, const Structure & g, unsigned jobs) -> HomVector
{
    HomVector v{ fam.names(), std::vector<BigInt>(fam.size()) };
    parallel_for(fam.size(), jobs, [&] (std::size_t i) {
        v.counts[i] = count_homs(fam.generator(i), g);
    });
    return v;
}

auto lovasz_equiv(const GeneratorFamily & fam, const Structure & a, const Structure & b) -> bool
{
    for (auto & gen : fam.generators())
        if (count_homs(gen, a) != count_homs(gen, b))
            return false;
    return true;
}

auto CharPoly::to_string() const -> std::string
{
    std::string out;
    for (int i = degree() ; i >= 0 ; --i) {
        const auto & c = coefficients[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        BigInt magnitude = c < 0 ? BigInt(-c) : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (magnitude != 1 || i == 0)
            out += magnitude.str();
        if (i >= 1)
            out += "x";
        if (i >= 2)
            out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

auto adjacency_matrix(const Structure & g) -> IntMatrix
{
    auto n = static_cast<std::size_t>(g.size());
    IntMatrix a(n, std::vector<BigInt>(n, 0));
    for (int v = 0 ; v < g.size() ; ++v)
        for (int w : g.neighbors(v))
            a[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = 1;
    return a;
}

namespace
{
    auto multiply(const IntMatrix & x, const IntMatrix & y) -> IntMatrix
    {
        auto n = x.size();
        IntMatrix out(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0 ; i < n ; ++i)
            for (std::size_t k = 0 ; k < n ; ++k) {
                if (x[i][k] == 0)
                    continue;
                for (std::size_t j = 0 ; j < n ; ++j)
                    out[i][j] += x[i][k] * y[k][j];
            }
        return out;
    }

    auto trace(const IntMatrix & x) -> BigInt
    {
        BigInt t = 0;
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            t += x[i][i];
        return t;
    }
}

auto char_poly(const Structure & g) -> CharPoly
{
    auto a = adjacency_matrix(g);
    auto n = a.size();
    std::vector<BigInt> c(n + 1, 0);
    c[n] = 1;

    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t k = 1 ; k <= n ; ++k) {
        auto next = multiply(a, m);
        for (std::size_t i = 0 ; i < n ; ++i)
            next[i][i] += c[n - k + 1];
        m = std::move(next);
        BigInt t = trace(multiply(a, m));
        if (t % static_cast<long>(k) != 0)
            throw LawViolation("characteristic polynomial recurrence produced a non-integer coefficient");
        c[n - k] = -t / static_cast<long>(k);
    }
    return CharPoly{ std::move(c) };
}

auto cospectral(const Structure & a, const Structure & b) -> bool
{
    return char_poly(a) == char_poly(b);
}

auto closed_walks(const Structure & g, int k) -> BigInt
{
    auto a = adjacency_matrix(g);
    auto n = a.size();
    IntMatrix power(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0 ; i < n ; ++i)
        power[i][i] = 1;
    for (int i = 0 ; i < k ; ++i)
        power = multiply(power, a);
    return trace(power);
}

auto bipartite_double_cover(const Structure & g) -> Structure
{
    auto graph = g.is_graph() ? g : gaifman(g);
    int n = graph.size();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0 ; u < n ; ++u)
        for (int v : graph.neighbors(u))
            edges.emplace_back(u, v + n);
    return Structure::graph(2 * n, edges);
}

auto double_cover_iso(const Structure & a, const Structure & b) -> bool
{
    return is_isomorphic(bipartite_double_cover(a), bipartite_double_cover(b)).has_value();
}

auto color_refinement(const Structure & g) -> std::vector<std::vector<int>>
{
    auto n = static_cast<std::size_t>(g.size());
    std::vector<std::vector<int>> history{ std::vector<int>(n, 0) };
    std::size_t classes = n ? 1 : 0;
    while (true) {
        const auto & colour = history.back();
        std::vector<std::vector<int>> sig(n);
        for (std::size_t v = 0 ; v < n ; ++v) {
            for (int w : g.neighbors(static_cast<int>(v)))
                sig[v].push_back(colour[static_cast<std::size_t>(w)]);
            std::sort(sig[v].begin(), sig[v].end());
            sig[v].insert(sig[v].begin(), colour[v]);
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(n);
        for (std::size_t v = 0 ; v < n ; ++v)
            next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == classes)
            return history;
        classes = sorted.size();
        history.push_back(std::move(next));
    }
}

auto fractional_iso(const Structure & a, const Structure & b) -> bool
{
    if (a.size() != b.size())
        return false;
    auto ga = a.is_graph() ? a : gaifman(a);
    auto gb = b.is_graph() ? b : gaifman(b);
    auto history = color_refinement(disjoint_union(ga, gb));
    auto n = static_cast<std::size_t>(a.size());
    for (auto & colour : history) {
        std::map<int, long> balance;
        for (std::size_t v = 0 ; v < n ; ++v) {
            ++balance[colour[v]];
            --balance[colour[n + v]];
        }
        for (auto & [_, diff] : balance)
            if (diff != 0)
                return false;
    }
    return true;
}

auto to_string(RowStatus s) -> std::string
{
    switch (s) {
    case RowStatus::agree_true: return "agree-true";
    case RowStatus::agree_false: return "agree-false";
    case RowStatus::inconclusive: return "inconclusive";
    case RowStatus::contradiction: return "contradiction";
    case RowStatus::not_applicable: return "not-applicable";
    }
    return "?";
}

auto RelationReport::table() const -> std::string
{
    std::ostringstream out;
    out << "hom class   oracle          hom-equal  oracle-equal  status\n";
    for (auto & r : rows) {
        out << r.hom_class << std::string(12 - std::min<std::size_t>(11, r.hom_class.size()), ' ')
            << r.oracle << std::string(16 - std::min<std::size_t>(15, r.oracle.size()), ' ')
            << (r.hom_equal ? "yes" : "no ") << "        "
            << (r.oracle_equal ? "yes" : "no ") << "           "
            << to_string(r.status);
        if (! r.note.empty())
            out << "  (" << r.note << ")";
        out << "\n";
    }
    return out.str();
}

auto RelationReport::machine() const -> std::string
{
    std::ostringstream out;
    for (auto & r : rows) {
        out << "row." << r.hom_class << ".oracle=" << r.oracle << "\n";
        out << "row." << r.hom_class << ".hom_equal=" << (r.hom_equal ? "true" : "false") << "\n";
        out << "row." << r.hom_class << ".oracle_equal=" << (r.oracle_equal ? "true" : "false") << "\n";
        out << "row." << r.hom_class << ".status=" << to_string(r.status) << "\n";
    }
    return out.str();
}

namespace
{
    auto classify(bool hom_equal, bool oracle_equal) -> RowStatus
    {
        if (hom_equal && oracle_equal)
            return RowStatus::agree_true;
        if (! hom_equal && ! oracle_equal)
            return RowStatus::agree_false;
        // Truncated hom equality is weaker than full equality, so only this direction is
        // undecided; the other one contradicts the characterisation.
        return hom_equal ? RowStatus::inconclusive : RowStatus::contradiction;
    }
}

auto relation_report(const Structure & a, const Structure & b, int max_size) -> RelationReport
{
    RelationReport report;
    auto bound = "hom families truncated at " + std::to_string(max_size) + " vertices";

    RelationRow cycles{ "cycles", "cospectral", false, false, RowStatus::not_applicable, {} };
    if (a.size() == b.size()) {
        cycles.hom_equal = lovasz_equiv(generators(class_by_name("cycles"), max_size), a, b);
        cycles.oracle_equal = cospectral(a, b);
        cycles.status = classify(cycles.hom_equal, cycles.oracle_equal);
        if (cycles.hom_equal)
            cycles.note = bound;
    }
    else
        cycles.note = "orders differ; isolated vertices change the spectrum but no cycle count";
    report.rows.push_back(cycles);

    RelationRow trees{ "trees", "fractional", false, false, RowStatus::not_applicable, {} };
    trees.hom_equal = lovasz_equiv(generators(class_by_name("trees"), max_size), a, b);
    trees.oracle_equal = fractional_iso(a, b);
    trees.status = classify(trees.hom_equal, trees.oracle_equal);
    if (trees.hom_equal)
        trees.note = bound;
    report.rows.push_back(trees);

    RelationRow bipartite{ "bipartite", "doublecover", false, false, RowStatus::not_applicable, {} };
    bipartite.hom_equal = lovasz_equiv(generators(class_by_name("bipartite"), max_size), a, b);
    bipartite.oracle_equal = double_cover_iso(a, b);
    bipartite.status = classify(bipartite.hom_equal, bipartite.oracle_equal);
    if (bipartite.hom_equal)
        bipartite.note = bound;
    report.rows.push_back(bipartite);
    return report;
}

} // namespace ddc
