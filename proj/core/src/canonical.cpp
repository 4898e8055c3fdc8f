#include <ddc/canonical.hpp>
#include <ddc/error.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>

namespace ddc {

namespace
{
    using Rows = std::vector<std::uint64_t>;

    void refine(const Rows & adj, std::vector<int> & colour)
    {
        auto n = colour.size();
        std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
        std::vector<std::vector<int>> sig(n);
        while (true) {
            for (std::size_t v = 0 ; v < n ; ++v) {
                sig[v].assign(1, colour[v]);
                for (std::size_t w = 0 ; w < n ; ++w)
                    if (adj[v] >> w & 1)
                        sig[v].push_back(colour[w]);
                std::sort(sig[v].begin() + 1, sig[v].end());
            }
            auto sorted = sig;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            for (std::size_t v = 0 ; v < n ; ++v)
                colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
            if (sorted.size() == classes)
                return;
            classes = sorted.size();
        }
    }

    struct Search
    {
        const Rows & adj;
        Rows best;
        std::vector<int> best_labeling;

        void leaf(const std::vector<int> & colour)
        {
            Rows rows(adj.size(), 0);
            for (std::size_t v = 0 ; v < adj.size() ; ++v)
                for (std::size_t w = 0 ; w < adj.size() ; ++w)
                    if (adj[v] >> w & 1)
                        rows[static_cast<std::size_t>(colour[v])] |= std::uint64_t{ 1 } << colour[w];
            if (best_labeling.empty() || rows > best) {
                best = std::move(rows);
                best_labeling = colour;
            }
        }

        void run(std::vector<int> colour)
        {
            refine(adj, colour);
            auto n = colour.size();
            std::vector<int> count(n, 0);
            for (int c : colour)
                ++count[static_cast<std::size_t>(c)];

            int cell = -1;
            for (std::size_t c = 0 ; c < n ; ++c)
                if (count[c] > 1) {
                    cell = static_cast<int>(c);
                    break;
                }
            if (cell == -1) {
                leaf(colour);
                return;
            }

            for (std::size_t v = 0 ; v < n ; ++v) {
                if (colour[v] != cell)
                    continue;
                std::vector<int> next(n);
                for (std::size_t w = 0 ; w < n ; ++w)
                    next[w] = 2 * colour[w] + 1;
                next[v] = 2 * cell;
                run(std::move(next));
            }
        }
    };

    auto rows_of(const Structure & g) -> Rows
    {
        if (! g.is_graph())
            throw InvalidArgument("canonical labelling is defined for graphs only");
        if (g.size() > 64)
            throw OutOfRange("canonical labelling supports at most 64 vertices");
        Rows adj(static_cast<std::size_t>(g.size()), 0);
        for (int v = 0 ; v < g.size() ; ++v)
            for (int w : g.neighbors(v))
                adj[static_cast<std::size_t>(v)] |= std::uint64_t{ 1 } << w;
        return adj;
    }

    auto graph_from_rows(const Rows & rows) -> Structure
    {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0 ; i < rows.size() ; ++i)
            for (std::size_t j = i + 1 ; j < rows.size() ; ++j)
                if (rows[i] >> j & 1)
                    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        return Structure::graph(static_cast<int>(rows.size()), edges);
    }
}

auto canonical_form(const Structure & g) -> CanonicalForm
{
    auto adj = rows_of(g);
    if (adj.empty())
        return {};
    Search search{ adj, {}, {} };
    search.run(std::vector<int>(adj.size(), 0));
    return CanonicalForm{ std::move(search.best_labeling), std::move(search.best) };
}

auto canonical_graph(const Structure & g) -> Structure
{
    return graph_from_rows(canonical_form(g).rows);
}

auto canonical_key(const Structure & g) -> std::string
{
    return serialize(canonical_graph(g));
}

auto graph_name(const Structure & g) -> std::string
{
    auto hex = [] (std::uint64_t h) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return std::string(buf, 8);
    };
    if (! g.is_graph())
        return "S" + std::to_string(g.size()) + "_" + hex(fnv1a64(serialize(g)));
    if (g.size() == 0)
        return "empty";

    auto parts = components(g);
    if (parts.components.size() > 1) {
        std::string out;
        for (auto & c : parts.components)
            out += (out.empty() ? "" : "+") + graph_name(c);
        return out;
    }

    auto n = static_cast<std::size_t>(g.size());
    auto m = g.edge_count();
    std::size_t max_degree = 0;
    bool two_regular = true;
    for (int v = 0 ; v < g.size() ; ++v) {
        max_degree = std::max(max_degree, g.neighbors(v).size());
        two_regular = two_regular && g.degree(v) == 2;
    }
    auto order = std::to_string(n);
    if (m == n * (n - 1) / 2)
        return "K" + order;
    if (two_regular)
        return "C" + order;
    if (m + 1 == n && max_degree <= 2)
        return "P" + order;
    if (m + 1 == n && max_degree + 1 == n)
        return "K1," + std::to_string(n - 1);
    if (n > 64)
        return "G" + order + "_" + hex(fnv1a64(serialize(g)));
    return "G" + order + "_" + hex(fnv1a64(canonical_key(g)));
}

auto all_graphs(int n) -> const std::vector<Structure> &
{
    if (n < 0 || n > max_enumerated_order)
        throw OutOfRange("graph enumeration supports 0.." + std::to_string(max_enumerated_order) + " vertices");

    static std::mutex mutex;
    static std::map<int, std::vector<Structure>> cache;
    std::lock_guard lock{ mutex };

    for (int order = 0 ; order <= n ; ++order) {
        if (cache.count(order))
            continue;
        if (order == 0) {
            cache[0] = { Structure::graph(0, {}) };
            continue;
        }

        // Every graph on `order` vertices is a graph on one vertex fewer plus a new
        // vertex with some neighbourhood.
        std::set<Rows> seen;
        for (auto & smaller : cache[order - 1]) {
            auto base = rows_of(smaller);
            base.push_back(0);
            auto fresh = static_cast<std::size_t>(order - 1);
            for (std::uint64_t mask = 0 ; mask < (std::uint64_t{ 1 } << (order - 1)) ; ++mask) {
                auto rows = base;
                rows[fresh] = mask;
                for (std::size_t v = 0 ; v < fresh ; ++v)
                    if (mask >> v & 1)
                        rows[v] |= std::uint64_t{ 1 } << fresh;
                Search search{ rows, {}, {} };
                search.run(std::vector<int>(rows.size(), 0));
                seen.insert(std::move(search.best));
            }
        }

        std::vector<std::pair<std::string, Structure>> keyed;
        for (auto & rows : seen) {
            auto g = graph_from_rows(rows);
            keyed.emplace_back(serialize(g), g);
        }
        std::sort(keyed.begin(), keyed.end(), [] (auto & a, auto & b) { return a.first < b.first; });
        auto & out = cache[order];
        for (auto & [_, g] : keyed)
            out.push_back(g);
    }
    return cache[n];
}

auto all_graphs_up_to(int max_n) -> std::vector<Structure>
{
    std::vector<Structure> out;
    for (int n = 0 ; n <= max_n ; ++n) {
        auto & graphs = all_graphs(n);
        out.insert(out.end(), graphs.begin(), graphs.end());
    }
    return out;
}

auto connected_graphs(int n) -> std::vector<Structure>
{
    std::vector<Structure> out;
    for (auto & g : all_graphs(n))
        if (is_connected(g))
            out.push_back(g);
    return out;
}

} // namespace ddc
