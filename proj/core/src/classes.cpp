#include <ddc/classes.hpp>
#include <ddc/canonical.hpp>
#include <ddc/error.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/params.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace ddc {

auto is_bipartite(const Structure & g) -> bool
{
    std::vector<int> side(static_cast<std::size_t>(g.size()), -1);
    for (int s = 0 ; s < g.size() ; ++s) {
        if (side[static_cast<std::size_t>(s)] != -1)
            continue;
        side[static_cast<std::size_t>(s)] = 0;
        std::vector<int> stack{ s };
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                auto & sw = side[static_cast<std::size_t>(w)];
                if (sw == -1) {
                    sw = 1 - side[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                }
                else if (sw == side[static_cast<std::size_t>(v)])
                    return false;
            }
        }
    }
    return true;
}

auto is_core(const Structure & g) -> bool
{
    bool core = true;
    for_each_hom(HomQuery{ g, g, HomMode::hom, std::nullopt }, [&] (std::span<const int> map) {
        std::vector<char> hit(map.size(), 0);
        for (int y : map)
            hit[static_cast<std::size_t>(y)] = 1;
        core = std::all_of(hit.begin(), hit.end(), [] (char c) { return c != 0; });
        return core;
    });
    return core;
}

namespace
{
    auto integer_suffix(const std::string & name, const std::string & prefix) -> std::optional<int>
    {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        auto digits = name.substr(prefix.size());
        if (! std::all_of(digits.begin(), digits.end(), [] (char c) { return c >= '0' && c <= '9'; }) || digits.size() > 6)
            return std::nullopt;
        return std::stoi(digits);
    }

    auto graph_of(const Structure & g) -> Structure
    {
        return g.is_graph() ? g : gaifman(g);
    }
}

auto class_names() -> std::vector<std::string>
{
    return { "cycles", "trees", "paths", "bipartite", "planar", "cores", "td<=K", "tw<K", "pw<K", "maxdeg<=K" };
}

auto class_by_name(const std::string & name) -> ClassSpec
{
    if (name == "cycles")
        return { name, [] (const Structure & g) {
            if (g.size() < 3)
                return false;
            for (int v = 0 ; v < g.size() ; ++v)
                if (g.degree(v) != 2)
                    return false;
            return true;
        }, false };
    if (name == "trees")
        return { name, [] (const Structure & g) {
            return g.edge_count() + 1 == static_cast<std::size_t>(g.size());
        }, true };
    if (name == "paths")
        return { name, [] (const Structure & g) {
            if (g.edge_count() + 1 != static_cast<std::size_t>(g.size()))
                return false;
            for (int v = 0 ; v < g.size() ; ++v)
                if (g.degree(v) > 2)
                    return false;
            return true;
        }, true };
    if (name == "bipartite")
        return { name, [] (const Structure & g) { return is_bipartite(g); }, true };
    if (name == "planar")
        return { name, [] (const Structure & g) { return is_planar(g); }, true };
    if (name == "cores")
        return { name, [] (const Structure & g) { return is_core(g); }, false };
    if (auto k = integer_suffix(name, "td<="))
        return { name, [k = *k] (const Structure & g) { return tree_depth(g) <= ExtReal{ k }; }, true };
    if (auto k = integer_suffix(name, "tw<"))
        return { name, [k = *k] (const Structure & g) { return tree_width(g) < ExtReal{ k }; }, true };
    if (auto k = integer_suffix(name, "pw<"))
        return { name, [k = *k] (const Structure & g) { return path_width(g) < ExtReal{ k }; }, true };
    if (auto k = integer_suffix(name, "maxdeg<="))
        return { name, [k = *k] (const Structure & g) { return max_degree(g) <= ExtReal{ k }; }, true };

    std::string valid;
    for (auto & n : class_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown class '" + name + "'; valid classes: " + valid + " (K a non-negative integer)");
}

auto generators(const ClassSpec & spec, int max_size) -> GeneratorFamily
{
    if (max_size < 0 || max_size > max_generator_size)
        throw OutOfRange("generator enumeration supports 0.." + std::to_string(max_generator_size) + " vertices");
    std::vector<Structure> members;
    std::vector<std::string> names;
    for (int n = 1 ; n <= max_size ; ++n)
        for (auto & g : connected_graphs(n))
            if (spec.connected_predicate(g)) {
                members.push_back(g);
                // within the cycle family the triangle reads better as C3
                names.push_back(spec.name == "cycles" ? "C" + std::to_string(n) : graph_name(g));
            }
    return GeneratorFamily{ Signature::graph(), std::move(members), true, std::move(names) };
}

auto membership(const ClassSpec & spec, const Structure & g) -> bool
{
    for (auto & c : components(graph_of(g)).components)
        if (! spec.connected_predicate(c))
            return false;
    return true;
}

namespace
{
    // Isomorphism-class lookup for snapshot checks: canonical keys for small graphs,
    // pairwise tests otherwise.
    class Catalogue
    {
    public:
        void add(const Structure & s)
        {
            if (keyed(s))
                keys_.insert(canonical_key(s));
            else
                others_.push_back(s);
        }

        auto contains(const Structure & s) const -> bool
        {
            if (keyed(s))
                return keys_.count(canonical_key(s)) > 0;
            return std::any_of(others_.begin(), others_.end(), [&] (auto & o) {
                return o.signature() == s.signature() && is_isomorphic(o, s).has_value();
            });
        }

    private:
        static auto keyed(const Structure & s) -> bool { return s.is_graph() && s.size() <= 64; }

        std::set<std::string> keys_;
        std::vector<Structure> others_;
    };
}

auto component_based_snapshot_check(const std::vector<Structure> & family) -> SnapshotReport
{
    SnapshotReport report;
    Catalogue members;
    int largest = 0;
    for (auto & s : family) {
        members.add(s);
        largest = std::max(largest, s.size());
    }

    for (auto & s : family) {
        // reversing the labels gives a copy that must be recognised as a member
        std::vector<int> perm(static_cast<std::size_t>(s.size()));
        for (int i = 0 ; i < s.size() ; ++i)
            perm[static_cast<std::size_t>(i)] = s.size() - 1 - i;
        if (! members.contains(relabel(s, perm))) {
            report.iso_closed = false;
            report.violations.push_back("relabelled copy of " + graph_name(s) + " is missing");
        }

        auto parts = components(s);
        if (parts.components.size() > 1)
            for (auto & c : parts.components)
                if (! members.contains(c)) {
                    report.summand_closed = false;
                    report.violations.push_back("summand " + graph_name(c) + " of " + graph_name(s) + " is missing");
                }
    }

    for (std::size_t i = 0 ; i < family.size() ; ++i)
        for (std::size_t j = i ; j < family.size() ; ++j) {
            if (family[i].size() + family[j].size() > largest || family[i].signature() != family[j].signature())
                continue;
            auto sum = disjoint_union(family[i], family[j]);
            if (! members.contains(sum)) {
                report.coproduct_closed = false;
                report.violations.push_back("coproduct " + graph_name(family[i]) + " + " + graph_name(family[j]) + " is missing");
            }
        }
    return report;
}

auto subdivided_clique(int n, int p) -> Structure
{
    if (n < 1 || p < 0)
        throw InvalidArgument("subdivided_clique needs n >= 1 and p >= 0");
    int size = n;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0 ; u < n ; ++u)
        for (int v = u + 1 ; v < n ; ++v)
            edges.emplace_back(u, v);
    for (int round = 0 ; round < p ; ++round) {
        std::vector<std::pair<int, int>> next;
        for (auto [u, v] : edges) {
            int w = size++;
            next.emplace_back(u, w);
            next.emplace_back(w, v);
        }
        edges = std::move(next);
    }
    return Structure::graph(size, edges);
}

} // namespace ddc
