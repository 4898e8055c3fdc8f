#include <ddc/params.hpp>
#include <ddc/canonical.hpp>
#include <ddc/classes.hpp>
#include <ddc/error.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>

namespace ddc {

auto ExtReal::value() const -> std::int64_t
{
    if (! is_finite())
        throw InvalidArgument("infinite value has no integer representation");
    return value_;
}

auto ExtReal::to_string() const -> std::string
{
    if (is_neg_inf())
        return "-inf";
    if (is_pos_inf())
        return "+inf";
    return std::to_string(value_);
}

auto ExtReal::parse(const std::string & text) -> ExtReal
{
    if (text == "-inf")
        return neg_inf();
    if (text == "+inf" || text == "inf")
        return pos_inf();
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    }
    catch (const std::exception &) {
        throw InvalidArgument("not an extended integer: '" + text + "'");
    }
    if (pos != text.size())
        throw InvalidArgument("not an extended integer: '" + text + "'");
    return ExtReal{ v };
}

namespace
{
    using Mask = std::uint32_t;

    // Adjacency bitmasks of the Gaifman graph, refusing anything above the cap.
    auto adjacency(const Structure & g, int vertex_cap, const char * what) -> std::vector<Mask>
    {
        if (g.size() > vertex_cap || g.size() > 30)
            throw CapExceeded(std::string(what) + " limited by vertex count",
                              static_cast<std::size_t>(std::min(vertex_cap, 30)), static_cast<std::size_t>(g.size()));
        std::vector<Mask> adj(static_cast<std::size_t>(g.size()), 0);
        for (int v = 0 ; v < g.size() ; ++v)
            for (int w : g.neighbors(v))
                adj[static_cast<std::size_t>(v)] |= Mask{ 1 } << w;
        return adj;
    }

    auto component_of(const std::vector<Mask> & adj, Mask set, int start) -> Mask
    {
        Mask part = Mask{ 1 } << start, frontier = part;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            Mask fresh = adj[static_cast<std::size_t>(v)] & set & ~part;
            part |= fresh;
            frontier |= fresh;
        }
        return part;
    }
}

auto tree_depth(const Structure & g, int vertex_cap) -> ExtReal
{
    auto adj = adjacency(g, vertex_cap, "tree-depth");
    if (adj.empty())
        return ExtReal::neg_inf();

    auto full = static_cast<Mask>((std::uint64_t{ 1 } << adj.size()) - 1);
    std::vector<std::int8_t> memo(std::size_t{ 1 } << adj.size(), -1);
    memo[0] = 0;
    auto td = [&] (auto & self, Mask set) -> int {
        auto & slot = memo[set];
        if (slot >= 0)
            return slot;
        Mask first = component_of(adj, set, std::countr_zero(set));
        int best;
        if (first != set) {
            best = self(self, first);
            for (Mask rest = set & ~first ; rest ; ) {
                Mask part = component_of(adj, rest, std::countr_zero(rest));
                best = std::max(best, self(self, part));
                rest &= ~part;
            }
        }
        else {
            best = std::numeric_limits<int>::max();
            for (Mask rest = set ; rest ; rest &= rest - 1)
                best = std::min(best, 1 + self(self, set & ~(rest & -rest)));
        }
        slot = static_cast<std::int8_t>(best);
        return best;
    };
    return ExtReal{ td(td, full) };
}

auto tree_width(const Structure & g, int vertex_cap) -> ExtReal
{
    auto adj = adjacency(g, vertex_cap, "tree-width");
    if (adj.empty())
        return ExtReal::neg_inf();
    auto n = adj.size();

    // |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S.
    auto q = [&] (Mask set, int v) {
        Mask inner = component_of(adj, set | (Mask{ 1 } << v), v);
        Mask reach = 0;
        for (Mask rest = inner ; rest ; rest &= rest - 1)
            reach |= adj[static_cast<std::size_t>(std::countr_zero(rest))];
        return std::popcount(reach & ~set & ~(Mask{ 1 } << v));
    };

    // TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), TW(∅) = -1.
    std::vector<int> tw(std::size_t{ 1 } << n, std::numeric_limits<int>::max());
    tw[0] = -1;
    for (Mask set = 1 ; set < (Mask{ 1 } << n) ; ++set)
        for (Mask rest = set ; rest ; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            Mask without = set & ~(Mask{ 1 } << v);
            tw[set] = std::min(tw[set], std::max(tw[without], q(without, v)));
        }
    return ExtReal{ tw[(Mask{ 1 } << n) - 1] };
}

auto path_width(const Structure & g, int vertex_cap) -> ExtReal
{
    auto adj = adjacency(g, vertex_cap, "path-width");
    if (adj.empty())
        return ExtReal::neg_inf();
    auto n = adj.size();

    // Vertex separation: f(S) = max(|∂S|, min over v in S of f(S - v)), where ∂S are the
    // vertices of S with a neighbour outside S.
    std::vector<int> f(std::size_t{ 1 } << n, std::numeric_limits<int>::max());
    f[0] = 0;
    for (Mask set = 1 ; set < (Mask{ 1 } << n) ; ++set) {
        int boundary = 0;
        for (Mask rest = set ; rest ; rest &= rest - 1)
            if (adj[static_cast<std::size_t>(std::countr_zero(rest))] & ~set)
                ++boundary;
        int best = std::numeric_limits<int>::max();
        for (Mask rest = set ; rest ; rest &= rest - 1)
            best = std::min(best, f[set & ~(rest & -rest)]);
        f[set] = std::max(boundary, best);
    }
    return ExtReal{ f[(Mask{ 1 } << n) - 1] };
}

auto max_degree(const Structure & g) -> ExtReal
{
    if (g.size() == 0)
        return ExtReal::neg_inf();
    int best = 0;
    for (int v = 0 ; v < g.size() ; ++v)
        best = std::max(best, g.degree(v));
    return ExtReal{ best };
}

auto clique_number(const Structure & g, int vertex_cap) -> ExtReal
{
    auto adj = adjacency(g, vertex_cap, "clique number");
    if (adj.empty())
        return ExtReal::neg_inf();
    int best = 0;
    auto grow = [&] (auto & self, Mask clique, Mask candidates) -> void {
        best = std::max(best, std::popcount(clique));
        for (Mask rest = candidates ; rest ; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            // only extend with higher vertices so each clique is built once
            Mask higher = rest & ~(rest & -rest);
            self(self, clique | (Mask{ 1 } << v), higher & adj[static_cast<std::size_t>(v)]);
        }
    };
    grow(grow, 0, (Mask{ 1 } << adj.size()) - 1);
    return ExtReal{ best };
}

auto chromatic_number(const Structure & g, int vertex_cap) -> ExtReal
{
    auto adj = adjacency(g, vertex_cap, "chromatic number");
    if (adj.empty())
        return ExtReal::neg_inf();
    auto n = static_cast<int>(adj.size());
    std::vector<int> colour(adj.size(), -1);

    auto colourable = [&] (auto & self, int v, int k) -> bool {
        if (v == n)
            return true;
        int used = 0;
        for (int w = 0 ; w < v ; ++w)
            used = std::max(used, colour[static_cast<std::size_t>(w)] + 1);
        // a fresh colour is only tried once, which removes colour-permutation symmetry
        for (int c = 0 ; c < std::min(k, used + 1) ; ++c) {
            bool clash = false;
            for (Mask nb = adj[static_cast<std::size_t>(v)] ; nb && ! clash ; nb &= nb - 1) {
                int w = std::countr_zero(nb);
                clash = w < v && colour[static_cast<std::size_t>(w)] == c;
            }
            if (clash)
                continue;
            colour[static_cast<std::size_t>(v)] = c;
            if (self(self, v + 1, k))
                return true;
        }
        colour[static_cast<std::size_t>(v)] = -1;
        return false;
    };
    for (int k = 1 ; ; ++k)
        if (colourable(colourable, 0, k))
            return ExtReal{ k };
}

auto girth(const Structure & g) -> ExtReal
{
    auto n = static_cast<std::size_t>(g.size());
    int best = std::numeric_limits<int>::max();
    for (int s = 0 ; s < g.size() ; ++s) {
        std::vector<int> dist(n, -1), parent(n, -1);
        std::queue<int> queue;
        dist[static_cast<std::size_t>(s)] = 0;
        queue.push(s);
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop();
            for (int w : g.neighbors(v)) {
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    queue.push(w);
                }
                else if (parent[static_cast<std::size_t>(v)] != w)
                    best = std::min(best, dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(w)] + 1);
            }
        }
    }
    if (best == std::numeric_limits<int>::max())
        return ExtReal::pos_inf();
    return ExtReal{ best };
}

namespace
{
    auto plus_one(ExtReal v) -> ExtReal
    {
        return v.is_finite() ? ExtReal{ v.value() + 1 } : v;
    }
}

auto parameter_names() -> std::vector<std::string>
{
    return { "td", "tw", "tw+1", "pw", "pw+1", "maxdeg", "clique", "chromatic", "girth" };
}

auto parameter_by_name(const std::string & name) -> Parameter
{
    if (name == "td")
        return { name, [] (const Structure & g) { return tree_depth(g); } };
    if (name == "tw")
        return { name, [] (const Structure & g) { return tree_width(g); } };
    if (name == "tw+1")
        return { name, [] (const Structure & g) { return plus_one(tree_width(g)); } };
    if (name == "pw")
        return { name, [] (const Structure & g) { return path_width(g); } };
    if (name == "pw+1")
        return { name, [] (const Structure & g) { return plus_one(path_width(g)); } };
    if (name == "maxdeg")
        return { name, [] (const Structure & g) { return max_degree(g); } };
    if (name == "clique")
        return { name, [] (const Structure & g) { return clique_number(g); } };
    if (name == "chromatic")
        return { name, [] (const Structure & g) { return chromatic_number(g); } };
    if (name == "girth")
        return { name, [] (const Structure & g) { return girth(g); } };

    std::string valid;
    for (auto & n : parameter_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown parameter '" + name + "'; valid parameters: " + valid);
}

auto is_standard_on(const Parameter & param, const std::vector<Structure> & corpus) -> StandardnessReport
{
    StandardnessReport report;
    std::vector<ExtReal> values;
    for (auto & g : corpus)
        values.push_back(param.eval(g));
    for (std::size_t i = 0 ; i < corpus.size() ; ++i)
        for (std::size_t j = 0 ; j < corpus.size() ; ++j) {
            ++report.pairs_checked;
            auto joint = param.eval(disjoint_union(corpus[i], corpus[j]));
            auto expected = std::max(values[i], values[j]);
            if (joint != expected) {
                report.passed = false;
                report.violations.push_back(param.name + "(" + graph_name(corpus[i]) + " + " + graph_name(corpus[j]) + ") = "
                                            + joint.to_string() + " but the maximum is " + expected.to_string());
            }
        }
    return report;
}

auto graded_family(const Parameter & param, int max_size, int k_min, int k_max) -> GradedFamily
{
    if (max_size < 0 || max_size > max_generator_size)
        throw OutOfRange("graded families support generators of 0.." + std::to_string(max_generator_size) + " vertices");

    std::vector<std::pair<Structure, ExtReal>> graded;
    for (int n = 1 ; n <= max_size ; ++n)
        for (auto & g : connected_graphs(n))
            graded.emplace_back(g, param.eval(g));

    auto grade = [&] (ExtReal k) {
        std::vector<Structure> members;
        for (auto & [g, v] : graded)
            if (v <= k)
                members.push_back(g);
        return GeneratorFamily{ Signature::graph(), std::move(members) };
    };

    GradedFamily gf{ param.name, max_size, {} };
    gf.grades.emplace(ExtReal::neg_inf(), grade(ExtReal::neg_inf()));
    for (int k = k_min ; k <= k_max ; ++k)
        gf.grades.emplace(ExtReal{ k }, grade(ExtReal{ k }));
    gf.grades.emplace(ExtReal::pos_inf(), grade(ExtReal::pos_inf()));
    return gf;
}

auto coalgebra_number(const GradedFamily & gf, const Structure & g) -> CoalgebraNumber
{
    for (auto & c : components(g).components)
        if (c.size() > gf.max_size)
            throw OutOfRange("component with " + std::to_string(c.size()) + " vertices exceeds the generator bound "
                             + std::to_string(gf.max_size));

    // A density coalgebra exists exactly when every component is isomorphic to a
    // generator; coalgebra_by_decomposition builds it from that classification.
    for (auto & [k, family] : gf.grades) {
        auto classes = classify_components(family, g);
        if (std::all_of(classes.begin(), classes.end(), [] (auto & c) { return c.has_value(); })) {
            CoalgebraNumber out{ k, {} };
            for (auto & c : classes)
                out.witnesses.push_back(family.name(*c));
            return out;
        }
    }
    return CoalgebraNumber{ ExtReal::pos_inf(), {} };
}

} // namespace ddc
