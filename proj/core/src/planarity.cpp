#include <ddc/classes.hpp>
#include <ddc/error.hpp>

#include <algorithm>
#include <set>

namespace ddc {

namespace
{
    using Adjacency = std::vector<std::set<int>>;

    // Deletes vertices of degree at most one and smooths degree-two vertices; neither
    // changes planarity.
    auto reduce(Adjacency adj) -> Adjacency
    {
        std::vector<char> alive(adj.size(), 1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0 ; v < adj.size() ; ++v) {
                if (! alive[v] || adj[v].size() > 2)
                    continue;
                std::vector<int> nb(adj[v].begin(), adj[v].end());
                for (int w : nb)
                    adj[static_cast<std::size_t>(w)].erase(static_cast<int>(v));
                adj[v].clear();
                alive[v] = 0;
                if (nb.size() == 2) {
                    adj[static_cast<std::size_t>(nb[0])].insert(nb[1]);
                    adj[static_cast<std::size_t>(nb[1])].insert(nb[0]);
                }
                changed = true;
            }
        }

        std::vector<int> index(adj.size(), -1);
        int next = 0;
        for (std::size_t v = 0 ; v < adj.size() ; ++v)
            if (alive[v])
                index[v] = next++;
        Adjacency out(static_cast<std::size_t>(next));
        for (std::size_t v = 0 ; v < adj.size() ; ++v)
            for (int w : adj[v])
                out[static_cast<std::size_t>(index[v])].insert(index[static_cast<std::size_t>(w)]);
        return out;
    }

    class SubdivisionSearch
    {
    public:
        explicit SubdivisionSearch(const Adjacency & adj) : adj_(adj), used_(adj.size(), 0) {}

        // Internally disjoint paths realising every pair, branch vertices excluded from
        // path interiors.
        auto realise(const std::vector<int> & branch, const std::vector<std::pair<int, int>> & pairs) -> bool
        {
            std::fill(used_.begin(), used_.end(), 0);
            for (int b : branch)
                used_[static_cast<std::size_t>(b)] = 1;
            return route(pairs, 0);
        }

    private:
        auto route(const std::vector<std::pair<int, int>> & pairs, std::size_t i) -> bool
        {
            if (i == pairs.size())
                return true;
            auto [s, t] = pairs[i];
            return walk(s, t, pairs, i);
        }

        // Extends a path at v towards t; on reaching t continues with the next pair.
        auto walk(int v, int t, const std::vector<std::pair<int, int>> & pairs, std::size_t i) -> bool
        {
            for (int w : adj_[static_cast<std::size_t>(v)]) {
                if (w == t) {
                    if (route(pairs, i + 1))
                        return true;
                    continue;
                }
                if (used_[static_cast<std::size_t>(w)])
                    continue;
                used_[static_cast<std::size_t>(w)] = 1;
                bool ok = walk(w, t, pairs, i);
                used_[static_cast<std::size_t>(w)] = 0;
                if (ok)
                    return true;
            }
            return false;
        }

        const Adjacency & adj_;
        std::vector<char> used_;
    };

    auto has_k5_subdivision(const Adjacency & adj) -> bool
    {
        std::vector<int> eligible;
        for (std::size_t v = 0 ; v < adj.size() ; ++v)
            if (adj[v].size() >= 4)
                eligible.push_back(static_cast<int>(v));
        if (eligible.size() < 5)
            return false;

        SubdivisionSearch search{ adj };
        std::vector<char> pick(eligible.size(), 0);
        std::fill(pick.begin(), pick.begin() + 5, 1);
        do {
            std::vector<int> branch;
            for (std::size_t i = 0 ; i < pick.size() ; ++i)
                if (pick[i])
                    branch.push_back(eligible[i]);
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t a = 0 ; a < 5 ; ++a)
                for (std::size_t b = a + 1 ; b < 5 ; ++b)
                    pairs.emplace_back(branch[a], branch[b]);
            if (search.realise(branch, pairs))
                return true;
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return false;
    }

    auto has_k33_subdivision(const Adjacency & adj) -> bool
    {
        std::vector<int> eligible;
        for (std::size_t v = 0 ; v < adj.size() ; ++v)
            if (adj[v].size() >= 3)
                eligible.push_back(static_cast<int>(v));
        if (eligible.size() < 6)
            return false;

        SubdivisionSearch search{ adj };
        std::vector<char> pick(eligible.size(), 0);
        std::fill(pick.begin(), pick.begin() + 6, 1);
        do {
            std::vector<int> six;
            for (std::size_t i = 0 ; i < pick.size() ; ++i)
                if (pick[i])
                    six.push_back(eligible[i]);
            // six[0] is always on the left; choose its two partners
            for (std::size_t x = 1 ; x < 6 ; ++x)
                for (std::size_t y = x + 1 ; y < 6 ; ++y) {
                    std::vector<int> left{ six[0], six[x], six[y] }, right;
                    for (std::size_t i = 1 ; i < 6 ; ++i)
                        if (i != x && i != y)
                            right.push_back(six[i]);
                    std::vector<std::pair<int, int>> pairs;
                    for (int l : left)
                        for (int r : right)
                            pairs.emplace_back(l, r);
                    if (search.realise(six, pairs))
                        return true;
                }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return false;
    }
}

auto is_planar(const Structure & g) -> bool
{
    auto graph = g.is_graph() ? g : gaifman(g);
    Adjacency adj(static_cast<std::size_t>(graph.size()));
    for (int v = 0 ; v < graph.size() ; ++v)
        adj[static_cast<std::size_t>(v)].insert(graph.neighbors(v).begin(), graph.neighbors(v).end());

    auto reduced = reduce(std::move(adj));
    auto n = reduced.size();
    if (n <= 4)
        return true;
    std::size_t m = 0;
    for (auto & row : reduced)
        m += row.size();
    m /= 2;
    if (m > 3 * n - 6)
        return false;
    return ! has_k5_subdivision(reduced) && ! has_k33_subdivision(reduced);
}

} // namespace ddc
