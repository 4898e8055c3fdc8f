#include <ddc/homsearch.hpp>
#include <ddc/error.hpp>

#include <algorithm>

namespace ddc {

namespace
{
    class Searcher
    {
    public:
        Searcher(const Structure & s, const Structure & t, HomMode mode) :
            s_(s), t_(t), injective_(mode != HomMode::hom), n_(s.size())
        {
            plan();
            map_.assign(static_cast<std::size_t>(n_), -1);
            used_.assign(static_cast<std::size_t>(t_.size()), 0);
        }

        // Calls leaf(map) for every solution; stops when leaf returns false.
        template <typename Leaf>
        auto run(Leaf && leaf) -> bool
        {
            return search(0, leaf);
        }

        auto count() -> BigInt
        {
            Counter total;
            if (n_ == 0) {
                total.add(std::uint64_t{ 1 });
                return total.value();
            }
            count_from(0, total);
            return total.value();
        }

    private:
        struct Seed
        {
            std::size_t r;
            std::size_t id;
            int pv;
            int pu;
            int u;
        };

        void plan()
        {
            auto n = static_cast<std::size_t>(n_);
            pos_.assign(n, -1);
            std::vector<int> placed_neighbours(n, 0);

            // Grow connected regions first; within them prefer high degree, then low id.
            for (std::size_t step = 0 ; step < n ; ++step) {
                int best = -1;
                for (int v = 0 ; v < n_ ; ++v) {
                    if (pos_[static_cast<std::size_t>(v)] != -1)
                        continue;
                    if (best == -1)
                        best = v;
                    else {
                        auto key = [&] (int x) {
                            return std::pair{ placed_neighbours[static_cast<std::size_t>(x)] > 0, s_.degree(x) };
                        };
                        if (key(v) > key(best))
                            best = v;
                    }
                }
                pos_[static_cast<std::size_t>(best)] = static_cast<int>(step);
                order_.push_back(best);
                for (int w : s_.neighbors(best))
                    ++placed_neighbours[static_cast<std::size_t>(w)];
            }

            earlier_.assign(n, {});
            anchor_.assign(n, -1);
            for (std::size_t i = 0 ; i < n ; ++i) {
                int v = order_[i];
                for (int w : s_.neighbors(v))
                    if (pos_[static_cast<std::size_t>(w)] < static_cast<int>(i))
                        earlier_[i].push_back(w);
                if (! earlier_[i].empty())
                    anchor_[i] = *std::min_element(earlier_[i].begin(), earlier_[i].end(), [&] (int a, int b) {
                        return pos_[static_cast<std::size_t>(a)] < pos_[static_cast<std::size_t>(b)];
                    });
            }

            if (s_.is_graph())
                return;

            checks_.assign(n, {});
            seeds_.assign(n, std::nullopt);
            for (std::size_t r = 0 ; r < s_.relation_count() ; ++r)
                for (std::size_t id = 0 ; id < s_.tuple_count(r) ; ++id) {
                    auto tup = s_.tuple(r, id);
                    int last = 0;
                    for (int x : tup)
                        last = std::max(last, pos_[static_cast<std::size_t>(x)]);
                    checks_[static_cast<std::size_t>(last)].emplace_back(r, id);
                }
            for (std::size_t i = 0 ; i < n ; ++i) {
                int v = order_[i];
                for (auto [r, id] : checks_[i]) {
                    auto tup = s_.tuple(r, id);
                    for (std::size_t pu = 0 ; pu < tup.size() && ! seeds_[i] ; ++pu)
                        if (tup[pu] != v)
                            for (std::size_t pv = 0 ; pv < tup.size() ; ++pv)
                                if (tup[pv] == v) {
                                    seeds_[i] = Seed{ r, id, static_cast<int>(pv), static_cast<int>(pu), tup[pu] };
                                    break;
                                }
                    if (seeds_[i])
                        break;
                }
            }
        }

        auto admissible(std::size_t i, int c) -> bool
        {
            if (injective_ && used_[static_cast<std::size_t>(c)])
                return false;
            if (s_.is_graph()) {
                for (int w : earlier_[i])
                    if (w != anchor_[i] && ! t_.adjacent(map_[static_cast<std::size_t>(w)], c))
                        return false;
                return true;
            }
            map_[static_cast<std::size_t>(order_[i])] = c;
            for (auto [r, id] : checks_[i]) {
                auto tup = s_.tuple(r, id);
                image_.resize(tup.size());
                for (std::size_t p = 0 ; p < tup.size() ; ++p)
                    image_[p] = map_[static_cast<std::size_t>(tup[p])];
                if (! t_.contains(r, image_)) {
                    map_[static_cast<std::size_t>(order_[i])] = -1;
                    return false;
                }
            }
            map_[static_cast<std::size_t>(order_[i])] = -1;
            return true;
        }

        // Calls f(c) for every admissible candidate c of position i; f returns false to stop.
        template <typename F>
        auto candidates(std::size_t i, F && f) -> bool
        {
            if (s_.is_graph()) {
                if (anchor_[i] >= 0) {
                    for (int c : t_.neighbors(map_[static_cast<std::size_t>(anchor_[i])]))
                        if (admissible(i, c) && ! f(c))
                            return false;
                    return true;
                }
            }
            else if (seeds_[i]) {
                auto & seed = *seeds_[i];
                int image_u = map_[static_cast<std::size_t>(seed.u)];
                std::vector<int> pool;
                for (auto id : t_.incident(seed.r, image_u)) {
                    auto tup = t_.tuple(seed.r, id);
                    if (tup[static_cast<std::size_t>(seed.pu)] == image_u)
                        pool.push_back(tup[static_cast<std::size_t>(seed.pv)]);
                }
                std::sort(pool.begin(), pool.end());
                pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
                for (int c : pool)
                    if (admissible(i, c) && ! f(c))
                        return false;
                return true;
            }
            for (int c = 0 ; c < t_.size() ; ++c)
                if (admissible(i, c) && ! f(c))
                    return false;
            return true;
        }

        template <typename Leaf>
        auto search(std::size_t i, Leaf & leaf) -> bool
        {
            if (i == static_cast<std::size_t>(n_))
                return leaf(std::span<const int>(map_));
            int v = order_[i];
            return candidates(i, [&] (int c) {
                map_[static_cast<std::size_t>(v)] = c;
                used_[static_cast<std::size_t>(c)] = 1;
                bool go_on = search(i + 1, leaf);
                used_[static_cast<std::size_t>(c)] = 0;
                map_[static_cast<std::size_t>(v)] = -1;
                return go_on;
            });
        }

        void count_from(std::size_t i, Counter & total)
        {
            int v = order_[i];
            if (i + 1 == static_cast<std::size_t>(n_)) {
                std::uint64_t here = 0;
                candidates(i, [&] (int) { ++here; return true; });
                total.add(here);
                return;
            }
            candidates(i, [&] (int c) {
                map_[static_cast<std::size_t>(v)] = c;
                used_[static_cast<std::size_t>(c)] = 1;
                count_from(i + 1, total);
                used_[static_cast<std::size_t>(c)] = 0;
                map_[static_cast<std::size_t>(v)] = -1;
                return true;
            });
        }

        const Structure & s_;
        const Structure & t_;
        bool injective_;
        int n_;
        std::vector<int> order_, pos_, anchor_;
        std::vector<std::vector<int>> earlier_;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks_;
        std::vector<std::optional<Seed>> seeds_;
        std::vector<int> map_;
        std::vector<char> used_;
        std::vector<int> image_;
    };

    // False when the mode rules out every map before any search.
    auto feasible(const Structure & s, const Structure & t, HomMode mode) -> bool
    {
        if (s.signature() != t.signature())
            throw SignatureMismatch("homomorphism query between different signatures");
        if (mode == HomMode::hom)
            return s.size() == 0 || t.size() > 0;
        if (s.size() > t.size())
            return false;
        if (mode == HomMode::iso) {
            if (s.size() != t.size())
                return false;
            for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
                if (s.tuple_count(r) != t.tuple_count(r))
                    return false;
        }
        return true;
    }
}

void for_each_hom(const HomQuery & q, const std::function<bool (std::span<const int>)> & visit)
{
    if (! feasible(q.source, q.target, q.mode))
        return;
    Searcher searcher{ q.source, q.target, q.mode };
    searcher.run(visit);
}

auto hom_maps(const HomQuery & q) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> maps;
    for_each_hom(q, [&] (std::span<const int> m) {
        if (q.limit && maps.size() == *q.limit)
            throw CapExceeded("homomorphism enumeration exceeded its limit", *q.limit);
        maps.emplace_back(m.begin(), m.end());
        return true;
    });
    std::sort(maps.begin(), maps.end());
    return maps;
}

auto enumerate_homs(const HomQuery & q) -> std::vector<Homomorphism>
{
    std::vector<Homomorphism> out;
    for (auto & m : hom_maps(q))
        out.emplace_back(q.source, q.target, std::move(m));
    return out;
}

auto count_homs(const Structure & source, const Structure & target, HomMode mode) -> BigInt
{
    if (! feasible(source, target, mode))
        return 0;
    if (mode == HomMode::hom && component_count(source) > 1) {
        // hom(C1 + C2, B) = hom(C1, B) x hom(C2, B)
        BigInt product = 1;
        for (auto & c : components(source).components) {
            product *= Searcher{ c, target, mode }.count();
            if (product == 0)
                break;
        }
        return product;
    }
    return Searcher{ source, target, mode }.count();
}

auto find_hom(const Structure & source, const Structure & target, HomMode mode) -> std::optional<Homomorphism>
{
    std::optional<Homomorphism> found;
    for_each_hom(HomQuery{ source, target, mode, std::nullopt }, [&] (std::span<const int> m) {
        found.emplace(source, target, std::vector<int>(m.begin(), m.end()));
        return false;
    });
    return found;
}

auto exists_hom(const Structure & source, const Structure & target, HomMode mode) -> bool
{
    return find_hom(source, target, mode).has_value();
}

} // namespace ddc
