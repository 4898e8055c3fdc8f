#include <ddc/game_comonad.hpp>
#include <ddc/error.hpp>

#include <algorithm>
#include <bit>
#include <set>

namespace ddc {

auto ef_size(int k, int n) -> std::size_t
{
    std::size_t total = 0, power = 1;
    for (int j = 1 ; j <= k ; ++j) {
        power *= static_cast<std::size_t>(n);
        total += power;
    }
    return total;
}

auto ef_pack(std::span<const int> sequence, int n) -> std::int64_t
{
    std::int64_t offset = 0, power = 1;
    for (std::size_t j = 1 ; j < sequence.size() ; ++j) {
        power *= n;
        offset += power;
    }
    std::int64_t value = 0;
    for (int x : sequence)
        value = value * n + x;
    return offset + value;
}

auto ef_unpack(std::int64_t index, int n) -> std::vector<int>
{
    std::size_t length = 1;
    std::int64_t power = n;
    while (index >= power) {
        index -= power;
        power *= n;
        ++length;
    }
    std::vector<int> out(length);
    for (std::size_t i = length ; i-- > 0 ; ) {
        out[i] = static_cast<int>(index % n);
        index /= n;
    }
    return out;
}

auto ef_apply(int k, const Structure & a, std::size_t cap) -> Structure
{
    if (k < 1)
        throw InvalidArgument("E_k needs k >= 1");
    int n = a.size();
    auto size = ef_size(k, n);
    if (size > cap)
        throw CapExceeded("E_" + std::to_string(k) + " carrier too large", cap, size);

    std::vector<std::vector<int>> tuples(a.relation_count());
    std::vector<int> image, lengths;
    for (std::int64_t top = 0 ; top < static_cast<std::int64_t>(size) ; ++top) {
        auto s = ef_unpack(top, n);
        int longest = static_cast<int>(s.size());
        for (std::size_t r = 0 ; r < a.relation_count() ; ++r) {
            auto arity = static_cast<std::size_t>(a.arity(r));
            // Every tuple of pairwise comparable sequences is a tuple of prefixes of its
            // longest member; enumerate prefix lengths with maximum |s| to hit each once.
            lengths.assign(arity, 1);
            while (true) {
                if (std::find(lengths.begin(), lengths.end(), longest) != lengths.end()) {
                    image.resize(arity);
                    for (std::size_t p = 0 ; p < arity ; ++p)
                        image[p] = s[static_cast<std::size_t>(lengths[p] - 1)];
                    if (a.contains(r, image))
                        for (std::size_t p = 0 ; p < arity ; ++p)
                            tuples[r].push_back(static_cast<int>(ef_pack(std::span<const int>(s).first(static_cast<std::size_t>(lengths[p])), n)));
                }
                std::size_t p = 0;
                while (p < arity && lengths[p] == longest)
                    lengths[p++] = 1;
                if (p == arity)
                    break;
                ++lengths[p];
            }
        }
    }
    return Structure{ a.signature(), static_cast<int>(size), std::move(tuples) };
}

EFComonad::EFComonad(int k, Caps caps) :
    k_(k),
    caps_(caps)
{
    if (k < 1)
        throw InvalidArgument("E_k needs k >= 1");
}

auto EFComonad::cached(const Structure & y, std::size_t cap) const -> Structure
{
    {
        std::lock_guard lock{ mutex_ };
        auto [lo, hi] = cache_.equal_range(y.hash());
        for (auto it = lo ; it != hi ; ++it)
            if (it->second.first == y) {
                auto size = static_cast<std::size_t>(it->second.second.size());
                if (size > cap)
                    throw CapExceeded("E_" + std::to_string(k_) + " carrier too large", cap, size);
                return it->second.second;
            }
    }
    auto built = ef_apply(k_, y, cap);
    std::lock_guard lock{ mutex_ };
    cache_.emplace(y.hash(), std::pair{ y, built });
    return built;
}

auto EFComonad::name() const -> std::string
{
    return "E" + std::to_string(k_);
}

auto EFComonad::apply(const Structure & b) const -> Structure
{
    return cached(b, caps_.carrier);
}

auto EFComonad::counit(const Structure & b) const -> Homomorphism
{
    auto eb = cached(b, caps_.square);
    std::vector<int> map(static_cast<std::size_t>(eb.size()));
    for (int e = 0 ; e < eb.size() ; ++e)
        map[static_cast<std::size_t>(e)] = ef_unpack(e, b.size()).back();
    return Homomorphism{ eb, b, std::move(map) };
}

auto EFComonad::comult(const Structure & b) const -> Homomorphism
{
    auto eb = cached(b, caps_.square);
    auto eeb = cached(eb, caps_.square);
    std::vector<int> map(static_cast<std::size_t>(eb.size()));
    for (int e = 0 ; e < eb.size() ; ++e) {
        auto c = comult_code(b, e);
        std::vector<int> prefixes(c.begin(), c.end());
        map[static_cast<std::size_t>(e)] = static_cast<int>(ef_pack(prefixes, eb.size()));
    }
    return Homomorphism{ eb, eeb, std::move(map) };
}

auto EFComonad::lift(const Homomorphism & h) const -> Homomorphism
{
    auto from = cached(h.source(), caps_.square);
    auto to = cached(h.target(), caps_.square);
    std::vector<int> map(static_cast<std::size_t>(from.size()));
    for (int e = 0 ; e < from.size() ; ++e) {
        auto s = ef_unpack(e, h.source().size());
        for (int & x : s)
            x = h(x);
        map[static_cast<std::size_t>(e)] = static_cast<int>(ef_pack(s, h.target().size()));
    }
    return Homomorphism{ from, to, std::move(map) };
}

auto EFComonad::code(const Structure & y, int e) const -> ElementCode
{
    auto s = ef_unpack(e, y.size());
    return ElementCode(s.begin(), s.end());
}

auto EFComonad::lift_code(const Homomorphism & h, int e) const -> ElementCode
{
    ElementCode out;
    for (int x : ef_unpack(e, h.source().size()))
        out.push_back(h(x));
    return out;
}

auto EFComonad::map_code(const Homomorphism & h, const ElementCode & code) const -> ElementCode
{
    ElementCode out;
    for (auto x : code)
        out.push_back(h(static_cast<int>(x)));
    return out;
}

auto EFComonad::comult_code(const Structure & y, int e) const -> ElementCode
{
    auto s = ef_unpack(e, y.size());
    ElementCode out;
    for (std::size_t l = 1 ; l <= s.size() ; ++l)
        out.push_back(ef_pack(std::span<const int>(s).first(l), y.size()));
    return out;
}

auto EFComonad::element_of(const Structure & y, const ElementCode & code) const -> int
{
    if (code.empty() || code.size() > static_cast<std::size_t>(k_))
        return -1;
    std::vector<int> s;
    for (auto x : code) {
        if (x < 0 || x >= y.size())
            return -1;
        s.push_back(static_cast<int>(x));
    }
    return static_cast<int>(ef_pack(s, y.size()));
}

auto forest_depth(const ForestCover & cover) -> int
{
    int deepest = 0;
    for (std::size_t x = 0 ; x < cover.parent.size() ; ++x) {
        int depth = 0;
        for (int v = static_cast<int>(x) ; v != -1 && depth <= static_cast<int>(cover.parent.size()) ; v = cover.parent[static_cast<std::size_t>(v)])
            ++depth;
        deepest = std::max(deepest, depth);
    }
    return deepest;
}

void validate_forest_cover(const ForestCover & cover, int k)
{
    const auto & a = cover.structure;
    auto n = static_cast<std::size_t>(a.size());
    if (cover.parent.size() != n)
        throw InvalidArgument("forest cover: parent vector length differs from the universe size");
    for (std::size_t x = 0 ; x < n ; ++x) {
        int p = cover.parent[x];
        if (p < -1 || p >= a.size() || p == static_cast<int>(x))
            throw InvalidArgument("forest cover: invalid parent of element " + std::to_string(x));
    }
    for (std::size_t x = 0 ; x < n ; ++x) {
        std::size_t steps = 0;
        for (int v = static_cast<int>(x) ; v != -1 ; v = cover.parent[static_cast<std::size_t>(v)])
            if (++steps > n)
                throw InvalidArgument("forest cover: parent relation has a cycle through element " + std::to_string(x));
    }
    if (forest_depth(cover) > k)
        throw InvalidArgument("forest cover: depth " + std::to_string(forest_depth(cover)) + " exceeds " + std::to_string(k));

    auto ancestor = [&] (int u, int v) {
        for (int w = v ; w != -1 ; w = cover.parent[static_cast<std::size_t>(w)])
            if (w == u)
                return true;
        return false;
    };
    for (int u = 0 ; u < a.size() ; ++u)
        for (int v : a.neighbors(u))
            if (! ancestor(u, v) && ! ancestor(v, u))
                throw InvalidArgument("forest cover: related elements " + std::to_string(u) + " and " + std::to_string(v)
                                      + " are not ancestor and descendant");
}

auto ef_coalgebra_from_forest(const EFComonad & e, const ForestCover & cover) -> Coalgebra
{
    validate_forest_cover(cover, e.k());
    const auto & a = cover.structure;
    std::vector<int> alpha(static_cast<std::size_t>(a.size()));
    for (int x = 0 ; x < a.size() ; ++x) {
        std::vector<int> path;
        for (int v = x ; v != -1 ; v = cover.parent[static_cast<std::size_t>(v)])
            path.push_back(v);
        std::reverse(path.begin(), path.end());
        alpha[static_cast<std::size_t>(x)] = static_cast<int>(ef_pack(path, a.size()));
    }
    return Coalgebra{ a, Homomorphism{ a, e.apply(a), std::move(alpha) } };
}

namespace
{
    class CoverSearch
    {
    public:
        CoverSearch(const Structure & a) : a_(a), parent_(static_cast<std::size_t>(a.size()), -1)
        {
            if (a.size() > 64)
                throw OutOfRange("forest cover search supports at most 64 elements");
            for (int v = 0 ; v < a.size() ; ++v) {
                std::uint64_t row = 0;
                for (int w : a.neighbors(v))
                    row |= std::uint64_t{ 1 } << w;
                adj_.push_back(row);
            }
        }

        auto cover(std::uint64_t set, int budget, int parent) -> bool
        {
            if (set == 0)
                return true;
            if (budget == 0)
                return false;
            if (failed_.count({ set, budget }))
                return false;
            for (auto part : split(set)) {
                bool placed = false;
                for (std::uint64_t rest = part ; rest ; rest &= rest - 1) {
                    int root = std::countr_zero(rest);
                    parent_[static_cast<std::size_t>(root)] = parent;
                    if (cover(part & ~(std::uint64_t{ 1 } << root), budget - 1, root)) {
                        placed = true;
                        break;
                    }
                }
                if (! placed) {
                    failed_.insert({ set, budget });
                    return false;
                }
            }
            return true;
        }

        auto parent() const -> const std::vector<int> & { return parent_; }

    private:
        auto split(std::uint64_t set) const -> std::vector<std::uint64_t>
        {
            std::vector<std::uint64_t> parts;
            while (set) {
                std::uint64_t part = set & -set, frontier = part;
                while (frontier) {
                    int v = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    auto fresh = adj_[static_cast<std::size_t>(v)] & set & ~part;
                    part |= fresh;
                    frontier |= fresh;
                }
                parts.push_back(part);
                set &= ~part;
            }
            return parts;
        }

        const Structure & a_;
        std::vector<std::uint64_t> adj_;
        std::vector<int> parent_;
        std::set<std::pair<std::uint64_t, int>> failed_;
    };
}

auto ef_find_forest_cover(const Structure & a, int k) -> std::optional<ForestCover>
{
    if (k < 1)
        throw InvalidArgument("E_k needs k >= 1");
    CoverSearch search{ a };
    std::uint64_t all = a.size() == 64 ? ~std::uint64_t{ 0 } : (std::uint64_t{ 1 } << a.size()) - 1;
    if (! search.cover(all, k, -1))
        return std::nullopt;
    return ForestCover{ a, search.parent() };
}

auto ef_admits_coalgebra(int k, const Structure & a) -> bool
{
    return ef_find_forest_cover(a, k).has_value();
}

} // namespace ddc
