#include <ddc/structure.hpp>
#include <ddc/error.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ddc {

namespace
{
    auto valid_identifier(std::string_view s) -> bool
    {
        if (s.empty() || ! (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            return false;
        return std::all_of(s.begin(), s.end(), [] (char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    }

    auto mix(std::uint64_t h, std::uint64_t v) -> std::uint64_t
    {
        v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        v ^= v >> 30;
        v *= 0xbf58476d1ce4e5b9ULL;
        v ^= v >> 27;
        v *= 0x94d049bb133111ebULL;
        v ^= v >> 31;
        return h ^ v;
    }

    // Sorts the flat tuple array lexicographically and removes duplicates.
    void sort_unique_tuples(std::vector<int> & flat, int arity)
    {
        auto k = static_cast<std::size_t>(arity);
        std::size_t count = flat.size() / k;
        if (count <= 1)
            return;

        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        auto less = [&] (std::size_t a, std::size_t b) {
            return std::lexicographical_compare(flat.begin() + a * k, flat.begin() + (a + 1) * k,
                                                flat.begin() + b * k, flat.begin() + (b + 1) * k);
        };
        auto equal = [&] (std::size_t a, std::size_t b) {
            return std::equal(flat.begin() + a * k, flat.begin() + (a + 1) * k, flat.begin() + b * k);
        };
        std::sort(order.begin(), order.end(), less);

        std::vector<int> out;
        out.reserve(flat.size());
        for (std::size_t i = 0 ; i < count ; ++i) {
            if (i > 0 && equal(order[i], order[i - 1]))
                continue;
            out.insert(out.end(), flat.begin() + order[i] * k, flat.begin() + (order[i] + 1) * k);
        }
        flat = std::move(out);
    }
}

Signature::Signature(std::vector<RelationSymbol> relations) :
    relations_(std::move(relations))
{
    for (std::size_t i = 0 ; i < relations_.size() ; ++i) {
        if (! valid_identifier(relations_[i].name))
            throw InvalidArgument("invalid relation name '" + relations_[i].name + "'");
        if (relations_[i].arity < 1)
            throw InvalidArgument("relation " + relations_[i].name + " must have positive arity");
        for (std::size_t j = 0 ; j < i ; ++j)
            if (relations_[j].name == relations_[i].name)
                throw InvalidArgument("duplicate relation name '" + relations_[i].name + "'");
    }
}

auto Signature::graph() -> Signature
{
    Signature s{ { RelationSymbol{ "E", 2 } } };
    s.graph_mode_ = true;
    return s;
}

auto Signature::find(std::string_view name) const -> std::optional<std::size_t>
{
    for (std::size_t i = 0 ; i < relations_.size() ; ++i)
        if (relations_[i].name == name)
            return i;
    return std::nullopt;
}

auto Signature::to_string() const -> std::string
{
    if (graph_mode_)
        return "graph";
    std::string out = "signature";
    for (auto & r : relations_)
        out += " " + r.name + "/" + std::to_string(r.arity);
    return out;
}

struct Structure::Data
{
    Signature sig;
    int size = 0;
    std::vector<std::vector<int>> tuples;
    std::vector<std::vector<int>> adjacency;
    std::uint64_t hash = 0;

    mutable std::once_flag gaifman_once;
    mutable std::vector<std::vector<int>> gaifman_adjacency;

    struct Csr
    {
        std::vector<std::uint32_t> offsets;
        std::vector<std::uint32_t> ids;
    };
    mutable std::once_flag incidence_once;
    mutable std::vector<Csr> incidence;
};

Structure::Structure() :
    Structure(build(Signature::graph(), 0, { {} }))
{
}

Structure::Structure(Signature sig, int size, std::vector<std::vector<int>> flat_tuples)
{
    if (size < 0)
        throw InvalidArgument("negative universe size");
    if (flat_tuples.size() != sig.relation_count())
        throw InvalidArgument("tuple lists do not match the signature");

    for (std::size_t r = 0 ; r < sig.relation_count() ; ++r) {
        auto & flat = flat_tuples[r];
        auto k = static_cast<std::size_t>(sig.arity(r));
        if (flat.size() % k != 0)
            throw InvalidArgument("tuple data of relation " + sig.relations()[r].name + " is not a multiple of its arity");
        for (int x : flat)
            if (x < 0 || x >= size)
                throw InvalidArgument("tuple entry " + std::to_string(x) + " outside universe of size " + std::to_string(size));
        if (sig.graph_mode()) {
            std::size_t n = flat.size();
            for (std::size_t i = 0 ; i < n ; i += 2) {
                if (flat[i] == flat[i + 1])
                    throw InvalidArgument("graph has a loop at vertex " + std::to_string(flat[i]));
                flat.push_back(flat[i + 1]);
                flat.push_back(flat[i]);
            }
        }
        sort_unique_tuples(flat, sig.arity(r));
    }

    *this = build(std::move(sig), size, std::move(flat_tuples));
}

auto Structure::assume_normalized(Signature sig, int size, std::vector<std::vector<int>> flat_tuples) -> Structure
{
    return build(std::move(sig), size, std::move(flat_tuples));
}

auto Structure::build(Signature sig, int size, std::vector<std::vector<int>> flat_tuples) -> Structure
{
    auto d = std::make_shared<Data>();
    d->sig = std::move(sig);
    d->size = size;
    d->tuples = std::move(flat_tuples);

    if (d->sig.graph_mode()) {
        d->adjacency.assign(static_cast<std::size_t>(size), {});
        auto & e = d->tuples[0];
        for (std::size_t i = 0 ; i < e.size() ; i += 2)
            d->adjacency[static_cast<std::size_t>(e[i])].push_back(e[i + 1]);
    }

    std::uint64_t h = mix(0, static_cast<std::uint64_t>(size));
    h = mix(h, d->sig.graph_mode() ? 1 : 2);
    for (std::size_t r = 0 ; r < d->tuples.size() ; ++r) {
        h = mix(h, fnv1a64(d->sig.relations()[r].name));
        h = mix(h, static_cast<std::uint64_t>(d->sig.arity(r)));
        h = mix(h, d->tuples[r].size());
        for (int x : d->tuples[r])
            h = mix(h, static_cast<std::uint64_t>(x));
    }
    d->hash = h;
    return Structure{ std::shared_ptr<const Data>(std::move(d)) };
}

auto Structure::graph(int n, std::span<const std::pair<int, int>> edges) -> Structure
{
    std::vector<int> flat;
    flat.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        flat.push_back(u);
        flat.push_back(v);
    }
    return Structure{ Signature::graph(), n, { std::move(flat) } };
}

auto Structure::graph(int n, std::initializer_list<std::pair<int, int>> edges) -> Structure
{
    return graph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

auto Structure::empty(Signature sig, int n) -> Structure
{
    std::vector<std::vector<int>> tuples(sig.relation_count());
    return build(std::move(sig), n, std::move(tuples));
}

auto Structure::signature() const -> const Signature & { return d_->sig; }
auto Structure::is_graph() const -> bool { return d_->sig.graph_mode(); }
auto Structure::size() const -> int { return d_->size; }
auto Structure::relation_count() const -> std::size_t { return d_->tuples.size(); }
auto Structure::arity(std::size_t r) const -> int { return d_->sig.arity(r); }
auto Structure::hash() const -> std::uint64_t { return d_->hash; }

auto Structure::tuple_count(std::size_t r) const -> std::size_t
{
    return d_->tuples[r].size() / static_cast<std::size_t>(arity(r));
}

auto Structure::total_tuple_count() const -> std::size_t
{
    std::size_t total = 0;
    for (std::size_t r = 0 ; r < relation_count() ; ++r)
        total += tuple_count(r);
    return total;
}

auto Structure::tuple(std::size_t r, std::size_t i) const -> std::span<const int>
{
    auto k = static_cast<std::size_t>(arity(r));
    return std::span<const int>(d_->tuples[r]).subspan(i * k, k);
}

auto Structure::flat_tuples(std::size_t r) const -> std::span<const int>
{
    return d_->tuples[r];
}

auto Structure::contains(std::size_t r, std::span<const int> t) const -> bool
{
    if (is_graph() && t.size() == 2)
        return adjacent(t[0], t[1]);

    auto k = static_cast<std::size_t>(arity(r));
    if (t.size() != k)
        return false;
    auto & flat = d_->tuples[r];
    std::size_t lo = 0, hi = flat.size() / k;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto begin = flat.begin() + static_cast<std::ptrdiff_t>(mid * k);
        if (std::lexicographical_compare(begin, begin + static_cast<std::ptrdiff_t>(k), t.begin(), t.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < flat.size() / k && std::equal(t.begin(), t.end(), flat.begin() + static_cast<std::ptrdiff_t>(lo * k));
}

auto Structure::neighbors(int x) const -> std::span<const int>
{
    if (is_graph())
        return d_->adjacency[static_cast<std::size_t>(x)];

    std::call_once(d_->gaifman_once, [this] {
        auto & adj = d_->gaifman_adjacency;
        adj.assign(static_cast<std::size_t>(size()), {});
        for (std::size_t r = 0 ; r < relation_count() ; ++r)
            for (std::size_t i = 0 ; i < tuple_count(r) ; ++i) {
                auto t = tuple(r, i);
                for (int a : t)
                    for (int b : t)
                        if (a != b)
                            adj[static_cast<std::size_t>(a)].push_back(b);
            }
        for (auto & row : adj) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
    });
    return d_->gaifman_adjacency[static_cast<std::size_t>(x)];
}

auto Structure::adjacent(int u, int v) const -> bool
{
    auto & row = d_->adjacency[static_cast<std::size_t>(u)];
    return std::binary_search(row.begin(), row.end(), v);
}

auto Structure::edge_count() const -> std::size_t
{
    return d_->tuples[0].size() / 4;
}

auto Structure::incident(std::size_t r, int x) const -> std::span<const std::uint32_t>
{
    std::call_once(d_->incidence_once, [this] {
        auto n = static_cast<std::size_t>(size());
        d_->incidence.resize(relation_count());
        for (std::size_t rel = 0 ; rel < relation_count() ; ++rel) {
            auto & csr = d_->incidence[rel];
            csr.offsets.assign(n + 1, 0);
            std::vector<std::vector<std::uint32_t>> lists(n);
            for (std::size_t i = 0 ; i < tuple_count(rel) ; ++i) {
                auto t = tuple(rel, i);
                for (std::size_t p = 0 ; p < t.size() ; ++p) {
                    auto & l = lists[static_cast<std::size_t>(t[p])];
                    if (l.empty() || l.back() != i)
                        l.push_back(static_cast<std::uint32_t>(i));
                }
            }
            for (std::size_t v = 0 ; v < n ; ++v) {
                csr.offsets[v + 1] = csr.offsets[v] + static_cast<std::uint32_t>(lists[v].size());
                csr.ids.insert(csr.ids.end(), lists[v].begin(), lists[v].end());
            }
        }
    });
    auto & csr = d_->incidence[r];
    auto xi = static_cast<std::size_t>(x);
    return std::span<const std::uint32_t>(csr.ids).subspan(csr.offsets[xi], csr.offsets[xi + 1] - csr.offsets[xi]);
}

bool Structure::operator==(const Structure & other) const
{
    if (d_ == other.d_)
        return true;
    return d_->hash == other.d_->hash && d_->size == other.d_->size && d_->sig == other.d_->sig
        && d_->tuples == other.d_->tuples;
}

Homomorphism::Homomorphism(Structure source, Structure target, std::vector<int> map) :
    source_(std::move(source)),
    target_(std::move(target)),
    map_(std::move(map))
{
}

auto Homomorphism::checked(Structure source, Structure target, std::vector<int> map) -> Homomorphism
{
    if (source.signature() != target.signature())
        throw SignatureMismatch("homomorphism between structures of different signatures");
    if (! is_homomorphism(source, target, map))
        throw InvalidArgument("map is not a homomorphism");
    return Homomorphism{ std::move(source), std::move(target), std::move(map) };
}

auto Homomorphism::identity(const Structure & s) -> Homomorphism
{
    std::vector<int> m(static_cast<std::size_t>(s.size()));
    std::iota(m.begin(), m.end(), 0);
    return Homomorphism{ s, s, std::move(m) };
}

auto Homomorphism::is_injective() const -> bool
{
    std::vector<char> seen(static_cast<std::size_t>(target_.size()), 0);
    for (int y : map_) {
        if (seen[static_cast<std::size_t>(y)])
            return false;
        seen[static_cast<std::size_t>(y)] = 1;
    }
    return true;
}

auto Homomorphism::is_surjective() const -> bool
{
    std::vector<char> seen(static_cast<std::size_t>(target_.size()), 0);
    for (int y : map_)
        seen[static_cast<std::size_t>(y)] = 1;
    return std::all_of(seen.begin(), seen.end(), [] (char c) { return c != 0; });
}

auto Homomorphism::is_valid() const -> bool
{
    return source_.signature() == target_.signature() && is_homomorphism(source_, target_, map_);
}

bool Homomorphism::operator==(const Homomorphism & other) const
{
    return map_ == other.map_ && source_ == other.source_ && target_ == other.target_;
}

auto is_homomorphism(const Structure & source, const Structure & target, std::span<const int> map) -> bool
{
    if (map.size() != static_cast<std::size_t>(source.size()))
        return false;
    if (source.relation_count() != target.relation_count())
        return false;
    for (int y : map)
        if (y < 0 || y >= target.size())
            return false;

    std::vector<int> image;
    for (std::size_t r = 0 ; r < source.relation_count() ; ++r)
        for (std::size_t i = 0 ; i < source.tuple_count(r) ; ++i) {
            auto t = source.tuple(r, i);
            image.assign(t.size(), 0);
            for (std::size_t p = 0 ; p < t.size() ; ++p)
                image[p] = map[static_cast<std::size_t>(t[p])];
            if (! target.contains(r, image))
                return false;
        }
    return true;
}

auto compose(const Homomorphism & g, const Homomorphism & f) -> Homomorphism
{
    if (f.target().size() != g.source().size() || ! (f.target().signature() == g.source().signature()))
        throw InvalidArgument("cannot compose: codomain and domain differ");
    std::vector<int> m(f.map().size());
    for (std::size_t i = 0 ; i < m.size() ; ++i)
        m[i] = g(f.map()[i]);
    return Homomorphism{ f.source(), g.target(), std::move(m) };
}

auto coproduct(std::span<const Structure> parts, const Signature & sig_if_empty) -> Coproduct
{
    if (parts.empty())
        return Coproduct{ Structure::empty(sig_if_empty), {} };

    const Signature & sig = parts[0].signature();
    int total = 0;
    for (auto & p : parts) {
        if (p.signature() != sig)
            throw SignatureMismatch("coproduct of structures with different signatures");
        total += p.size();
    }

    std::vector<std::vector<int>> tuples(sig.relation_count());
    int offset = 0;
    for (auto & p : parts) {
        for (std::size_t r = 0 ; r < sig.relation_count() ; ++r)
            for (int x : p.flat_tuples(r))
                tuples[r].push_back(x + offset);
        offset += p.size();
    }
    auto sum = Structure::assume_normalized(sig, total, std::move(tuples));

    Coproduct result{ sum, {} };
    offset = 0;
    for (auto & p : parts) {
        std::vector<int> m(static_cast<std::size_t>(p.size()));
        std::iota(m.begin(), m.end(), offset);
        result.injections.emplace_back(p, sum, std::move(m));
        offset += p.size();
    }
    return result;
}

auto disjoint_union(const Structure & a, const Structure & b) -> Structure
{
    Structure parts[] = { a, b };
    return coproduct(parts).sum;
}

auto gaifman(const Structure & s) -> Structure
{
    if (s.is_graph())
        return s;
    std::vector<int> flat;
    for (int x = 0 ; x < s.size() ; ++x)
        for (int y : s.neighbors(x)) {
            flat.push_back(x);
            flat.push_back(y);
        }
    return Structure::assume_normalized(Signature::graph(), s.size(), { std::move(flat) });
}

auto components(const Structure & s) -> ComponentDecomposition
{
    auto n = static_cast<std::size_t>(s.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> members;

    for (int start = 0 ; start < s.size() ; ++start) {
        if (comp[static_cast<std::size_t>(start)] != -1)
            continue;
        int c = static_cast<int>(members.size());
        members.emplace_back();
        std::vector<int> stack{ start };
        comp[static_cast<std::size_t>(start)] = c;
        while (! stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.back().push_back(x);
            for (int y : s.neighbors(x))
                if (comp[static_cast<std::size_t>(y)] == -1) {
                    comp[static_cast<std::size_t>(y)] = c;
                    stack.push_back(y);
                }
        }
        std::sort(members.back().begin(), members.back().end());
    }

    ComponentDecomposition result;
    result.witness.resize(n);
    for (std::size_t c = 0 ; c < members.size() ; ++c)
        for (std::size_t i = 0 ; i < members[c].size() ; ++i)
            result.witness[static_cast<std::size_t>(members[c][i])] = { static_cast<int>(c), static_cast<int>(i) };

    // Tuples are distributed in global sorted order and local renaming is monotone,
    // so every component's tuple lists stay sorted.
    std::vector<std::vector<std::vector<int>>> tuples(members.size(), std::vector<std::vector<int>>(s.relation_count()));
    for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
        for (std::size_t i = 0 ; i < s.tuple_count(r) ; ++i) {
            auto t = s.tuple(r, i);
            auto & dest = tuples[static_cast<std::size_t>(comp[static_cast<std::size_t>(t[0])])][r];
            for (int x : t)
                dest.push_back(result.witness[static_cast<std::size_t>(x)].second);
        }

    for (std::size_t c = 0 ; c < members.size() ; ++c) {
        auto part = Structure::assume_normalized(s.signature(), static_cast<int>(members[c].size()), std::move(tuples[c]));
        result.inclusions.emplace_back(part, s, members[c]);
        result.components.push_back(std::move(part));
    }
    return result;
}

auto component_count(const Structure & s) -> int
{
    std::vector<char> seen(static_cast<std::size_t>(s.size()), 0);
    int count = 0;
    std::vector<int> stack;
    for (int start = 0 ; start < s.size() ; ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        ++count;
        seen[static_cast<std::size_t>(start)] = 1;
        stack.push_back(start);
        while (! stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : s.neighbors(x))
                if (! seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
        }
    }
    return count;
}

auto is_connected(const Structure & s) -> bool
{
    return component_count(s) == 1;
}

auto induced(const Structure & s, std::span<const int> elements) -> Structure
{
    std::vector<int> local(static_cast<std::size_t>(s.size()), -1);
    for (std::size_t i = 0 ; i < elements.size() ; ++i)
        local[static_cast<std::size_t>(elements[i])] = static_cast<int>(i);

    std::vector<std::vector<int>> tuples(s.relation_count());
    for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
        for (std::size_t i = 0 ; i < s.tuple_count(r) ; ++i) {
            auto t = s.tuple(r, i);
            if (std::all_of(t.begin(), t.end(), [&] (int x) { return local[static_cast<std::size_t>(x)] != -1; }))
                for (int x : t)
                    tuples[r].push_back(local[static_cast<std::size_t>(x)]);
        }
    if (s.is_graph()) {
        // symmetric closure already present; only ordering needs repair
        return Structure{ Signature::graph(), static_cast<int>(elements.size()), std::move(tuples) };
    }
    return Structure{ s.signature(), static_cast<int>(elements.size()), std::move(tuples) };
}

auto relabel(const Structure & s, std::span<const int> perm) -> Structure
{
    if (perm.size() != static_cast<std::size_t>(s.size()))
        throw InvalidArgument("relabelling must be a permutation of the universe");
    std::vector<std::vector<int>> tuples(s.relation_count());
    for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
        for (int x : s.flat_tuples(r))
            tuples[r].push_back(perm[static_cast<std::size_t>(x)]);
    return Structure{ s.signature(), s.size(), std::move(tuples) };
}

namespace
{
    // Colour refinement over the disjoint union of a and b so that colours are comparable.
    // Element x of b is addressed as na + x.
    auto joint_refinement(const Structure & a, const Structure & b) -> std::vector<int>
    {
        int na = a.size(), nb = b.size();
        auto total = static_cast<std::size_t>(na + nb);
        std::vector<int> colour(total, 0);
        std::size_t classes = 1;

        auto side = [&] (std::size_t x) -> std::pair<const Structure *, int> {
            if (x < static_cast<std::size_t>(na))
                return { &a, static_cast<int>(x) };
            return { &b, static_cast<int>(x) - na };
        };

        while (true) {
            std::vector<std::vector<int>> signatures(total);
            for (std::size_t x = 0 ; x < total ; ++x) {
                auto [s, local] = side(x);
                int shift = (s == &a) ? 0 : na;
                std::vector<std::vector<int>> occurrences;
                for (std::size_t r = 0 ; r < s->relation_count() ; ++r)
                    for (auto id : s->incident(r, local)) {
                        auto t = s->tuple(r, id);
                        std::vector<int> occ{ static_cast<int>(r) };
                        for (std::size_t p = 0 ; p < t.size() ; ++p) {
                            occ.push_back(t[p] == local ? -1 : 0);
                            occ.push_back(colour[static_cast<std::size_t>(t[p] + shift)]);
                        }
                        occurrences.push_back(std::move(occ));
                    }
                std::sort(occurrences.begin(), occurrences.end());
                auto & sig = signatures[x];
                sig.push_back(colour[x]);
                for (auto & occ : occurrences) {
                    sig.push_back(static_cast<int>(occ.size()));
                    sig.insert(sig.end(), occ.begin(), occ.end());
                }
            }

            std::map<std::vector<int>, int> ranks;
            for (auto & sig : signatures)
                ranks.emplace(sig, 0);
            int next = 0;
            for (auto & [_, rank] : ranks)
                rank = next++;
            for (std::size_t x = 0 ; x < total ; ++x)
                colour[x] = ranks[signatures[x]];
            if (ranks.size() == classes)
                break;
            classes = ranks.size();
        }
        return colour;
    }

    auto connected_isomorphism(const Structure & a, const Structure & b) -> std::optional<std::vector<int>>
    {
        int n = a.size();
        if (n != b.size())
            return std::nullopt;
        if (n == 0)
            return std::vector<int>{};

        auto colour = joint_refinement(a, b);
        std::map<int, int> histogram;
        for (int x = 0 ; x < n ; ++x)
            ++histogram[colour[static_cast<std::size_t>(x)]];
        for (int y = 0 ; y < n ; ++y)
            if (--histogram[colour[static_cast<std::size_t>(n + y)]] < 0)
                return std::nullopt;

        auto colour_a = [&] (int x) { return colour[static_cast<std::size_t>(x)]; };
        auto colour_b = [&] (int y) { return colour[static_cast<std::size_t>(n + y)]; };

        // Start in the rarest colour class, then grow breadth-first so every later
        // element has an already-placed Gaifman neighbour.
        std::map<int, int> class_size;
        for (int x = 0 ; x < n ; ++x)
            ++class_size[colour_a(x)];
        int start = 0;
        for (int x = 1 ; x < n ; ++x)
            if (class_size[colour_a(x)] < class_size[colour_a(start)])
                start = x;

        std::vector<int> order, position(static_cast<std::size_t>(n), -1), anchor;
        order.push_back(start);
        position[static_cast<std::size_t>(start)] = 0;
        for (std::size_t i = 0 ; i < order.size() ; ++i)
            for (int y : a.neighbors(order[i]))
                if (position[static_cast<std::size_t>(y)] == -1) {
                    position[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
                    order.push_back(y);
                }
        if (static_cast<int>(order.size()) != n)
            return std::nullopt;

        anchor.assign(static_cast<std::size_t>(n), -1);
        for (int i = 1 ; i < n ; ++i) {
            int best = -1;
            for (int y : a.neighbors(order[static_cast<std::size_t>(i)]))
                if (position[static_cast<std::size_t>(y)] < i && (best == -1 || position[static_cast<std::size_t>(y)] < position[static_cast<std::size_t>(best)]))
                    best = y;
            anchor[static_cast<std::size_t>(i)] = best;
        }

        // Tuples to verify once their last element (in search order) is placed.
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(static_cast<std::size_t>(n));
        for (std::size_t r = 0 ; r < a.relation_count() ; ++r)
            for (std::size_t i = 0 ; i < a.tuple_count(r) ; ++i) {
                auto t = a.tuple(r, i);
                int last = 0;
                for (int x : t)
                    last = std::max(last, position[static_cast<std::size_t>(x)]);
                checks[static_cast<std::size_t>(last)].emplace_back(r, i);
            }

        std::vector<int> map(static_cast<std::size_t>(n), -1);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::vector<int> image;

        auto consistent = [&] (int i) {
            for (auto [r, id] : checks[static_cast<std::size_t>(i)]) {
                auto t = a.tuple(r, id);
                image.assign(t.size(), 0);
                for (std::size_t p = 0 ; p < t.size() ; ++p)
                    image[p] = map[static_cast<std::size_t>(t[p])];
                if (! b.contains(r, image))
                    return false;
            }
            return true;
        };

        auto search = [&] (auto & self, int i) -> bool {
            if (i == n)
                return true;
            int x = order[static_cast<std::size_t>(i)];
            auto try_candidate = [&] (int c) {
                if (used[static_cast<std::size_t>(c)] || colour_b(c) != colour_a(x))
                    return false;
                map[static_cast<std::size_t>(x)] = c;
                used[static_cast<std::size_t>(c)] = 1;
                if (consistent(i) && self(self, i + 1))
                    return true;
                used[static_cast<std::size_t>(c)] = 0;
                map[static_cast<std::size_t>(x)] = -1;
                return false;
            };
            if (anchor[static_cast<std::size_t>(i)] >= 0) {
                for (int c : b.neighbors(map[static_cast<std::size_t>(anchor[static_cast<std::size_t>(i)])]))
                    if (try_candidate(c))
                        return true;
            }
            else {
                for (int c = 0 ; c < n ; ++c)
                    if (try_candidate(c))
                        return true;
            }
            return false;
        };

        if (! search(search, 0))
            return std::nullopt;
        return map;
    }

    auto quick_invariant(const Structure & s) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> inv{ static_cast<std::size_t>(s.size()) };
        for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
            inv.push_back(s.tuple_count(r));
        std::vector<std::size_t> degrees;
        for (int x = 0 ; x < s.size() ; ++x)
            degrees.push_back(s.neighbors(x).size());
        std::sort(degrees.begin(), degrees.end());
        inv.insert(inv.end(), degrees.begin(), degrees.end());
        return inv;
    }
}

auto is_isomorphic(const Structure & a, const Structure & b) -> std::optional<Homomorphism>
{
    if (a.signature() != b.signature())
        throw SignatureMismatch("isomorphism test between different signatures");
    if (a.size() != b.size())
        return std::nullopt;
    for (std::size_t r = 0 ; r < a.relation_count() ; ++r)
        if (a.tuple_count(r) != b.tuple_count(r))
            return std::nullopt;
    if (quick_invariant(a) != quick_invariant(b))
        return std::nullopt;

    auto ca = components(a), cb = components(b);
    if (ca.components.size() != cb.components.size())
        return std::nullopt;

    std::vector<std::vector<std::size_t>> inv_b;
    for (auto & c : cb.components) {
        auto inv = quick_invariant(c);
        inv_b.emplace_back(inv.begin(), inv.end());
    }

    std::vector<int> map(static_cast<std::size_t>(a.size()), -1);
    std::vector<char> matched(cb.components.size(), 0);
    for (std::size_t i = 0 ; i < ca.components.size() ; ++i) {
        auto inv = quick_invariant(ca.components[i]);
        bool found = false;
        for (std::size_t j = 0 ; j < cb.components.size() && ! found ; ++j) {
            if (matched[j] || inv_b[j] != inv)
                continue;
            if (auto iso = connected_isomorphism(ca.components[i], cb.components[j])) {
                matched[j] = 1;
                found = true;
                for (std::size_t x = 0 ; x < iso->size() ; ++x)
                    map[static_cast<std::size_t>(ca.inclusions[i](static_cast<int>(x)))] = cb.inclusions[j]((*iso)[x]);
            }
        }
        if (! found)
            return std::nullopt;
    }
    return Homomorphism{ a, b, std::move(map) };
}

auto serialize(const Structure & s) -> std::string
{
    std::ostringstream out;
    out << s.signature().to_string() << "\n";
    out << "universe " << s.size() << "\n";
    if (s.is_graph()) {
        auto flat = s.flat_tuples(0);
        for (std::size_t i = 0 ; i < flat.size() ; i += 2)
            if (flat[i] < flat[i + 1])
                out << "e " << flat[i] << " " << flat[i + 1] << "\n";
    }
    else {
        for (std::size_t r = 0 ; r < s.relation_count() ; ++r)
            for (std::size_t i = 0 ; i < s.tuple_count(r) ; ++i) {
                out << s.signature().relations()[r].name;
                for (int x : s.tuple(r, i))
                    out << " " << x;
                out << "\n";
            }
    }
    return out.str();
}

auto parse_structure(std::string_view text) -> Structure
{
    std::istringstream in{ std::string(text) };
    std::string line;
    int line_no = 0;
    std::optional<Signature> sig;
    std::optional<int> universe;
    std::vector<std::vector<int>> tuples;

    auto parse_int = [&] (const std::string & word) {
        std::size_t pos = 0;
        long value = 0;
        try {
            value = std::stol(word, &pos);
        }
        catch (const std::exception &) {
            throw ParseError(line_no, "expected an integer, got '" + word + "'");
        }
        if (pos != word.size() || value < 0 || value > (1L << 30))
            throw ParseError(line_no, "expected a non-negative integer, got '" + word + "'");
        return static_cast<int>(value);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#') ; hash != std::string::npos)
            line.erase(hash);
        std::istringstream words{ line };
        std::vector<std::string> w;
        for (std::string word ; words >> word ; )
            w.push_back(word);
        if (w.empty())
            continue;

        if (! sig) {
            if (w[0] == "graph" && w.size() == 1)
                sig = Signature::graph();
            else if (w[0] == "signature") {
                std::vector<RelationSymbol> rels;
                for (std::size_t i = 1 ; i < w.size() ; ++i) {
                    auto slash = w[i].find('/');
                    if (slash == std::string::npos)
                        throw ParseError(line_no, "expected name/arity, got '" + w[i] + "'");
                    rels.push_back({ w[i].substr(0, slash), parse_int(w[i].substr(slash + 1)) });
                }
                try {
                    sig = Signature{ std::move(rels) };
                }
                catch (const InvalidArgument & e) {
                    throw ParseError(line_no, e.what());
                }
            }
            else
                throw ParseError(line_no, "expected 'graph' or 'signature'");
            tuples.assign(sig->relation_count(), {});
            continue;
        }

        if (! universe) {
            if (w.size() != 2 || w[0] != "universe")
                throw ParseError(line_no, "expected 'universe n'");
            universe = parse_int(w[1]);
            continue;
        }

        std::size_t r = 0;
        if (sig->graph_mode()) {
            if (w[0] != "e")
                throw ParseError(line_no, "expected an edge line 'e u v'");
        }
        else {
            auto found = sig->find(w[0]);
            if (! found)
                throw ParseError(line_no, "unknown relation '" + w[0] + "'");
            r = *found;
        }
        if (static_cast<int>(w.size()) - 1 != sig->arity(r))
            throw ParseError(line_no, "wrong number of entries for relation '" + w[0] + "'");
        for (std::size_t i = 1 ; i < w.size() ; ++i) {
            int x = parse_int(w[i]);
            if (x >= *universe)
                throw ParseError(line_no, "element " + w[i] + " outside the universe");
            tuples[r].push_back(x);
        }
        if (sig->graph_mode() && tuples[r][tuples[r].size() - 1] == tuples[r][tuples[r].size() - 2])
            throw ParseError(line_no, "graphs may not have loops");
    }

    if (! sig)
        throw ParseError(line_no, "missing 'graph' or 'signature' header");
    if (! universe)
        throw ParseError(line_no, "missing 'universe' line");
    return Structure{ std::move(*sig), *universe, std::move(tuples) };
}

auto read_structure(const std::filesystem::path & path) -> Structure
{
    std::ifstream in{ path };
    if (! in)
        throw InvalidArgument("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_structure(buffer.str());
}

void write_structure(const std::filesystem::path & path, const Structure & s)
{
    std::ofstream out{ path, std::ios::binary };
    if (! out)
        throw InvalidArgument("cannot write " + path.string());
    out << serialize(s);
}

auto fnv1a64(std::string_view bytes) -> std::uint64_t
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ddc
