#include <ddc/density.hpp>
#include <ddc/canonical.hpp>
#include <ddc/error.hpp>
#include <ddc/homsearch.hpp>
#include <ddc/parallel.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace ddc {

GeneratorFamily::GeneratorFamily(Signature sig, std::vector<Structure> generators, bool requires_connected,
                                 std::vector<std::string> names) :
    sig_(std::move(sig)),
    generators_(std::move(generators)),
    requires_connected_(requires_connected),
    names_(std::move(names))
{
    for (std::size_t i = 0 ; i < generators_.size() ; ++i) {
        const auto & g = generators_[i];
        if (g.signature() != sig_)
            throw SignatureMismatch("generator " + std::to_string(i) + " has a different signature");
        if (requires_connected_ && ! is_connected(g))
            throw InvalidArgument("generator " + std::to_string(i) + " is not connected");
    }

    bool by_key = sig_.graph_mode() && std::all_of(generators_.begin(), generators_.end(), [] (auto & g) {
        return g.size() <= 64;
    });
    if (by_key) {
        std::set<std::string> keys;
        for (std::size_t i = 0 ; i < generators_.size() ; ++i)
            if (! keys.insert(canonical_key(generators_[i])).second)
                throw InvalidArgument("generator " + std::to_string(i) + " is isomorphic to an earlier one");
    }
    else {
        for (std::size_t i = 0 ; i < generators_.size() ; ++i)
            for (std::size_t j = 0 ; j < i ; ++j)
                if (is_isomorphic(generators_[j], generators_[i]))
                    throw InvalidArgument("generator " + std::to_string(i) + " is isomorphic to generator " + std::to_string(j));
    }

    if (names_.empty())
        for (auto & g : generators_)
            names_.push_back(graph_name(g));
    if (names_.size() != generators_.size())
        throw InvalidArgument("generator names do not match the generators");
}

auto GeneratorFamily::index_of(const Structure & s) const -> std::optional<std::size_t>
{
    if (s.signature() != sig_)
        return std::nullopt;
    for (std::size_t i = 0 ; i < generators_.size() ; ++i)
        if (generators_[i].size() == s.size() && is_isomorphic(generators_[i], s))
            return i;
    return std::nullopt;
}

bool GeneratorFamily::operator==(const GeneratorFamily & other) const
{
    return sig_ == other.sig_ && requires_connected_ == other.requires_connected_ && generators_ == other.generators_;
}

DensityStructure::DensityStructure(Structure base, GeneratorFamily family, std::vector<Block> blocks) :
    base_(std::move(base)),
    family_(std::move(family)),
    blocks_(std::move(blocks))
{
    first_block_.assign(family_.size() + 1, 0);
    int offset = 0;
    for (auto & b : blocks_) {
        b.offset = offset;
        offset += family_.generator(b.generator).size();
        ++first_block_[b.generator + 1];
    }
    std::partial_sum(first_block_.begin(), first_block_.end(), first_block_.begin());

    // Blocks come grouped by generator and each generator's tuples are sorted, so shifted
    // copies concatenate into sorted tuple lists.
    const auto & sig = family_.signature();
    std::vector<std::vector<int>> tuples(sig.relation_count());
    for (std::size_t r = 0 ; r < sig.relation_count() ; ++r) {
        std::size_t total = 0;
        for (auto & b : blocks_)
            total += family_.generator(b.generator).flat_tuples(r).size();
        tuples[r].reserve(total);
        for (auto & b : blocks_)
            for (int x : family_.generator(b.generator).flat_tuples(r))
                tuples[r].push_back(x + b.offset);
    }
    carrier_ = Structure::assume_normalized(sig, offset, std::move(tuples));
}

auto DensityStructure::hom_count(std::size_t generator) const -> std::size_t
{
    return first_block_[generator + 1] - first_block_[generator];
}

auto DensityStructure::block_index(std::size_t generator, std::size_t hom_index) const -> std::size_t
{
    if (generator >= family_.size() || hom_index >= hom_count(generator))
        throw OutOfRange("no block (" + std::to_string(generator) + ", " + std::to_string(hom_index) + ")");
    return first_block_[generator] + hom_index;
}

auto DensityStructure::block_of(int element) const -> std::size_t
{
    if (element < 0 || element >= carrier_.size())
        throw OutOfRange("element " + std::to_string(element) + " outside the carrier");
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), element, [] (int e, const Block & b) {
        return e < b.offset;
    });
    return static_cast<std::size_t>(it - blocks_.begin()) - 1;
}

auto DensityStructure::hom(std::size_t block) const -> Homomorphism
{
    const auto & b = blocks_.at(block);
    return Homomorphism{ family_.generator(b.generator), base_, b.map };
}

auto DensityStructure::triple(int element) const -> Triple
{
    auto bi = block_of(element);
    const auto & b = blocks_[bi];
    return Triple{ b.generator, bi - first_block_[b.generator], element - b.offset };
}

auto DensityStructure::element(std::size_t generator, std::size_t hom_index, int x) const -> int
{
    const auto & b = blocks_[block_index(generator, hom_index)];
    if (x < 0 || x >= family_.generator(generator).size())
        throw OutOfRange("element " + std::to_string(x) + " outside generator " + family_.name(generator));
    return b.offset + x;
}

auto DensityStructure::find_hom(std::size_t generator, std::span<const int> map) const -> std::optional<std::size_t>
{
    auto first = blocks_.begin() + static_cast<std::ptrdiff_t>(first_block_[generator]);
    auto last = blocks_.begin() + static_cast<std::ptrdiff_t>(first_block_[generator + 1]);
    auto it = std::lower_bound(first, last, map, [] (const Block & b, std::span<const int> m) {
        return std::lexicographical_compare(b.map.begin(), b.map.end(), m.begin(), m.end());
    });
    if (it == last || ! std::equal(it->map.begin(), it->map.end(), map.begin(), map.end()))
        return std::nullopt;
    return static_cast<std::size_t>(it - first);
}

auto apply(const GeneratorFamily & fam, const Structure & b, std::size_t cap) -> DensityStructure
{
    if (b.signature() != fam.signature())
        throw SignatureMismatch("density comonad applied to a structure of another signature");

    BigInt size = 0;
    std::vector<BigInt> counts;
    for (auto & g : fam.generators()) {
        counts.push_back(count_homs(g, b));
        size += counts.back() * g.size();
    }
    if (size > cap) {
        auto would_be = size > std::numeric_limits<std::size_t>::max()
            ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(size);
        throw CapExceeded("density carrier too large", cap, would_be);
    }

    std::vector<DensityStructure::Block> blocks;
    for (std::size_t i = 0 ; i < fam.size() ; ++i) {
        if (counts[i] == 0)
            continue;
        for (auto & m : hom_maps(HomQuery{ fam.generator(i), b, HomMode::hom, std::nullopt }))
            blocks.push_back(DensityStructure::Block{ i, std::move(m), 0 });
    }
    return DensityStructure{ b, fam, std::move(blocks) };
}

auto iota(const DensityStructure & d, std::size_t generator, std::size_t hom_index) -> Homomorphism
{
    const auto & b = d.blocks()[d.block_index(generator, hom_index)];
    const auto & g = d.family().generator(generator);
    std::vector<int> map(static_cast<std::size_t>(g.size()));
    std::iota(map.begin(), map.end(), b.offset);
    return Homomorphism{ g, d.carrier(), std::move(map) };
}

auto lift(const DensityStructure & from, const DensityStructure & to, const Homomorphism & h) -> Homomorphism
{
    if (! (h.source() == from.base()) || ! (h.target() == to.base()))
        throw InvalidArgument("lift: map does not go between the two bases");

    std::vector<int> map(static_cast<std::size_t>(from.carrier().size()));
    std::vector<int> composite;
    for (auto & b : from.blocks()) {
        composite.resize(b.map.size());
        for (std::size_t z = 0 ; z < b.map.size() ; ++z)
            composite[z] = h(b.map[z]);
        auto index = to.find_hom(b.generator, composite);
        if (! index)
            throw InvalidArgument("lift: composite is not a homomorphism; is the map valid?");
        int target_offset = to.blocks()[to.block_index(b.generator, *index)].offset;
        for (std::size_t z = 0 ; z < b.map.size() ; ++z)
            map[static_cast<std::size_t>(b.offset) + z] = target_offset + static_cast<int>(z);
    }
    return Homomorphism{ from.carrier(), to.carrier(), std::move(map) };
}

auto counit(const DensityStructure & d) -> Homomorphism
{
    std::vector<int> map(static_cast<std::size_t>(d.carrier().size()));
    for (auto & b : d.blocks())
        for (std::size_t z = 0 ; z < b.map.size() ; ++z)
            map[static_cast<std::size_t>(b.offset) + z] = b.map[z];
    return Homomorphism{ d.carrier(), d.base(), std::move(map) };
}

auto comult(const DensityStructure & d, const DensityStructure & dd) -> Homomorphism
{
    if (! (dd.base() == d.carrier()))
        throw InvalidArgument("comult: second density structure is not built over the first");

    std::vector<int> map(static_cast<std::size_t>(d.carrier().size()));
    std::vector<int> inclusion;
    for (auto & b : d.blocks()) {
        inclusion.resize(b.map.size());
        std::iota(inclusion.begin(), inclusion.end(), b.offset);
        auto index = dd.find_hom(b.generator, inclusion);
        if (! index)
            throw LawViolation("comult: block inclusion missing from D(D(B))");
        int target_offset = dd.blocks()[dd.block_index(b.generator, *index)].offset;
        for (std::size_t z = 0 ; z < b.map.size() ; ++z)
            map[static_cast<std::size_t>(b.offset) + z] = target_offset + static_cast<int>(z);
    }
    return Homomorphism{ d.carrier(), dd.carrier(), std::move(map) };
}

DensityComonad::DensityComonad(GeneratorFamily fam, Caps caps) :
    fam_(std::move(fam)),
    caps_(caps)
{
}

auto DensityComonad::cached(const Structure & y, std::size_t cap) const -> std::shared_ptr<const DensityStructure>
{
    {
        std::lock_guard lock{ mutex_ };
        auto [lo, hi] = cache_.equal_range(y.hash());
        for (auto it = lo ; it != hi ; ++it)
            if (it->second->base() == y) {
                if (static_cast<std::size_t>(it->second->carrier().size()) > cap)
                    throw CapExceeded("density carrier too large", cap, static_cast<std::size_t>(it->second->carrier().size()));
                return it->second;
            }
    }
    auto built = std::make_shared<const DensityStructure>(ddc::apply(fam_, y, cap));
    std::lock_guard lock{ mutex_ };
    auto [lo, hi] = cache_.equal_range(y.hash());
    for (auto it = lo ; it != hi ; ++it)
        if (it->second->base() == y)
            return it->second;
    cache_.emplace(y.hash(), built);
    return built;
}

auto DensityComonad::density(const Structure & b) const -> std::shared_ptr<const DensityStructure>
{
    return cached(b, caps_.carrier);
}

auto DensityComonad::density_internal(const Structure & y) const -> std::shared_ptr<const DensityStructure>
{
    return cached(y, caps_.square);
}

void DensityComonad::clear_cache() const
{
    std::lock_guard lock{ mutex_ };
    cache_.clear();
}

auto DensityComonad::name() const -> std::string
{
    std::string out = "D[";
    for (std::size_t i = 0 ; i < fam_.size() ; ++i)
        out += (i ? "," : "") + fam_.name(i);
    return out + "]";
}

auto DensityComonad::apply(const Structure & b) const -> Structure
{
    return density(b)->carrier();
}

auto DensityComonad::counit(const Structure & b) const -> Homomorphism
{
    return ddc::counit(*density_internal(b));
}

auto DensityComonad::comult(const Structure & b) const -> Homomorphism
{
    auto d = density_internal(b);
    auto dd = density_internal(d->carrier());
    return ddc::comult(*d, *dd);
}

auto DensityComonad::lift(const Homomorphism & h) const -> Homomorphism
{
    return ddc::lift(*density_internal(h.source()), *density_internal(h.target()), h);
}

auto DensityComonad::code(const Structure & y, int e) const -> ElementCode
{
    auto d = density_internal(y);
    const auto & b = d->blocks()[d->block_of(e)];
    ElementCode out{ static_cast<std::int64_t>(b.generator), e - b.offset };
    out.insert(out.end(), b.map.begin(), b.map.end());
    return out;
}

auto DensityComonad::lift_code(const Homomorphism & h, int e) const -> ElementCode
{
    auto d = density_internal(h.source());
    const auto & b = d->blocks()[d->block_of(e)];
    ElementCode out{ static_cast<std::int64_t>(b.generator), e - b.offset };
    for (int v : b.map)
        out.push_back(h(v));
    return out;
}

auto DensityComonad::map_code(const Homomorphism & h, const ElementCode & code) const -> ElementCode
{
    auto out = code;
    for (std::size_t i = 2 ; i < out.size() ; ++i)
        out[i] = h(static_cast<int>(out[i]));
    return out;
}

auto DensityComonad::comult_code(const Structure & y, int e) const -> ElementCode
{
    auto d = density_internal(y);
    const auto & b = d->blocks()[d->block_of(e)];
    ElementCode out{ static_cast<std::int64_t>(b.generator), e - b.offset };
    for (std::size_t z = 0 ; z < b.map.size() ; ++z)
        out.push_back(b.offset + static_cast<std::int64_t>(z));
    return out;
}

auto DensityComonad::element_of(const Structure & y, const ElementCode & code) const -> int
{
    if (code.size() < 2 || code[0] < 0 || static_cast<std::size_t>(code[0]) >= fam_.size())
        return -1;
    auto g = static_cast<std::size_t>(code[0]);
    const auto & gen = fam_.generator(g);
    if (code.size() != 2 + static_cast<std::size_t>(gen.size()) || code[1] < 0 || code[1] >= gen.size())
        return -1;
    std::vector<int> map(code.begin() + 2, code.end());
    auto d = density_internal(y);
    auto index = d->find_hom(g, map);
    if (! index)
        return -1;
    return d->element(g, *index, static_cast<int>(code[1]));
}

auto canonical_coalgebra(const DensityComonad & d, std::size_t generator) -> Coalgebra
{
    const auto & fam = d.family();
    if (generator >= fam.size())
        throw OutOfRange("no generator " + std::to_string(generator));
    const auto & x = fam.generator(generator);
    auto dx = d.density(x);
    std::vector<int> id(static_cast<std::size_t>(x.size()));
    std::iota(id.begin(), id.end(), 0);
    auto index = dx->find_hom(generator, id);
    return Coalgebra{ x, iota(*dx, generator, *index) };
}

auto classify_components(const GeneratorFamily & fam, const Structure & x) -> std::vector<std::optional<std::size_t>>
{
    std::vector<std::optional<std::size_t>> out;
    for (auto & c : components(x).components)
        out.push_back(fam.index_of(c));
    return out;
}

auto coalgebra_by_decomposition(const DensityComonad & d, const Structure & x) -> std::optional<Coalgebra>
{
    const auto & fam = d.family();
    if (! fam.requires_connected())
        throw UnsupportedConfiguration("classification needs a family of connected generators");
    if (x.signature() != fam.signature())
        throw SignatureMismatch("structure and family have different signatures");

    auto parts = components(x);
    std::vector<std::size_t> classes;
    std::vector<Homomorphism> isos;
    for (auto & c : parts.components) {
        auto g = fam.index_of(c);
        if (! g)
            return std::nullopt;
        classes.push_back(*g);
        isos.push_back(*is_isomorphic(c, fam.generator(*g)));
    }

    auto dx = d.density(x);
    std::vector<int> alpha(static_cast<std::size_t>(x.size()));
    for (std::size_t i = 0 ; i < parts.components.size() ; ++i) {
        // f = inclusion ∘ z⁻¹ : M(A) -> X, and the component element c sits at z(c) in block f.
        const auto & z = isos[i];
        std::vector<int> f(z.map().size());
        for (std::size_t c = 0 ; c < z.map().size() ; ++c)
            f[static_cast<std::size_t>(z(static_cast<int>(c)))] = parts.inclusions[i](static_cast<int>(c));
        auto index = dx->find_hom(classes[i], f);
        for (std::size_t c = 0 ; c < z.map().size() ; ++c)
            alpha[static_cast<std::size_t>(parts.inclusions[i](static_cast<int>(c)))] =
                dx->element(classes[i], *index, z(static_cast<int>(c)));
    }
    return Coalgebra{ x, Homomorphism{ x, dx->carrier(), std::move(alpha) } };
}

namespace
{
    class CoalgebraSearch
    {
    public:
        CoalgebraSearch(const DensityStructure & d, const Structure & x) :
            d_(d), x_(x), alpha_(static_cast<std::size_t>(x.size()), -1)
        {
            auto eps = counit(d);
            fibres_.assign(static_cast<std::size_t>(x.size()), {});
            for (int e = 0 ; e < d.carrier().size() ; ++e)
                fibres_[static_cast<std::size_t>(eps(e))].push_back(e);
        }

        auto run() -> bool { return search(0); }
        auto alpha() const -> const std::vector<int> & { return alpha_; }

    private:
        // Assigns α(x) = e and everything the square law then forces; records the
        // assignments on the trail. False on conflict.
        auto assign(int x, int e) -> bool
        {
            const auto & b = d_.blocks()[d_.block_of(e)];
            if (alpha_[static_cast<std::size_t>(x)] != -1 && alpha_[static_cast<std::size_t>(x)] != e)
                return false;
            for (std::size_t z = 0 ; z < b.map.size() ; ++z) {
                int w = b.map[z];
                int forced = b.offset + static_cast<int>(z);
                int & slot = alpha_[static_cast<std::size_t>(w)];
                if (slot == -1) {
                    slot = forced;
                    trail_.push_back(w);
                    if (! tuples_ok(w))
                        return false;
                }
                else if (slot != forced)
                    return false;
            }
            return alpha_[static_cast<std::size_t>(x)] == e;
        }

        auto tuples_ok(int w) -> bool
        {
            std::vector<int> image;
            for (std::size_t r = 0 ; r < x_.relation_count() ; ++r)
                for (auto id : x_.incident(r, w)) {
                    auto t = x_.tuple(r, id);
                    image.clear();
                    for (int v : t) {
                        if (alpha_[static_cast<std::size_t>(v)] == -1)
                            break;
                        image.push_back(alpha_[static_cast<std::size_t>(v)]);
                    }
                    if (image.size() == t.size() && ! d_.carrier().contains(r, image))
                        return false;
                }
            return true;
        }

        void undo(std::size_t mark)
        {
            while (trail_.size() > mark) {
                alpha_[static_cast<std::size_t>(trail_.back())] = -1;
                trail_.pop_back();
            }
        }

        auto search(int x) -> bool
        {
            if (x == x_.size())
                return true;
            if (alpha_[static_cast<std::size_t>(x)] != -1)
                return search(x + 1);
            for (int e : fibres_[static_cast<std::size_t>(x)]) {
                auto mark = trail_.size();
                if (assign(x, e) && search(x + 1))
                    return true;
                undo(mark);
            }
            return false;
        }

        const DensityStructure & d_;
        const Structure & x_;
        std::vector<int> alpha_;
        std::vector<std::vector<int>> fibres_;
        std::vector<int> trail_;
    };
}

auto coalgebra_by_search(const DensityComonad & d, const Structure & x, const SearchOptions & opts) -> std::optional<Coalgebra>
{
    if (x.signature() != d.family().signature())
        throw SignatureMismatch("structure and family have different signatures");
    if (x.size() > opts.max_elements)
        throw CapExceeded("coalgebra search limited by element count",
                          static_cast<std::size_t>(opts.max_elements), static_cast<std::size_t>(x.size()));

    auto dx = d.density(x);
    CoalgebraSearch search{ *dx, x };
    if (! search.run())
        return std::nullopt;
    return Coalgebra{ x, Homomorphism{ x, dx->carrier(), search.alpha() } };
}

auto cofree(const DensityComonad & d, const Structure & b) -> Coalgebra
{
    auto db = d.density(b);
    return Coalgebra{ db->carrier(), d.comult(b) };
}

auto cofree_iso(const GeneratorFamily & fam, const Structure & a, const Structure & b) -> bool
{
    if (! fam.requires_connected())
        throw UnsupportedConfiguration("cofree isomorphism by hom counts needs connected generators");
    for (auto & g : fam.generators())
        if (count_homs(g, a) != count_homs(g, b))
            return false;
    return true;
}

GradeMorphism::GradeMorphism(std::shared_ptr<const DensityComonad> sub, std::shared_ptr<const DensityComonad> sup) :
    sub_(std::move(sub)),
    sup_(std::move(sup))
{
    const auto & small = sub_->family();
    const auto & large = sup_->family();
    if (small.signature() != large.signature())
        throw NotASubfamily("families have different signatures");
    std::size_t next = 0;
    for (std::size_t i = 0 ; i < small.size() ; ++i) {
        while (next < large.size() && ! (large.generator(next) == small.generator(i)))
            ++next;
        if (next == large.size())
            throw NotASubfamily("generator " + small.name(i) + " is missing or out of order in the larger family");
        positions_.push_back(next++);
    }
}

auto GradeMorphism::component(const Structure & b) const -> Homomorphism
{
    auto from = sub_->density(b);
    auto to = sup_->density(b);
    std::vector<int> map(static_cast<std::size_t>(from->carrier().size()));
    for (auto & block : from->blocks()) {
        auto g = positions_[block.generator];
        int offset = to->blocks()[to->block_index(g, *to->find_hom(g, block.map))].offset;
        for (std::size_t z = 0 ; z < block.map.size() ; ++z)
            map[static_cast<std::size_t>(block.offset) + z] = offset + static_cast<int>(z);
    }
    return Homomorphism{ from->carrier(), to->carrier(), std::move(map) };
}

auto GradeMorphism::component_code(const Structure & y, int e) const -> ElementCode
{
    auto code = sub_->code(y, e);
    code[0] = static_cast<std::int64_t>(positions_[static_cast<std::size_t>(code[0])]);
    return code;
}

auto GradeMorphism::component_code_of(const Structure &, const ElementCode & code) const -> ElementCode
{
    auto out = code;
    out[0] = static_cast<std::int64_t>(positions_[static_cast<std::size_t>(code[0])]);
    return out;
}

auto grade_morphism(std::shared_ptr<const DensityComonad> sub, std::shared_ptr<const DensityComonad> sup) -> GradeMorphism
{
    return GradeMorphism{ std::move(sub), std::move(sup) };
}

WeakInitialMorphism::WeakInitialMorphism(std::shared_ptr<const DensityComonad> density, std::shared_ptr<const Comonad> target,
                                         std::vector<Coalgebra> coalgebras) :
    density_(std::move(density)),
    target_(std::move(target)),
    coalgebras_(std::move(coalgebras))
{
    const auto & fam = density_->family();
    if (coalgebras_.size() != fam.size())
        throw InvalidArgument("need one coalgebra per generator");
    for (std::size_t i = 0 ; i < fam.size() ; ++i) {
        if (! (coalgebras_[i].carrier == fam.generator(i)))
            throw InvalidArgument("coalgebra " + std::to_string(i) + " is not carried by generator " + fam.name(i));
        if (auto why = coalgebra_violation(*target_, coalgebras_[i]))
            throw LawViolation("coalgebra on " + fam.name(i) + ": " + *why);
    }
}

auto WeakInitialMorphism::component(const Structure & b) const -> Homomorphism
{
    auto d = density_->density(b);
    auto cb = target_->apply(b);
    std::vector<int> map(static_cast<std::size_t>(d->carrier().size()));
    for (std::size_t bi = 0 ; bi < d->blocks().size() ; ++bi) {
        const auto & block = d->blocks()[bi];
        auto f = d->hom(bi);
        const auto & alpha = coalgebras_[block.generator].alpha;
        for (std::size_t z = 0 ; z < block.map.size() ; ++z) {
            int e = target_->element_of(b, target_->lift_code(f, alpha(static_cast<int>(z))));
            if (e < 0)
                throw LawViolation("image of a block element is missing from " + target_->name() + "(B)");
            map[static_cast<std::size_t>(block.offset) + z] = e;
        }
    }
    return Homomorphism{ d->carrier(), cb, std::move(map) };
}

auto WeakInitialMorphism::component_code(const Structure & y, int e) const -> ElementCode
{
    auto d = density_->density_internal(y);
    auto bi = d->block_of(e);
    const auto & block = d->blocks()[bi];
    return target_->lift_code(d->hom(bi), coalgebras_[block.generator].alpha(e - block.offset));
}

auto WeakInitialMorphism::component_code_of(const Structure & y, const ElementCode & code) const -> ElementCode
{
    auto g = static_cast<std::size_t>(code[0]);
    Homomorphism f{ density_->family().generator(g), y, std::vector<int>(code.begin() + 2, code.end()) };
    return target_->lift_code(f, coalgebras_[g].alpha(static_cast<int>(code[1])));
}

auto weak_initial_morphism(std::shared_ptr<const DensityComonad> density, std::shared_ptr<const Comonad> target,
                           std::vector<Coalgebra> coalgebras) -> WeakInitialMorphism
{
    return WeakInitialMorphism{ std::move(density), std::move(target), std::move(coalgebras) };
}

namespace
{
    enum InclusionLaw : std::size_t { dc1, dc2, dc3 };

    void check_inclusions(const DensityComonad & d, const std::vector<Structure> & corpus, std::size_t index,
                          detail::LawTally & tally)
    {
        const auto & b = corpus[index];
        auto db = d.density(b);
        auto eps = d.counit(b);
        auto delta = d.comult(b);
        auto where = [&] (std::size_t block, std::size_t z) {
            return detail::describe(b, index) + " block " + std::to_string(block) + " element " + std::to_string(z);
        };

        for (std::size_t bi = 0 ; bi < db->blocks().size() ; ++bi) {
            const auto & block = db->blocks()[bi];
            for (std::size_t z = 0 ; z < block.map.size() ; ++z) {
                int e = block.offset + static_cast<int>(z);
                if (eps(e) == block.map[z])
                    tally.pass(dc2);
                else
                    tally.fail(dc2, where(bi, z));

                // ι_{ι_f}(z) = (A, ι_f, z)
                ElementCode expected{ static_cast<std::int64_t>(block.generator), static_cast<std::int64_t>(z) };
                for (std::size_t w = 0 ; w < block.map.size() ; ++w)
                    expected.push_back(block.offset + static_cast<std::int64_t>(w));
                if (d.code(db->carrier(), delta(e)) == expected)
                    tally.pass(dc3);
                else
                    tally.fail(dc3, where(bi, z));
            }
        }

        for (std::size_t j = 0 ; j < corpus.size() ; ++j) {
            const auto & c = corpus[j];
            if (c.signature() != b.signature())
                continue;
            for (auto & map : hom_maps(HomQuery{ b, c, HomMode::hom, std::nullopt })) {
                Homomorphism h{ b, c, map };
                auto lifted = d.lift(h);
                for (std::size_t bi = 0 ; bi < db->blocks().size() ; ++bi) {
                    const auto & block = db->blocks()[bi];
                    for (std::size_t z = 0 ; z < block.map.size() ; ++z) {
                        // ι_{h∘f}(z) = (A, h∘f, z)
                        ElementCode expected{ static_cast<std::int64_t>(block.generator), static_cast<std::int64_t>(z) };
                        for (int v : block.map)
                            expected.push_back(h(v));
                        if (d.code(c, lifted(block.offset + static_cast<int>(z))) == expected)
                            tally.pass(dc1);
                        else
                            tally.fail(dc1, where(bi, z) + " along a map into corpus[" + std::to_string(j) + "]");
                    }
                }
            }
        }
    }
}

auto check_density_laws(const DensityComonad & d, const std::vector<Structure> & corpus, const LawOptions & opts) -> LawReport
{
    auto report = check_comonad_laws(d, corpus, opts);

    const std::vector<std::string> names = {
        "DC1 lift of inclusion", "DC2 counit of inclusion", "DC3 comultiplication of inclusion" };
    std::vector<detail::LawTally> tallies(corpus.size(), detail::LawTally{ names });
    std::vector<std::string> skipped(corpus.size());
    parallel_for(corpus.size(), opts.jobs, [&] (std::size_t i) {
        try {
            check_inclusions(d, corpus, i, tallies[i]);
        }
        catch (const CapExceeded & e) {
            skipped[i] = detail::describe(corpus[i], i) + ": " + e.what();
        }
    });

    detail::LawTally total{ names };
    for (std::size_t i = 0 ; i < corpus.size() ; ++i) {
        total.merge(tallies[i]);
        if (! skipped[i].empty() && std::find(report.skipped.begin(), report.skipped.end(), skipped[i]) == report.skipped.end())
            report.skipped.push_back(skipped[i]);
    }
    for (auto & r : total.report())
        report.laws.push_back(r);
    return report;
}

} // namespace ddc
