#pragma once

// The discrete density comonad D_M(B) = ∐_A ∐_{f : M(A) -> B} M(A) of a finite family
// of generators, its comonad structure, coalgebras and comonad morphisms.

#include <ddc/comonad.hpp>
#include <ddc/structure.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace ddc {

struct Caps
{
    /// Largest D(B) built on request.
    std::size_t carrier = 50'000;
    /// Largest structure built internally, in particular D(D(B)).
    std::size_t square = 500'000;
};

class GeneratorFamily
{
public:
    /// Validates pairwise non-isomorphism and, if requested, connectedness.
    GeneratorFamily(Signature sig, std::vector<Structure> generators, bool requires_connected = true,
                    std::vector<std::string> names = {});

    auto signature() const -> const Signature & { return sig_; }
    auto generators() const -> const std::vector<Structure> & { return generators_; }
    auto generator(std::size_t i) const -> const Structure & { return generators_[i]; }
    auto size() const -> std::size_t { return generators_.size(); }
    auto empty() const -> bool { return generators_.empty(); }
    auto requires_connected() const -> bool { return requires_connected_; }
    auto name(std::size_t i) const -> const std::string & { return names_[i]; }
    auto names() const -> const std::vector<std::string> & { return names_; }
    /// Position of the generator isomorphic to s.
    auto index_of(const Structure & s) const -> std::optional<std::size_t>;

    bool operator==(const GeneratorFamily & other) const;

private:
    Signature sig_;
    std::vector<Structure> generators_;
    bool requires_connected_;
    std::vector<std::string> names_;
};

/// D_M(B) together with its block indexing. Element (A, f, x) lives at
/// blocks[block_index(A, f)].offset + x.
class DensityStructure
{
public:
    struct Block
    {
        std::size_t generator;
        /// f : M(A) -> B
        std::vector<int> map;
        int offset;
    };

    struct Triple
    {
        std::size_t generator;
        std::size_t hom_index;
        int element;

        bool operator==(const Triple &) const = default;
    };

    DensityStructure(Structure base, GeneratorFamily family, std::vector<Block> blocks);

    auto base() const -> const Structure & { return base_; }
    auto family() const -> const GeneratorFamily & { return family_; }
    auto carrier() const -> const Structure & { return carrier_; }
    auto blocks() const -> const std::vector<Block> & { return blocks_; }

    auto hom_count(std::size_t generator) const -> std::size_t;
    auto block_index(std::size_t generator, std::size_t hom_index) const -> std::size_t;
    auto block_of(int element) const -> std::size_t;
    auto hom(std::size_t block) const -> Homomorphism;
    auto triple(int element) const -> Triple;
    auto element(std::size_t generator, std::size_t hom_index, int x) const -> int;
    /// Hom index of `map` among the homs from the generator, by binary search.
    auto find_hom(std::size_t generator, std::span<const int> map) const -> std::optional<std::size_t>;

private:
    Structure base_;
    GeneratorFamily family_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> first_block_;
    Structure carrier_;
};

/// Builds D(B). Counts first and throws CapExceeded with the would-be size.
auto apply(const GeneratorFamily & fam, const Structure & b, std::size_t cap = Caps{}.carrier) -> DensityStructure;

/// ι_f : M(A) -> D(B)
auto iota(const DensityStructure & d, std::size_t generator, std::size_t hom_index) -> Homomorphism;
/// D(h) : D(B) -> D(C), given both density structures.
auto lift(const DensityStructure & from, const DensityStructure & to, const Homomorphism & h) -> Homomorphism;
auto counit(const DensityStructure & d) -> Homomorphism;
/// δ_B : D(B) -> D(D(B)); `dd` must be the density structure over d.carrier().
auto comult(const DensityStructure & d, const DensityStructure & dd) -> Homomorphism;

class DensityComonad : public Comonad
{
public:
    explicit DensityComonad(GeneratorFamily fam, Caps caps = {});

    auto family() const -> const GeneratorFamily & { return fam_; }
    auto caps() const -> const Caps & { return caps_; }

    /// Cached D(B), under the carrier cap.
    auto density(const Structure & b) const -> std::shared_ptr<const DensityStructure>;
    /// Cached D(Y) for internal use, under the square cap.
    auto density_internal(const Structure & y) const -> std::shared_ptr<const DensityStructure>;
    void clear_cache() const;

    auto name() const -> std::string override;
    auto apply(const Structure & b) const -> Structure override;
    auto counit(const Structure & b) const -> Homomorphism override;
    auto comult(const Structure & b) const -> Homomorphism override;
    auto lift(const Homomorphism & h) const -> Homomorphism override;
    auto code(const Structure & y, int e) const -> ElementCode override;
    auto lift_code(const Homomorphism & h, int e) const -> ElementCode override;
    auto map_code(const Homomorphism & h, const ElementCode & code) const -> ElementCode override;
    auto comult_code(const Structure & y, int e) const -> ElementCode override;
    auto element_of(const Structure & y, const ElementCode & code) const -> int override;

private:
    auto cached(const Structure & y, std::size_t cap) const -> std::shared_ptr<const DensityStructure>;

    GeneratorFamily fam_;
    Caps caps_;
    mutable std::mutex mutex_;
    mutable std::multimap<std::uint64_t, std::shared_ptr<const DensityStructure>> cache_;
};

/// η_A = ι_id : M(A) -> D(M(A)).
auto canonical_coalgebra(const DensityComonad & d, std::size_t generator) -> Coalgebra;

/// For each component of X (in component order), the generator it is isomorphic to.
auto classify_components(const GeneratorFamily & fam, const Structure & x) -> std::vector<std::optional<std::size_t>>;

/// Transports η along component isomorphisms and assembles the coproduct coalgebra.
/// Throws UnsupportedConfiguration for families with disconnected generators.
auto coalgebra_by_decomposition(const DensityComonad & d, const Structure & x) -> std::optional<Coalgebra>;

struct SearchOptions
{
    int max_elements = 6;
};

/// Direct backtracking search for α : X -> D(X) satisfying the counit and square laws.
/// Returns the first coalgebra in lexicographic order of α, or nothing.
auto coalgebra_by_search(const DensityComonad & d, const Structure & x, const SearchOptions & opts = {}) -> std::optional<Coalgebra>;

/// (D(B), δ_B).
auto cofree(const DensityComonad & d, const Structure & b) -> Coalgebra;

/// Whether the cofree coalgebras on a and b are isomorphic, decided by equality of hom
/// counts from every generator. Valid for connected, pairwise non-isomorphic generators:
/// then D(a) and D(b) are coproducts of generator copies with those multiplicities.
auto cofree_iso(const GeneratorFamily & fam, const Structure & a, const Structure & b) -> bool;

/// Reindexes blocks of D_sub(B) into D_sup(B).
class GradeMorphism : public ComonadMorphism
{
public:
    GradeMorphism(std::shared_ptr<const DensityComonad> sub, std::shared_ptr<const DensityComonad> sup);

    auto source() const -> const Comonad & override { return *sub_; }
    auto target() const -> const Comonad & override { return *sup_; }
    auto component(const Structure & b) const -> Homomorphism override;
    auto component_code(const Structure & y, int e) const -> ElementCode override;
    auto component_code_of(const Structure & y, const ElementCode & code) const -> ElementCode override;

    /// Position in sup of each sub generator.
    auto generator_map() const -> const std::vector<std::size_t> & { return positions_; }

private:
    std::shared_ptr<const DensityComonad> sub_;
    std::shared_ptr<const DensityComonad> sup_;
    std::vector<std::size_t> positions_;
};

/// Throws NotASubfamily unless sub's generators form a sub-list of sup's.
auto grade_morphism(std::shared_ptr<const DensityComonad> sub, std::shared_ptr<const DensityComonad> sup) -> GradeMorphism;

/// φ* : D ⇒ C induced by C-coalgebras on the generators, (A, f, x) ↦ C(f)(α_A(x)).
class WeakInitialMorphism : public ComonadMorphism
{
public:
    /// Validates every coalgebra; a failure throws LawViolation naming the diagram.
    WeakInitialMorphism(std::shared_ptr<const DensityComonad> density, std::shared_ptr<const Comonad> target,
                        std::vector<Coalgebra> coalgebras);

    auto source() const -> const Comonad & override { return *density_; }
    auto target() const -> const Comonad & override { return *target_; }
    auto component(const Structure & b) const -> Homomorphism override;
    auto component_code(const Structure & y, int e) const -> ElementCode override;
    auto component_code_of(const Structure & y, const ElementCode & code) const -> ElementCode override;

    auto coalgebras() const -> const std::vector<Coalgebra> & { return coalgebras_; }

private:
    std::shared_ptr<const DensityComonad> density_;
    std::shared_ptr<const Comonad> target_;
    std::vector<Coalgebra> coalgebras_;
};

auto weak_initial_morphism(std::shared_ptr<const DensityComonad> density, std::shared_ptr<const Comonad> target,
                           std::vector<Coalgebra> coalgebras) -> WeakInitialMorphism;

/// The generic comonad laws plus, for every block and every map h between corpus
/// structures, D(h) ∘ ι_f = ι_{h∘f}, ε ∘ ι_f = f and δ ∘ ι_f = ι_{ι_f}.
auto check_density_laws(const DensityComonad & d, const std::vector<Structure> & corpus, const LawOptions & opts = {}) -> LawReport;

} // namespace ddc
