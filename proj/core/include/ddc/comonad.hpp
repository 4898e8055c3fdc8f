#pragma once

// A behavioural interface for comonads on finite structures, Eilenberg-Moore
// coalgebras, comonad morphisms, and pointwise law checking over a corpus.

#include <ddc/structure.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ddc {

/// A symbolic name for an element of C(Y) that can be formed without materialising
/// C(Y). Codes refer to elements of Y by index, so two codes over the same Y are equal
/// iff they name the same element.
using ElementCode = std::vector<std::int64_t>;

auto to_string(const ElementCode & code) -> std::string;

class Comonad
{
public:
    virtual ~Comonad() = default;

    virtual auto name() const -> std::string = 0;

    /// C(B), materialised.
    virtual auto apply(const Structure & b) const -> Structure = 0;
    /// ε_B : C(B) -> B
    virtual auto counit(const Structure & b) const -> Homomorphism = 0;
    /// δ_B : C(B) -> C(C(B))
    virtual auto comult(const Structure & b) const -> Homomorphism = 0;
    /// C(h) : C(B) -> C(B')
    virtual auto lift(const Homomorphism & h) const -> Homomorphism = 0;

    /// Code of element e of C(y).
    virtual auto code(const Structure & y, int e) const -> ElementCode = 0;
    /// Code of C(h)(e) for e in C(h.source()); does not materialise C(h.target()).
    virtual auto lift_code(const Homomorphism & h, int e) const -> ElementCode = 0;
    /// Code of C(h) applied to the element named by `code` over h.source().
    virtual auto map_code(const Homomorphism & h, const ElementCode & code) const -> ElementCode = 0;
    /// Code of δ_y(e) as an element of C(C(y)), in terms of C(y) indices.
    virtual auto comult_code(const Structure & y, int e) const -> ElementCode = 0;
    /// Index in C(y) of the element named by `code`, or -1.
    virtual auto element_of(const Structure & y, const ElementCode & code) const -> int = 0;
};

struct Coalgebra
{
    Structure carrier;
    /// carrier -> C(carrier)
    Homomorphism alpha;
};

/// Describes the first failed coalgebra law, or nothing when α is a coalgebra.
auto coalgebra_violation(const Comonad & c, const Coalgebra & a) -> std::optional<std::string>;
/// Throws LawViolation naming the failed diagram.
void require_coalgebra(const Comonad & c, const Coalgebra & a);

class ComonadMorphism
{
public:
    virtual ~ComonadMorphism() = default;

    virtual auto source() const -> const Comonad & = 0;
    virtual auto target() const -> const Comonad & = 0;
    /// λ_B : C(B) -> D(B)
    virtual auto component(const Structure & b) const -> Homomorphism = 0;
    /// Code in D(y) of λ_y(e) for e in C(y).
    virtual auto component_code(const Structure & y, int e) const -> ElementCode = 0;
    /// The same for an element of C(y) given by its code, so that C(y) need not exist.
    virtual auto component_code_of(const Structure & y, const ElementCode & code) const -> ElementCode = 0;
};

struct LawResult
{
    std::string law;
    bool passed = true;
    std::size_t checked = 0;
    std::string counterexample;
};

struct LawReport
{
    std::vector<LawResult> laws;
    /// Corpus entries that could not be checked, with the reason (usually a cap).
    std::vector<std::string> skipped;

    auto all_passed() const -> bool;
    auto find(const std::string & law) const -> const LawResult *;
    auto to_string() const -> std::string;
};

struct LawOptions
{
    unsigned jobs = 1;
    /// Check naturality against at most this many homomorphisms per ordered corpus pair.
    std::size_t naturality_limit = 64;
    /// Fault injection for negative controls: replaces δ_B before checking.
    std::function<Homomorphism (const Homomorphism &)> corrupt_comult;
};

/// Counit laws, coassociativity, validity of ε and δ, and agreement of the symbolic
/// codes with the materialised structures, pointwise on every corpus structure.
auto check_comonad_laws(const Comonad & c, const std::vector<Structure> & corpus, const LawOptions & opts = {}) -> LawReport;

/// Counit triangle, comultiplication square and naturality of λ, pointwise.
auto check_comonad_morphism(const ComonadMorphism & m, const std::vector<Structure> & corpus, const LawOptions & opts = {}) -> LawReport;

namespace detail
{
    // Law bookkeeping shared by the generic and density-specific checkers.
    class LawTally
    {
    public:
        explicit LawTally(std::vector<std::string> names);

        void pass(std::size_t law, std::size_t n = 1);
        void fail(std::size_t law, std::string counterexample);
        void merge(const LawTally & other);
        auto report() const -> std::vector<LawResult>;

    private:
        std::vector<LawResult> results_;
    };

    auto describe(const Structure & s, std::size_t index) -> std::string;
}

} // namespace ddc
