#pragma once

// Homomorphism-count vectors and the combinatorial relations they characterise:
// co-spectrality, fractional isomorphism (colour refinement) and isomorphism of
// bipartite double covers.

#include <ddc/bigint.hpp>
#include <ddc/density.hpp>
#include <ddc/structure.hpp>

#include <string>
#include <vector>

namespace ddc {

struct HomVector
{
    std::vector<std::string> generators;
    std::vector<BigInt> counts;

    bool operator==(const HomVector & other) const { return counts == other.counts; }
    auto to_string() const -> std::string;
};

auto hom_vector(const GeneratorFamily & fam, const Structure & g, unsigned jobs = 1) -> HomVector;
auto lovasz_equiv(const GeneratorFamily & fam, const Structure & a, const Structure & b) -> bool;

/// Coefficients in ascending order of degree; the leading one is 1.
struct CharPoly
{
    std::vector<BigInt> coefficients;

    auto degree() const -> int { return static_cast<int>(coefficients.size()) - 1; }
    bool operator==(const CharPoly &) const = default;
    /// e.g. "x^5 - 4x^3"
    auto to_string() const -> std::string;
};

/// det(xI - A) by the Faddeev-LeVerrier recurrence in exact arithmetic.
auto char_poly(const Structure & g) -> CharPoly;
auto cospectral(const Structure & a, const Structure & b) -> bool;

using IntMatrix = std::vector<std::vector<BigInt>>;
auto adjacency_matrix(const Structure & g) -> IntMatrix;
/// trace(A^k): the number of closed walks of length k.
auto closed_walks(const Structure & g, int k) -> BigInt;

/// G × K2: vertex v becomes v and v + n; uv ∈ E gives u ~ v + n and u + n ~ v.
auto bipartite_double_cover(const Structure & g) -> Structure;
auto double_cover_iso(const Structure & a, const Structure & b) -> bool;

/// Colourings from each refinement round until the partition is stable. Colours are
/// canonical: they depend only on the isomorphism type of the coloured graph.
auto color_refinement(const Structure & g) -> std::vector<std::vector<int>>;

/// Runs refinement on the disjoint union and compares colour-class sizes per round.
auto fractional_iso(const Structure & a, const Structure & b) -> bool;

enum class RowStatus { agree_true, agree_false, inconclusive, contradiction, not_applicable };

auto to_string(RowStatus s) -> std::string;

struct RelationRow
{
    std::string hom_class;
    std::string oracle;
    /// Hom counts agree on the truncated family.
    bool hom_equal = false;
    bool oracle_equal = false;
    RowStatus status = RowStatus::not_applicable;
    std::string note;
};

struct RelationReport
{
    std::vector<RelationRow> rows;

    auto table() const -> std::string;
    /// key=value lines
    auto machine() const -> std::string;
};

/// cycles vs co-spectrality (equal orders only), trees vs fractional isomorphism,
/// connected bipartite graphs vs double covers, each hom family truncated at max_size.
auto relation_report(const Structure & a, const Structure & b, int max_size) -> RelationReport;

} // namespace ddc
