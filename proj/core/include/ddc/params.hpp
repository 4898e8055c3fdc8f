#pragma once

// Graph parameters with values in the extended integers, graded generator families
// and the coalgebra number.

#include <ddc/density.hpp>
#include <ddc/structure.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ddc {

class ExtReal
{
public:
    constexpr ExtReal(std::int64_t v = 0) : kind_(Kind::finite), value_(v) {}

    static constexpr auto neg_inf() -> ExtReal { return ExtReal{ Kind::neg_inf }; }
    static constexpr auto pos_inf() -> ExtReal { return ExtReal{ Kind::pos_inf }; }

    constexpr auto is_finite() const -> bool { return kind_ == Kind::finite; }
    constexpr auto is_neg_inf() const -> bool { return kind_ == Kind::neg_inf; }
    constexpr auto is_pos_inf() const -> bool { return kind_ == Kind::pos_inf; }
    /// Finite values only.
    auto value() const -> std::int64_t;

    constexpr auto operator<=>(const ExtReal & o) const -> std::strong_ordering
    {
        if (kind_ != o.kind_)
            return kind_ <=> o.kind_;
        return kind_ == Kind::finite ? value_ <=> o.value_ : std::strong_ordering::equal;
    }
    constexpr bool operator==(const ExtReal & o) const { return (*this <=> o) == 0; }

    /// "-inf", "+inf" or the integer.
    auto to_string() const -> std::string;
    static auto parse(const std::string & text) -> ExtReal;

private:
    enum class Kind { neg_inf = 0, finite = 1, pos_inf = 2 };
    constexpr explicit ExtReal(Kind k) : kind_(k), value_(0) {}

    Kind kind_;
    std::int64_t value_;
};

inline constexpr int default_param_vertex_cap = 10;

// All evaluators work on the Gaifman graph and return -inf on the empty graph (the
// maximum over no components), except girth, which is +inf on acyclic graphs.
auto tree_depth(const Structure & g, int vertex_cap = default_param_vertex_cap) -> ExtReal;
auto tree_width(const Structure & g, int vertex_cap = default_param_vertex_cap) -> ExtReal;
auto path_width(const Structure & g, int vertex_cap = default_param_vertex_cap) -> ExtReal;
auto max_degree(const Structure & g) -> ExtReal;
auto clique_number(const Structure & g, int vertex_cap = default_param_vertex_cap) -> ExtReal;
auto chromatic_number(const Structure & g, int vertex_cap = default_param_vertex_cap) -> ExtReal;
auto girth(const Structure & g) -> ExtReal;

struct Parameter
{
    std::string name;
    std::function<ExtReal (const Structure &)> eval;
};

/// td, tw, pw, maxdeg, clique, chromatic, girth.
auto parameter_by_name(const std::string & name) -> Parameter;
auto parameter_names() -> std::vector<std::string>;

struct StandardnessReport
{
    bool passed = true;
    std::size_t pairs_checked = 0;
    std::vector<std::string> violations;
};

/// Checks μ(A + B) = max(μ(A), μ(B)) on all ordered pairs from the corpus.
auto is_standard_on(const Parameter & param, const std::vector<Structure> & corpus) -> StandardnessReport;

/// Grades of a parameter: grade k holds the connected graphs with μ ≤ k up to the size
/// bound; -inf holds nothing and +inf holds every connected graph.
struct GradedFamily
{
    std::string parameter;
    int max_size = 0;
    std::map<ExtReal, GeneratorFamily> grades;
};

/// Integer grades k_min..k_max plus both infinities.
auto graded_family(const Parameter & param, int max_size, int k_min, int k_max) -> GradedFamily;

struct CoalgebraNumber
{
    ExtReal value;
    /// Generator names used by the witnessing coalgebra, in component order.
    std::vector<std::string> witnesses;
};

/// Smallest grade whose density comonad admits a coalgebra on g. Throws OutOfRange when
/// a component of g is larger than the generator bound.
auto coalgebra_number(const GradedFamily & gf, const Structure & g) -> CoalgebraNumber;

} // namespace ddc
