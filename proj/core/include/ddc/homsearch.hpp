#pragma once

// Backtracking enumeration and counting of homomorphisms, monomorphisms and isomorphisms.

#include <ddc/bigint.hpp>
#include <ddc/structure.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ddc {

enum class HomMode { hom, mono, iso };

struct HomQuery
{
    Structure source;
    Structure target;
    HomMode mode = HomMode::hom;
    /// Enumeration fails with CapExceeded once more than `limit` maps are found.
    std::optional<std::size_t> limit;
};

/// Visits every map in search order (not lexicographic). Returning false stops the search.
void for_each_hom(const HomQuery & q, const std::function<bool (std::span<const int>)> & visit);

/// All maps, sorted lexicographically.
auto hom_maps(const HomQuery & q) -> std::vector<std::vector<int>>;
auto enumerate_homs(const HomQuery & q) -> std::vector<Homomorphism>;

auto count_homs(const Structure & source, const Structure & target, HomMode mode = HomMode::hom) -> BigInt;
auto exists_hom(const Structure & source, const Structure & target, HomMode mode = HomMode::hom) -> bool;
auto find_hom(const Structure & source, const Structure & target, HomMode mode = HomMode::hom) -> std::optional<Homomorphism>;

} // namespace ddc
