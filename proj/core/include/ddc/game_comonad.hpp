#pragma once

// The k-round Ehrenfeucht-Fraïssé comonad E_k and its coalgebras, which correspond to
// forest covers of depth at most k.

#include <ddc/comonad.hpp>
#include <ddc/density.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ddc {

/// E_k(A): nonempty sequences over A of length at most k. A relation holds on a tuple of
/// sequences iff they are pairwise prefix-comparable and it holds on their last
/// elements. Sequences are packed by length, then lexicographically.
auto ef_apply(int k, const Structure & a, std::size_t cap = Caps{}.carrier) -> Structure;

/// Index of a sequence in E_k over a universe of n elements.
auto ef_pack(std::span<const int> sequence, int n) -> std::int64_t;
auto ef_unpack(std::int64_t index, int n) -> std::vector<int>;
auto ef_size(int k, int n) -> std::size_t;

class EFComonad : public Comonad
{
public:
    explicit EFComonad(int k, Caps caps = {});

    auto k() const -> int { return k_; }

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
    auto cached(const Structure & y, std::size_t cap) const -> Structure;

    int k_;
    Caps caps_;
    mutable std::mutex mutex_;
    mutable std::multimap<std::uint64_t, std::pair<Structure, Structure>> cache_;
};

struct ForestCover
{
    Structure structure;
    /// parent[x] is x's parent, or -1 for a root.
    std::vector<int> parent;
};

/// Throws InvalidArgument naming the violated invariant.
void validate_forest_cover(const ForestCover & cover, int k);
auto forest_depth(const ForestCover & cover) -> int;

/// α(x) = the root-to-x path.
auto ef_coalgebra_from_forest(const EFComonad & e, const ForestCover & cover) -> Coalgebra;

/// Some forest cover of depth at most k, found by exhaustive elimination search.
auto ef_find_forest_cover(const Structure & a, int k) -> std::optional<ForestCover>;
auto ef_admits_coalgebra(int k, const Structure & a) -> bool;

} // namespace ddc
