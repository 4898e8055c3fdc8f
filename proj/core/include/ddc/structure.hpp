#pragma once

// Finite relational structures, homomorphisms between them, coproducts and
// connected-component decomposition.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ddc {

struct RelationSymbol
{
    std::string name;
    int arity = 0;

    bool operator==(const RelationSymbol &) const = default;
};

/// An ordered relational signature. Graph mode is the special signature with a single
/// symmetric, irreflexive binary relation `E`.
class Signature
{
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> relations);

    static auto graph() -> Signature;

    auto graph_mode() const -> bool { return graph_mode_; }
    auto relations() const -> const std::vector<RelationSymbol> & { return relations_; }
    auto relation_count() const -> std::size_t { return relations_.size(); }
    auto arity(std::size_t r) const -> int { return relations_[r].arity; }
    auto find(std::string_view name) const -> std::optional<std::size_t>;

    auto to_string() const -> std::string;

    bool operator==(const Signature &) const = default;

private:
    std::vector<RelationSymbol> relations_;
    bool graph_mode_ = false;
};

/// An immutable finite structure on the universe {0, ..., size-1}. Copies share storage.
///
/// Tuples are kept per relation in a flat, lexicographically sorted, duplicate-free
/// array. In graph mode both orientations of every edge are stored.
class Structure
{
public:
    /// The empty graph.
    Structure();

    /// Normalises the tuples (sorting, deduplication, symmetric closure in graph mode)
    /// and validates them. `flat_tuples[r]` holds the tuples of relation r back to back.
    Structure(Signature sig, int size, std::vector<std::vector<int>> flat_tuples);

    /// Skips normalisation: tuples must already be sorted, unique, in range and (in graph
    /// mode) symmetric and loop-free.
    static auto assume_normalized(Signature sig, int size, std::vector<std::vector<int>> flat_tuples) -> Structure;

    static auto graph(int n, std::span<const std::pair<int, int>> edges) -> Structure;
    static auto graph(int n, std::initializer_list<std::pair<int, int>> edges) -> Structure;
    static auto empty(Signature sig, int n = 0) -> Structure;

    auto signature() const -> const Signature &;
    auto is_graph() const -> bool;
    auto size() const -> int;
    auto relation_count() const -> std::size_t;
    auto arity(std::size_t r) const -> int;
    auto tuple_count(std::size_t r) const -> std::size_t;
    auto tuple(std::size_t r, std::size_t i) const -> std::span<const int>;
    auto flat_tuples(std::size_t r) const -> std::span<const int>;
    auto contains(std::size_t r, std::span<const int> t) const -> bool;
    auto total_tuple_count() const -> std::size_t;

    /// Neighbours in the Gaifman graph, sorted. For graphs these are the edge neighbours.
    auto neighbors(int x) const -> std::span<const int>;
    /// Graph mode only.
    auto adjacent(int u, int v) const -> bool;
    /// Number of undirected edges (graph mode only).
    auto edge_count() const -> std::size_t;
    auto degree(int x) const -> int { return static_cast<int>(neighbors(x).size()); }

    /// Ids of the tuples of relation r in which x occurs (each tuple once).
    auto incident(std::size_t r, int x) const -> std::span<const std::uint32_t>;

    auto hash() const -> std::uint64_t;
    auto same_object(const Structure & other) const -> bool { return d_ == other.d_; }

    bool operator==(const Structure & other) const;

private:
    struct Data;
    explicit Structure(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static auto build(Signature sig, int size, std::vector<std::vector<int>> flat_tuples) -> Structure;

    std::shared_ptr<const Data> d_;
};

/// A total map between universes. The constructor does not validate; use `checked` or
/// `is_homomorphism` when the map comes from outside.
class Homomorphism
{
public:
    Homomorphism(Structure source, Structure target, std::vector<int> map);

    static auto checked(Structure source, Structure target, std::vector<int> map) -> Homomorphism;
    static auto identity(const Structure & s) -> Homomorphism;

    auto source() const -> const Structure & { return source_; }
    auto target() const -> const Structure & { return target_; }
    auto map() const -> const std::vector<int> & { return map_; }
    auto operator()(int x) const -> int { return map_[static_cast<std::size_t>(x)]; }

    auto is_injective() const -> bool;
    auto is_surjective() const -> bool;
    auto is_valid() const -> bool;

    bool operator==(const Homomorphism & other) const;

private:
    Structure source_;
    Structure target_;
    std::vector<int> map_;
};

auto is_homomorphism(const Structure & source, const Structure & target, std::span<const int> map) -> bool;

/// g after f.
auto compose(const Homomorphism & g, const Homomorphism & f) -> Homomorphism;

struct Coproduct
{
    Structure sum;
    std::vector<Homomorphism> injections;
};

/// Disjoint union; part i occupies a contiguous range after parts 0..i-1. The empty list
/// yields the empty structure over `sig_if_empty`.
auto coproduct(std::span<const Structure> parts, const Signature & sig_if_empty = Signature::graph()) -> Coproduct;
auto disjoint_union(const Structure & a, const Structure & b) -> Structure;

auto gaifman(const Structure & s) -> Structure;

struct ComponentDecomposition
{
    std::vector<Structure> components;
    std::vector<Homomorphism> inclusions;
    /// For every original element, (component index, local index).
    std::vector<std::pair<int, int>> witness;
};

/// Gaifman components ordered by their smallest element; local indices preserve order.
auto components(const Structure & s) -> ComponentDecomposition;
auto component_count(const Structure & s) -> int;
auto is_connected(const Structure & s) -> bool;

/// Substructure induced on `elements` (taken in the given order).
auto induced(const Structure & s, std::span<const int> elements) -> Structure;

/// Copy with element x renamed to perm[x].
auto relabel(const Structure & s, std::span<const int> perm) -> Structure;

/// An isomorphism witness a -> b, or nothing.
auto is_isomorphic(const Structure & a, const Structure & b) -> std::optional<Homomorphism>;

/// Text format: `graph` or `signature R/2 ...`, then `universe n`, then one tuple per line.
auto serialize(const Structure & s) -> std::string;
auto parse_structure(std::string_view text) -> Structure;
auto read_structure(const std::filesystem::path & path) -> Structure;
void write_structure(const std::filesystem::path & path, const Structure & s);

auto fnv1a64(std::string_view bytes) -> std::uint64_t;

} // namespace ddc
