#pragma once

// Canonical labelling of small graphs and exhaustive enumeration up to isomorphism.

#include <ddc/structure.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ddc {

struct CanonicalForm
{
    /// labeling[v] is the canonical position of vertex v.
    std::vector<int> labeling;
    /// Adjacency rows of the relabelled graph, bit j of rows[i] set iff i ~ j.
    std::vector<std::uint64_t> rows;
};

/// Graph mode only, at most 64 vertices. Isomorphic graphs get identical `rows`.
auto canonical_form(const Structure & g) -> CanonicalForm;
auto canonical_graph(const Structure & g) -> Structure;
/// Serialization of the canonical graph; equal iff the graphs are isomorphic.
auto canonical_key(const Structure & g) -> std::string;

/// Short readable name: K1, K4, C5, P4 (path on 4 vertices), K1,3, components joined by
/// '+', and G<n>_<hash> for anything else. Non-graphs are named S<n>_<hash>.
auto graph_name(const Structure & g) -> std::string;

inline constexpr int max_enumerated_order = 8;

/// All graphs on exactly n vertices up to isomorphism, each in canonical labelling,
/// sorted by canonical serialization. Cached; n ≤ max_enumerated_order.
auto all_graphs(int n) -> const std::vector<Structure> &;
auto all_graphs_up_to(int max_n) -> std::vector<Structure>;
auto connected_graphs(int n) -> std::vector<Structure>;

} // namespace ddc
