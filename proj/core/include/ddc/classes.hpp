#pragma once

// Component-based graph classes: membership, bounded-size generator families, and
// closure checks on finite snapshots.

#include <ddc/density.hpp>
#include <ddc/structure.hpp>

#include <functional>
#include <string>
#include <vector>

namespace ddc {

struct ClassSpec
{
    std::string name;
    /// Decides membership of a connected graph.
    std::function<bool (const Structure &)> connected_predicate;
    bool monotone = false;
};

/// cycles, trees, paths, bipartite, planar, cores, td<=K, tw<K, pw<K, maxdeg<=K.
/// Unknown names throw InvalidArgument listing the valid ones.
auto class_by_name(const std::string & name) -> ClassSpec;
auto class_names() -> std::vector<std::string>;

inline constexpr int max_generator_size = 7;

/// Connected members with at most max_size vertices, one per isomorphism class,
/// ordered by size and then canonical serialization.
auto generators(const ClassSpec & spec, int max_size) -> GeneratorFamily;

/// Every Gaifman component satisfies the predicate.
auto membership(const ClassSpec & spec, const Structure & g) -> bool;

struct SnapshotReport
{
    bool iso_closed = true;
    bool summand_closed = true;
    bool coproduct_closed = true;
    std::vector<std::string> violations;

    auto passed() const -> bool { return iso_closed && summand_closed && coproduct_closed; }
};

/// On a finite list of structures: relabelled copies are recognised as members,
/// components of members are members, and disjoint unions of members (up to the
/// largest member size) are members.
auto component_based_snapshot_check(const std::vector<Structure> & family) -> SnapshotReport;

/// K_n with every edge subdivided, p times over.
auto subdivided_clique(int n, int p) -> Structure;

/// Every endomorphism is an automorphism.
auto is_core(const Structure & g) -> bool;

/// Kuratowski test: reduction, the edge bound, then an exhaustive search for a
/// subdivided K5 or K3,3.
auto is_planar(const Structure & g) -> bool;

auto is_bipartite(const Structure & g) -> bool;

} // namespace ddc
