#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rulek/geometry.hpp"

namespace rulek {

/// Vertex identifier. IDs run 1..n in generation order and double as the
/// totally ordered unique identifiers that Rule k compares.
using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex IDs.
using VertexSet = std::vector<VertexId>;

/// n points in [0, side]^2; point i (0-based) carries ID i + 1.
struct Instance {
    double side = 0.0;
    std::vector<Point> points;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] Point position(VertexId id) const { return points.at(id - 1); }
};

/// Unit disk graph: u ~ v iff u != v and d(u, v) <= 1. Immutable once built.
class UnitDiskGraph {
public:
    [[nodiscard]] std::size_t size() const noexcept { return offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    [[nodiscard]] const Instance& instance() const noexcept { return instance_; }

    /// Neighbor IDs of `id`, ascending. `id` must be in range (unchecked).
    [[nodiscard]] std::span<const VertexId> neighbors(VertexId id) const noexcept {
        return {targets_.data() + offsets_[id - 1], targets_.data() + offsets_[id]};
    }
    [[nodiscard]] std::size_t degree(VertexId id) const noexcept {
        return offsets_[id] - offsets_[id - 1];
    }
    /// Binary search in the sorted adjacency of u.
    [[nodiscard]] bool adjacent(VertexId u, VertexId v) const noexcept;
    [[nodiscard]] bool contains(VertexId id) const noexcept {
        return id >= 1 && id <= size();
    }

    friend UnitDiskGraph build_graph(Instance inst);
    friend UnitDiskGraph graph_from_adjacency(Instance inst,
                                              std::vector<std::vector<VertexId>> adjacency);

private:
    Instance instance_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> targets_;
};

/// Builds the unit disk graph with a uniform grid of unit cells; candidate
/// neighbors come from the 3x3 block of cells around each point.
[[nodiscard]] UnitDiskGraph build_graph(Instance inst);

/// Wraps an explicit adjacency structure (0-based outer index, 1-based IDs).
/// Lists are sorted and symmetrized; intended for tests and fixtures.
[[nodiscard]] UnitDiskGraph graph_from_adjacency(Instance inst,
                                                 std::vector<std::vector<VertexId>> adjacency);

/// {id} ∪ neighbors(id). Throws std::out_of_range for a bad ID.
[[nodiscard]] VertexSet closed_neighborhood(const UnitDiskGraph& g, VertexId id);

/// Connected components of the subgraph induced by `subset`.
[[nodiscard]] std::size_t component_count(const UnitDiskGraph& g, std::span<const VertexId> subset);
[[nodiscard]] std::size_t component_count(const UnitDiskGraph& g);

[[nodiscard]] bool is_dominating(const UnitDiskGraph& g, std::span<const VertexId> subset);

/// Dominating, and the induced subgraph has as many components as g.
[[nodiscard]] bool is_cds(const UnitDiskGraph& g, std::span<const VertexId> subset);

/// All IDs 1..n.
[[nodiscard]] VertexSet all_vertices(const UnitDiskGraph& g);

/// Membership mask indexed by ID (slot 0 unused). Throws std::out_of_range
/// for IDs outside 1..n.
[[nodiscard]] std::vector<char> membership_mask(const UnitDiskGraph& g,
                                                std::span<const VertexId> subset);

}  // namespace rulek
