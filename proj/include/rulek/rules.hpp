#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "rulek/graph.hpp"
#include "rulek/random.hpp"

namespace rulek {

struct RuleKOptions {
    /// Accept connected covering sets of 1..k higher-ID neighbors instead of
    /// exactly k (the "k or fewer" reading).
    bool at_most_k = false;
    /// Search nodes allowed per vertex before giving up with WorkCapExceeded.
    std::uint64_t work_cap = 1'000'000;
};

/// The witness search for one vertex exceeded RuleKOptions::work_cap.
class WorkCapExceeded : public std::runtime_error {
public:
    WorkCapExceeded(VertexId vertex, std::uint64_t cap);
    [[nodiscard]] VertexId vertex() const noexcept { return vertex_; }

private:
    VertexId vertex_;
};

struct CdsResult {
    VertexSet members;
    std::size_t size = 0;            // C_k
    std::size_t excluded_count = 0;  // U_k = n - C_k
    bool verified_dominating = false;
    bool verified_component_preserving = false;
};

struct GridCdsResult {
    VertexSet members;
    std::size_t cells_per_side = 0;
    double cell_side = 0.0;
    bool all_cells_occupied = false;
};

/// Rule k: vertex i is dropped iff some set of k distinct neighbors, all with
/// IDs above i, induces a connected subgraph and their closed neighborhoods
/// jointly cover N(i). Each decision reads only the 2-hop neighborhood of i.
///
/// The search branches on the uncovered element of N(i) with the fewest
/// coverers, so every covering set it reaches is contained in any witness
/// compatible with the branch; partial covers are then grown into connected
/// k-sets through vertices adjacent to the current set. This decides exactly
/// the same predicate as enumerating all k-subsets.
[[nodiscard]] CdsResult rule_k(const UnitDiskGraph& g, unsigned k, const RuleKOptions& opts = {});

/// Rule k over a candidate subset: only candidates can be members and
/// witnesses must be candidates, while coverage still targets all of N(i).
[[nodiscard]] CdsResult rule_k_restricted(const UnitDiskGraph& g, unsigned k,
                                          std::span<const VertexId> candidates,
                                          const RuleKOptions& opts = {});

/// Vertices with two distinct non-adjacent neighbors.
[[nodiscard]] VertexSet marking_process(const UnitDiskGraph& g);

/// Vertices whose ID exceeds every neighbor's ID. Never dropped by Rule k.
[[nodiscard]] VertexSet local_maxima(const UnitDiskGraph& g);

/// Partitions the square into floor(3*side)^2 half-open cells (the last row
/// and column are closed at the square boundary) and picks one vertex
/// uniformly from each nonempty cell, visiting cells in row-major order.
[[nodiscard]] GridCdsResult grid_cds(const UnitDiskGraph& g, Rng& rng);

}  // namespace rulek
