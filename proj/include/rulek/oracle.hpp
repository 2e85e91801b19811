#pragma once

#include <optional>

#include "rulek/graph.hpp"
#include "rulek/rules.hpp"

namespace rulek {

inline constexpr std::size_t kDefaultOracleCap = 16;

struct OptResult {
    std::size_t opt_size = 0;
    VertexSet opt_witness;
    /// |C_rand| / 81 when a grid construction was supplied, else 0.
    double grid_lower_bound = 0.0;
};

/// Exhaustive minimum CDS search by increasing cardinality; among optima the
/// lexicographically smallest witness wins. Throws std::invalid_argument for
/// n = 0 or n above `cap`.
[[nodiscard]] OptResult min_cds_bruteforce(const UnitDiskGraph& g,
                                           const GridCdsResult* grid = nullptr,
                                           std::size_t cap = kDefaultOracleCap);

/// Second exhaustive search: walks every bitmask in numeric order and checks
/// domination and components with neighborhood bitmasks. Same tie-break.
[[nodiscard]] OptResult min_cds_bitmask(const UnitDiskGraph& g,
                                        std::size_t cap = kDefaultOracleCap);

/// Every vertex has at most 81 grid members within distance 1.
[[nodiscard]] bool factor81_check(const UnitDiskGraph& g, const GridCdsResult& grid);

struct OptBoundsReport {
    std::size_t grid_size = 0;
    double grid_lower_bound = 0.0;
    std::optional<std::size_t> opt_size;
    /// opt_size >= |C_rand| / 81; present only with an optimum.
    std::optional<bool> bound_holds;
    /// opt_size < side^2 / 10; present only with an optimum.
    std::optional<bool> below_tenth_side_sq;
};

[[nodiscard]] OptBoundsReport opt_bounds(const UnitDiskGraph& g, const GridCdsResult& grid,
                                         const std::optional<OptResult>& opt);

}  // namespace rulek
