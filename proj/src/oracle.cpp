#include "rulek/oracle.hpp"

#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rulek {

namespace {

void check_cap(const UnitDiskGraph& g, std::size_t cap) {
    if (g.size() == 0) throw std::invalid_argument("n: oracle needs at least one vertex");
    if (g.size() > cap || cap > 30) {
        std::ostringstream msg;
        msg << "n: " << g.size() << " exceeds the exhaustive-search cap of " << cap;
        throw std::invalid_argument(msg.str());
    }
}

// Advances `idx` to the next k-combination of 0..n-1 in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

VertexSet ids_of_mask(std::uint32_t mask) {
    VertexSet out;
    for (; mask != 0; mask &= mask - 1)
        out.push_back(static_cast<VertexId>(std::countr_zero(mask) + 1));
    return out;
}

std::size_t mask_components(std::uint32_t set, const std::vector<std::uint32_t>& open_nbhd) {
    std::size_t count = 0;
    std::uint32_t left = set;
    while (left != 0) {
        ++count;
        std::uint32_t reach = left & (~left + 1);
        std::uint32_t prev = 0;
        while (reach != prev) {
            prev = reach;
            for (std::uint32_t r = reach; r != 0; r &= r - 1)
                reach |= open_nbhd[static_cast<std::size_t>(std::countr_zero(r))] & set;
        }
        left &= ~reach;
    }
    return count;
}

}  // namespace

OptResult min_cds_bruteforce(const UnitDiskGraph& g, const GridCdsResult* grid, std::size_t cap) {
    check_cap(g, cap);
    const std::size_t n = g.size();
    OptResult r;
    if (grid != nullptr) r.grid_lower_bound = static_cast<double>(grid->members.size()) / 81.0;

    for (std::size_t size = 1; size <= n; ++size) {
        std::vector<std::size_t> idx(size);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        do {
            VertexSet subset;
            for (std::size_t i : idx) subset.push_back(static_cast<VertexId>(i + 1));
            if (is_cds(g, subset)) {
                r.opt_size = size;
                r.opt_witness = std::move(subset);
                return r;
            }
        } while (next_combination(idx, n));
    }
    throw std::logic_error("oracle: vertex set failed the CDS check");
}

OptResult min_cds_bitmask(const UnitDiskGraph& g, std::size_t cap) {
    check_cap(g, cap);
    const std::size_t n = g.size();
    std::vector<std::uint32_t> open(n, 0);
    for (VertexId v = 1; v <= n; ++v)
        for (VertexId u : g.neighbors(v)) open[v - 1] |= std::uint32_t{1} << (u - 1);

    const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    const std::size_t graph_components = mask_components(full, open);

    std::uint32_t best = full;
    for (std::uint32_t set = 1; set <= full && set != 0; ++set) {
        const int pop = std::popcount(set);
        if (pop > std::popcount(best)) continue;
        std::uint32_t dominated = set;
        for (std::uint32_t r = set; r != 0; r &= r - 1)
            dominated |= open[static_cast<std::size_t>(std::countr_zero(r))];
        if (dominated != full || mask_components(set, open) != graph_components) continue;
        if (pop < std::popcount(best) || ids_of_mask(set) < ids_of_mask(best)) best = set;
        if (set == full) break;
    }
    OptResult r;
    r.opt_witness = ids_of_mask(best);
    r.opt_size = r.opt_witness.size();
    return r;
}

bool factor81_check(const UnitDiskGraph& g, const GridCdsResult& grid) {
    if (grid.members.empty()) return true;
    const std::vector<char> member = membership_mask(g, grid.members);
    for (VertexId v = 1; v <= g.size(); ++v) {
        std::size_t near = member[v] ? 1 : 0;
        for (VertexId u : g.neighbors(v)) near += member[u] ? 1 : 0;
        if (near > 81) return false;
    }
    return true;
}

OptBoundsReport opt_bounds(const UnitDiskGraph& g, const GridCdsResult& grid,
                           const std::optional<OptResult>& opt) {
    OptBoundsReport r;
    r.grid_size = grid.members.size();
    r.grid_lower_bound = static_cast<double>(r.grid_size) / 81.0;
    if (opt) {
        const double side = g.instance().side;
        r.opt_size = opt->opt_size;
        r.bound_holds = static_cast<double>(opt->opt_size) >= r.grid_lower_bound;
        r.below_tenth_side_sq = static_cast<double>(opt->opt_size) < side * side / 10.0;
    }
    return r;
}

}  // namespace rulek
