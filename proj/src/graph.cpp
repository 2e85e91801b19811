#include "rulek/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rulek {

namespace {

void check_id(const UnitDiskGraph& g, VertexId id) {
    if (!g.contains(id)) {
        std::ostringstream msg;
        msg << "id: " << id << " outside 1.." << g.size();
        throw std::out_of_range(msg.str());
    }
}

}  // namespace

void Instance::validate() const {
    SquareRegion q(side);
    if (points.empty()) throw std::invalid_argument("points: instance needs n >= 1");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!is_finite(points[i]) || !q.contains(points[i])) {
            std::ostringstream msg;
            msg << "points[" << i << "]: (" << points[i].x << ", " << points[i].y
                << ") outside [0, " << side << "]^2";
            throw std::invalid_argument(msg.str());
        }
    }
}

bool UnitDiskGraph::adjacent(VertexId u, VertexId v) const noexcept {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

UnitDiskGraph build_graph(Instance inst) {
    inst.validate();
    const std::size_t n = inst.size();
    const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(inst.side)));
    const auto cell_of = [cells](double c) {
        return std::min(static_cast<std::size_t>(c), cells - 1);
    };

    // Counting sort of points into cells.
    std::vector<std::size_t> cell_start(cells * cells + 1, 0);
    std::vector<std::size_t> cell_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = inst.points[i];
        cell_index[i] = cell_of(p.y) * cells + cell_of(p.x);
        ++cell_start[cell_index[i] + 1];
    }
    for (std::size_t c = 0; c < cells * cells; ++c) cell_start[c + 1] += cell_start[c];
    std::vector<std::size_t> cursor(cell_start.begin(), cell_start.end() - 1);
    std::vector<std::uint32_t> members(n);
    for (std::size_t i = 0; i < n; ++i) members[cursor[cell_index[i]]++] = static_cast<std::uint32_t>(i);

    UnitDiskGraph g;
    g.offsets_.assign(n + 1, 0);
    std::vector<VertexId> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = inst.points[i];
        const std::size_t cx = cell_of(p.x);
        const std::size_t cy = cell_of(p.y);
        scratch.clear();
        for (std::size_t yy = cy == 0 ? 0 : cy - 1; yy <= std::min(cy + 1, cells - 1); ++yy) {
            for (std::size_t xx = cx == 0 ? 0 : cx - 1; xx <= std::min(cx + 1, cells - 1); ++xx) {
                const std::size_t c = yy * cells + xx;
                for (std::size_t s = cell_start[c]; s < cell_start[c + 1]; ++s) {
                    const std::uint32_t j = members[s];
                    if (j != i && within_unit(p, inst.points[j])) scratch.push_back(j + 1);
                }
            }
        }
        std::sort(scratch.begin(), scratch.end());
        g.targets_.insert(g.targets_.end(), scratch.begin(), scratch.end());
        g.offsets_[i + 1] = g.targets_.size();
    }
    g.instance_ = std::move(inst);
    return g;
}

UnitDiskGraph graph_from_adjacency(Instance inst, std::vector<std::vector<VertexId>> adjacency) {
    const std::size_t n = inst.size();
    if (adjacency.size() != n) throw std::invalid_argument("adjacency: size must equal point count");
    std::vector<std::vector<VertexId>> sym(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (VertexId v : adjacency[i]) {
            if (v < 1 || v > n || v == i + 1) throw std::invalid_argument("adjacency: bad neighbor ID");
            sym[i].push_back(v);
            sym[v - 1].push_back(static_cast<VertexId>(i + 1));
        }
    }
    UnitDiskGraph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& list = sym[i];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.targets_.insert(g.targets_.end(), list.begin(), list.end());
        g.offsets_[i + 1] = g.targets_.size();
    }
    g.instance_ = std::move(inst);
    return g;
}

VertexSet closed_neighborhood(const UnitDiskGraph& g, VertexId id) {
    check_id(g, id);
    const auto nb = g.neighbors(id);
    VertexSet out(nb.begin(), nb.end());
    out.insert(std::lower_bound(out.begin(), out.end(), id), id);
    return out;
}

std::vector<char> membership_mask(const UnitDiskGraph& g, std::span<const VertexId> subset) {
    std::vector<char> mask(g.size() + 1, 0);
    for (VertexId v : subset) {
        check_id(g, v);
        mask[v] = 1;
    }
    return mask;
}

std::size_t component_count(const UnitDiskGraph& g, std::span<const VertexId> subset) {
    std::vector<char> mask = membership_mask(g, subset);
    std::size_t components = 0;
    std::vector<VertexId> stack;
    for (VertexId start : subset) {
        if (mask[start] != 1) continue;
        ++components;
        mask[start] = 2;
        stack.push_back(start);
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(u)) {
                if (mask[w] == 1) {
                    mask[w] = 2;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

std::size_t component_count(const UnitDiskGraph& g) {
    const VertexSet all = all_vertices(g);
    return component_count(g, all);
}

bool is_dominating(const UnitDiskGraph& g, std::span<const VertexId> subset) {
    const std::vector<char> mask = membership_mask(g, subset);
    for (VertexId v = 1; v <= g.size(); ++v) {
        if (mask[v]) continue;
        const auto nb = g.neighbors(v);
        if (std::none_of(nb.begin(), nb.end(), [&](VertexId u) { return mask[u] != 0; }))
            return false;
    }
    return true;
}

bool is_cds(const UnitDiskGraph& g, std::span<const VertexId> subset) {
    return is_dominating(g, subset) && component_count(g, subset) == component_count(g);
}

VertexSet all_vertices(const UnitDiskGraph& g) {
    VertexSet out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<VertexId>(i + 1);
    return out;
}

}  // namespace rulek
