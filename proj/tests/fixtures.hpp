#pragma once

// Shared fixtures and independent reference implementations used as test
// oracles. Nothing here calls into the code paths it is compared against.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

#include "rulek/experiments.hpp"
#include "rulek/graph.hpp"
#include "rulek/random.hpp"

namespace fixtures {

using rulek::Instance;
using rulek::Point;
using rulek::UnitDiskGraph;
using rulek::VertexId;
using rulek::VertexSet;

inline UnitDiskGraph graph_of(std::vector<Point> pts, double side = 10.0) {
    return rulek::build_graph(Instance{side, std::move(pts)});
}

inline UnitDiskGraph path3() { return graph_of({{0, 0}, {1, 0}, {2, 0}}); }
inline UnitDiskGraph k4_cluster() { return graph_of({{1, 1}, {1.1, 1}, {1, 1.1}, {1.1, 1.1}}); }
inline UnitDiskGraph singleton() { return graph_of({{0, 0}}); }
inline UnitDiskGraph two_isolated() { return graph_of({{0, 0}, {5, 5}}); }

inline UnitDiskGraph random_graph(rulek::Rng& rng, std::size_t n, double side) {
    Instance inst{side, {}};
    for (std::size_t i = 0; i < n; ++i) inst.points.push_back({rng.uniform01() * side, rng.uniform01() * side});
    return rulek::build_graph(std::move(inst));
}

/// All-pairs adjacency straight from the distance definition.
inline std::vector<std::vector<VertexId>> brute_adjacency(const Instance& inst) {
    std::vector<std::vector<VertexId>> adj(inst.size());
    for (std::size_t i = 0; i < inst.size(); ++i)
        for (std::size_t j = 0; j < inst.size(); ++j)
            if (i != j && rulek::distance(inst.points[i], inst.points[j]) <= 1.0)
                adj[i].push_back(static_cast<VertexId>(j + 1));
    return adj;
}

inline std::set<VertexId> closed_nbhd_set(const UnitDiskGraph& g, VertexId v) {
    std::set<VertexId> s(g.neighbors(v).begin(), g.neighbors(v).end());
    s.insert(v);
    return s;
}

inline bool induced_connected(const UnitDiskGraph& g, const std::vector<VertexId>& set) {
    if (set.empty()) return false;
    std::vector<char> seen(set.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < set.size(); ++b) {
            if (!seen[b] && g.adjacent(set[a], set[b])) {
                seen[b] = 1;
                ++reached;
                stack.push_back(b);
            }
        }
    }
    return reached == set.size();
}

/// Rule k by plain enumeration of every subset of higher-ID neighbors of the
/// admissible sizes, in lexicographic order.
inline VertexSet rule_k_naive(const UnitDiskGraph& g, unsigned k, bool at_most_k,
                              const std::vector<char>* candidates = nullptr) {
    VertexSet members;
    for (VertexId v = 1; v <= g.size(); ++v) {
        if (candidates && !(*candidates)[v]) continue;
        std::vector<VertexId> higher;
        for (VertexId u : g.neighbors(v))
            if (u > v && (!candidates || (*candidates)[u])) higher.push_back(u);
        const std::set<VertexId> target = closed_nbhd_set(g, v);

        bool excluded = false;
        const unsigned lo = at_most_k ? 1 : k;
        for (unsigned size = lo; size <= k && !excluded && size <= higher.size(); ++size) {
            std::vector<VertexId> pick;
            std::function<void(std::size_t)> rec = [&](std::size_t from) {
                if (excluded) return;
                if (pick.size() == size) {
                    if (!induced_connected(g, pick)) return;
                    std::set<VertexId> cover;
                    for (VertexId w : pick) {
                        auto s = closed_nbhd_set(g, w);
                        cover.insert(s.begin(), s.end());
                    }
                    excluded = std::includes(cover.begin(), cover.end(), target.begin(), target.end());
                    return;
                }
                for (std::size_t i = from; i < higher.size(); ++i) {
                    pick.push_back(higher[i]);
                    rec(i + 1);
                    pick.pop_back();
                }
            };
            rec(0);
        }
        if (!excluded) members.push_back(v);
    }
    return members;
}

/// Area of D_r(c) ∩ [0, side]^2 by Simpson's rule after substituting
/// x = cx + r sin(theta), which removes the square-root endpoint behaviour.
/// The theta range is clipped to the square's x-extent so the integrand has
/// no jumps.
inline double quadrature_disk_square_area(Point c, double r, double side, int intervals = 200000) {
    const auto column = [&](double theta) {
        const double half = r * std::cos(theta);
        const double lo = std::max(0.0, c.y - half);
        const double hi = std::min(side, c.y + half);
        return std::max(0.0, hi - lo) * r * std::cos(theta);
    };
    const auto angle = [&](double x) { return std::asin(std::clamp((x - c.x) / r, -1.0, 1.0)); };
    const double a = angle(0.0);
    const double b = angle(side);
    if (b <= a) return 0.0;
    const double h = (b - a) / intervals;
    double sum = column(a) + column(b);
    for (int i = 1; i < intervals; ++i) sum += column(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace fixtures
