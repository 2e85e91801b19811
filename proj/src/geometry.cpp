#include "rulek/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rulek {

namespace {

// Antiderivative of sqrt(r^2 - u^2).
double half_chord_primitive(double r, double u) {
    u = std::clamp(u, -r, r);
    const double s = std::sqrt(std::max(0.0, r * r - u * u));
    return 0.5 * (u * s + r * r * std::asin(u / r));
}

// Integral over u in [a, b] (a, b within [-r, r]) of the vertical extent of
// the disk below height y: max(0, min(y, s(u)) + s(u)), s(u) = sqrt(r^2-u^2).
double lower_extent_integral(double r, double a, double b, double y) {
    if (b <= a) return 0.0;
    if (y >= r) return 2.0 * (half_chord_primitive(r, b) - half_chord_primitive(r, a));
    if (y <= -r) return 0.0;

    const double w = std::sqrt(r * r - y * y);
    const auto inner = [&](double lo, double hi) {
        // On |u| <= w the extent is y + s(u).
        lo = std::max(lo, -w);
        hi = std::min(hi, w);
        if (hi <= lo) return 0.0;
        return y * (hi - lo) + half_chord_primitive(r, hi) - half_chord_primitive(r, lo);
    };
    const auto outer = [&](double lo, double hi) {
        // On |u| > w the extent is 2 s(u) when y > 0 and 0 otherwise.
        if (y <= 0.0 || hi <= lo) return 0.0;
        return 2.0 * (half_chord_primitive(r, hi) - half_chord_primitive(r, lo));
    };

    return outer(a, std::min(b, -w)) + inner(a, b) + outer(std::max(a, w), b);
}

// Area of the disk of radius r at the origin within (-inf, x] x (-inf, y].
double quadrant_area(double r, double x, double y) {
    if (x <= -r) return 0.0;
    return lower_extent_integral(r, -r, std::min(x, r), y);
}

}  // namespace

SquareRegion::SquareRegion(double side) : side_(side) {
    if (!(side > 1.0) || !std::isfinite(side)) {
        std::ostringstream msg;
        msg << "ell: square side must be finite and > 1 (got " << side << ")";
        throw std::invalid_argument(msg.str());
    }
}

bool is_finite(Point p) noexcept {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

Point clamp_to_square(Point p, const SquareRegion& q) noexcept {
    return {std::clamp(p.x, 0.0, q.side()), std::clamp(p.y, 0.0, q.side())};
}

Lemma1Construction lemma1_points(Point p, const SquareRegion& q) {
    if (!is_finite(p) || !q.contains(p))
        throw std::invalid_argument("p: center must lie inside the square");

    Lemma1Construction c;
    c.center = p;
    for (int s = 0; s < 3; ++s) {
        const double theta = 2.0 * std::numbers::pi * s / 3.0;
        const Point raw{p.x + 0.5 * std::cos(theta), p.y + 0.5 * std::sin(theta)};
        c.z[static_cast<std::size_t>(s)] = clamp_to_square(raw, q);
    }
    return c;
}

bool coverage_check(Point p, const SquareRegion& q, std::span<const Point> centers,
                    double radius, double pitch) {
    if (!(pitch > 0.0)) throw std::invalid_argument("pitch: must be > 0");
    if (!(radius > 0.0)) throw std::invalid_argument("radius: must be > 0");

    constexpr double kSlack = 1e-9;
    const double reach = (radius + kSlack) * (radius + kSlack);
    const double x0 = std::max(0.0, p.x - 1.0);
    const double x1 = std::min(q.side(), p.x + 1.0);
    const double y0 = std::max(0.0, p.y - 1.0);
    const double y1 = std::min(q.side(), p.y + 1.0);
    const auto nx = static_cast<long>(std::floor((x1 - x0) / pitch));
    const auto ny = static_cast<long>(std::floor((y1 - y0) / pitch));

    for (long i = 0; i <= nx; ++i) {
        const double gx = x0 + static_cast<double>(i) * pitch;
        for (long j = 0; j <= ny; ++j) {
            const Point g{gx, y0 + static_cast<double>(j) * pitch};
            if (squared_distance(g, p) > 1.0) continue;
            const bool covered = std::any_of(centers.begin(), centers.end(), [&](Point c) {
                return squared_distance(g, c) <= reach;
            });
            if (!covered) return false;
        }
    }
    return true;
}

double disk_rectangle_area(double radius, double x0, double x1, double y0, double y1) {
    if (x1 <= x0 || y1 <= y0) return 0.0;
    return quadrant_area(radius, x1, y1) - quadrant_area(radius, x0, y1) -
           quadrant_area(radius, x1, y0) + quadrant_area(radius, x0, y0);
}

double disk_square_area(Point center, double radius, const SquareRegion& q) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius: must be > 0");
    const double area = disk_rectangle_area(radius, -center.x, q.side() - center.x,
                                            -center.y, q.side() - center.y);
    return std::max(0.0, area);
}

}  // namespace rulek
