#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>

namespace rulek {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// The closed square [0, side] x [0, side]. Side must exceed 1.
class SquareRegion {
public:
    explicit SquareRegion(double side);

    [[nodiscard]] double side() const noexcept { return side_; }
    [[nodiscard]] bool contains(Point p) const noexcept {
        return p.x >= 0.0 && p.x <= side_ && p.y >= 0.0 && p.y <= side_;
    }

private:
    double side_;
};

// Constants of the three-point local coverage construction.
inline constexpr double kCoverDelta = 0.5 - std::numbers::sqrt3 / 4.0;
inline constexpr double kCoverRho = std::numbers::sqrt3 / 2.0;
inline constexpr double kCoverAlpha = 1.0 - kCoverDelta * kCoverDelta / 4.0;

/// Three points whose rho-disks cover D1(center) ∩ Q, consecutive ones at
/// distance at most 1 - 2*delta.
struct Lemma1Construction {
    Point center;
    std::array<Point, 3> z;
    double delta = kCoverDelta;
    double rho = kCoverRho;
    double alpha = kCoverAlpha;
};

[[nodiscard]] inline double distance(Point p, Point q) noexcept {
    return std::hypot(p.x - q.x, p.y - q.y);
}

[[nodiscard]] inline double squared_distance(Point p, Point q) noexcept {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

/// d(p, q) <= 1. Near the threshold the decision defers to `distance`, so
/// every component agrees on ties.
[[nodiscard]] inline bool within_unit(Point p, Point q) noexcept {
    const double d2 = squared_distance(p, q);
    if (d2 < 1.0 - 1e-9) return true;
    if (d2 > 1.0 + 1e-9) return false;
    return distance(p, q) <= 1.0;
}

[[nodiscard]] bool is_finite(Point p) noexcept;

/// Nearest point of the closed square (coordinate-wise clamp).
[[nodiscard]] Point clamp_to_square(Point p, const SquareRegion& q) noexcept;

/// Centers z_s = p + (cos(2*pi*s/3), sin(2*pi*s/3)) / 2, each clamped into
/// the square. Throws std::invalid_argument when p lies outside the square.
[[nodiscard]] Lemma1Construction lemma1_points(Point p, const SquareRegion& q);

/// Samples a grid of the given pitch over the bounding box of D1(p) ∩ Q and
/// reports whether every sample inside D1(p) ∩ Q lies within `radius` of
/// some center. Coverage is certified only up to grid resolution; distances
/// are compared with an absolute slack of 1e-9 so that points lying exactly
/// on a covering circle count as covered.
[[nodiscard]] bool coverage_check(Point p, const SquareRegion& q,
                                  std::span<const Point> centers,
                                  double radius, double pitch);

/// Exact area of D_radius(center) ∩ Q.
[[nodiscard]] double disk_square_area(Point center, double radius,
                                      const SquareRegion& q);

/// Exact area of the disk of `radius` at the origin intersected with the
/// axis-aligned rectangle [x0, x1] x [y0, y1].
[[nodiscard]] double disk_rectangle_area(double radius, double x0, double x1,
                                         double y0, double y1);

}  // namespace rulek
