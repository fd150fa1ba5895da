#pragma once

#include <cmath>
#include <compare>

namespace emoc {

// Integer raster coordinate; x grows right, y grows down.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  // Row-major order.
  friend constexpr auto operator<=>(Point a, Point b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct PointD {
  double x = 0.0;
  double y = 0.0;
};

struct Circle {
  double x0 = 0.0;
  double y0 = 0.0;
  double r = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;

  bool valid() const { return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(r) && r > 0.0; }

  // |distance to center - r|.
  double distance_to_circumference(double x, double y) const {
    return std::abs(std::hypot(x - x0, y - y0) - r);
  }
};

// Nearest integer with halves rounded up; used wherever a sub-pixel quantity
// is snapped to the raster.
inline int round_to_pixel(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace emoc
