#include "emocircles/geometry.hpp"

#include <cmath>
#include <numbers>

#include "emocircles/error.hpp"

namespace emoc {

Circle circle_from_three_points(PointD a, PointD b, PointD c) {
  // Work relative to `a` to keep the products small.
  const double bx = b.x - a.x;
  const double by = b.y - a.y;
  const double cx = c.x - a.x;
  const double cy = c.y - a.y;
  const double denominator = 4.0 * (bx * cy - cx * by);
  if (!(std::abs(denominator) >= 1e-12)) {
    throw DegenerateGeometryError("points are collinear or coincident");
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  // Cramer's rule on the two perpendicular-bisector equations.
  const double ux = 2.0 * (b2 * cy - c2 * by) / denominator;
  const double uy = 2.0 * (bx * c2 - cx * b2) / denominator;
  Circle circle{a.x + ux, a.y + uy, std::hypot(ux, uy)};
  if (!circle.valid()) throw DegenerateGeometryError("circle through the points is not finite");
  return circle;
}

std::vector<Point> midpoint_circle(int cx, int cy, double r) {
  // First octant from (r, 0) upward: y advances every step and x drops by one
  // whenever the midpoint (x - 1/2, y) falls outside the circle. Scaled by 4
  // the test is (2x - 1)^2 + 4y^2 > 4r^2.
  const double limit = 4.0 * r * r;
  std::vector<Point> octant;
  int x = round_to_pixel(r);
  int y = 0;
  while (y <= x) {
    octant.push_back({x, y});
    ++y;
    const double mid = static_cast<double>(2 * x - 1) * (2 * x - 1) + 4.0 * y * y;
    if (mid > limit) --x;
  }
  if (octant.empty()) return {};

  const std::size_t last = octant.size() - 1;
  const bool diagonal_end = octant[last].x == octant[last].y;
  std::vector<Point> out;
  out.reserve(8 * octant.size());

  // Octants in increasing angle. Ascending sweeps repeat the previous octant's
  // axis point at k = 0, descending ones repeat the diagonal point at k = last.
  auto ascending = [&](auto&& map, bool skip_first) {
    for (std::size_t k = skip_first ? 1 : 0; k <= last; ++k) out.push_back(map(octant[k]));
  };
  auto descending = [&](auto&& map, bool skip_first) {
    const std::size_t top = diagonal_end ? last : last + 1;
    for (std::size_t k = top; k-- > (skip_first ? 1u : 0u);) out.push_back(map(octant[k]));
  };
  ascending([&](Point p) { return Point{cx + p.x, cy + p.y}; }, false);
  descending([&](Point p) { return Point{cx + p.y, cy + p.x}; }, false);
  ascending([&](Point p) { return Point{cx - p.y, cy + p.x}; }, true);
  descending([&](Point p) { return Point{cx - p.x, cy + p.y}; }, false);
  ascending([&](Point p) { return Point{cx - p.x, cy - p.y}; }, true);
  descending([&](Point p) { return Point{cx - p.y, cy - p.x}; }, false);
  ascending([&](Point p) { return Point{cx + p.y, cy - p.x}; }, true);
  descending([&](Point p) { return Point{cx + p.x, cy - p.y}; }, true);
  return out;
}

TestPointSet rasterize_mca(const Circle& circle, int width, int height) {
  if (!(circle.r >= 1.0) || !circle.valid()) throw ParameterError("MCA needs a finite radius >= 1");
  TestPointSet set;
  for (const Point& p : midpoint_circle(round_to_pixel(circle.x0), round_to_pixel(circle.y0), circle.r)) {
    if (p.x >= 0 && p.y >= 0 && p.x < width && p.y < height) set.points.push_back(p);
  }
  return set;
}

TestPointSet rasterize_uniform(const Circle& circle, int n_samples, int width, int height) {
  if (n_samples < 4) throw ParameterError("uniform sampling needs at least 4 samples");
  if (!circle.valid()) throw ParameterError("invalid circle");
  TestPointSet set;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0);
  for (int i = 0; i < n_samples; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n_samples;
    const Point p{round_to_pixel(circle.x0 + circle.r * std::cos(angle)),
                  round_to_pixel(circle.y0 + circle.r * std::sin(angle))};
    if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height) continue;
    auto& flag = seen[static_cast<std::size_t>(p.y) * width + p.x];
    if (flag) continue;
    flag = 1;
    set.points.push_back(p);
  }
  return set;
}

double objective_j(const Circle& circle, const EdgeMap& edges) {
  const TestPointSet set = rasterize_mca(circle, edges.width(), edges.height());
  if (set.total() == 0) return 1.0;
  std::size_t hits = 0;
  for (const Point& p : set.points) hits += edges.contains(p) ? 1 : 0;
  return 1.0 - static_cast<double>(hits) / static_cast<double>(set.total());
}

}  // namespace emoc
