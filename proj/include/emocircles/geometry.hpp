#pragma once

#include <vector>

#include "emocircles/edge_map.hpp"
#include "emocircles/types.hpp"

namespace emoc {

// Raster points on a candidate circumference.
struct TestPointSet {
  std::vector<Point> points;

  std::size_t total() const { return points.size(); }
};

// Circle through three points. Throws DegenerateGeometryError when the points
// are collinear or coincide.
Circle circle_from_three_points(PointD a, PointD b, PointD c);

// Unclipped midpoint-circle raster of radius r around (cx, cy), seam
// duplicates removed, listed in angular order starting at (cx + r, cy).
std::vector<Point> midpoint_circle(int cx, int cy, double r);

// Midpoint-circle test points around the rounded center, clipped to
// [0,width) x [0,height). Throws ParameterError when r < 1.
TestPointSet rasterize_mca(const Circle& circle, int width, int height);

// n_samples points at equal angles, rounded to the raster, deduplicated and
// clipped. Throws ParameterError when n_samples < 4.
TestPointSet rasterize_uniform(const Circle& circle, int n_samples, int width, int height);

// 1 - (test points present in the edge map) / (number of test points); 1 when
// the circle has no test point inside the image.
double objective_j(const Circle& circle, const EdgeMap& edges);

}  // namespace emoc
