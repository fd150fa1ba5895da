#pragma once

// Seeded synthetic scenes with exact ground truth.

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "emocircles/edge_map.hpp"
#include "emocircles/image_io.hpp"
#include "emocircles/types.hpp"

namespace emoc::synth {

struct CircleShape {
  double x0 = 0, y0 = 0, r = 0;
  bool filled = false;
};

// Axis-aligned; (x, y) is the top-left corner.
struct RectangleShape {
  double x = 0, y = 0, w = 0, h = 0;
  bool filled = false;
};

struct LineShape {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

struct TriangleShape {
  std::array<PointD, 3> vertices{};
  bool filled = false;
};

// Angles in degrees measured with atan2(dy, dx) in image coordinates; the arc
// runs from start_deg to end_deg in increasing angle.
struct ArcShape {
  double x0 = 0, y0 = 0, r = 0;
  double start_deg = 0, end_deg = 360;
};

struct EllipseShape {
  double x0 = 0, y0 = 0, a = 0, b = 0;
  double angle_deg = 0;
  bool filled = false;
};

using ShapeGeometry =
    std::variant<CircleShape, RectangleShape, LineShape, TriangleShape, ArcShape, EllipseShape>;

struct Shape {
  ShapeGeometry geometry;
  // Painted value. 0 erases whatever lies underneath (occluders).
  std::uint8_t intensity = 255;
};

struct NoiseSpec {
  double salt_pepper_fraction = 0.0;
};

struct SceneSpec {
  int width = 200;
  int height = 200;
  std::vector<Shape> shapes;
  NoiseSpec noise;
  std::uint64_t rng_seed = 0;

  // Throws SpecError naming the offending field.
  void validate() const;
};

struct GroundTruth {
  Circle circle;
  // Visible share of the circumference (1 for full circles).
  double arc_fraction = 1.0;
  // Extra localization slack for imperfect circles (|a - b| of an ellipse).
  double tolerance_px = 0.0;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct RenderedImage {
  GrayImage image;
  std::vector<GroundTruth> truth;
};

struct RenderedEdges {
  EdgeMap edges;
  std::vector<GroundTruth> truth;
};

// Paints shapes in order on a black canvas (filled or 1-px outline), then
// inverts exactly round(fraction * width * height) distinct pixels.
RenderedImage render(const SceneSpec& spec);

// Outlines drawn straight into an edge map; filled zero-intensity shapes erase
// edges underneath. Noise toggles edge membership.
RenderedEdges render_edge_map(const SceneSpec& spec);

SceneSpec scene_from_json(const nlohmann::json& j);
nlohmann::json scene_to_json(const SceneSpec& spec);
nlohmann::json truth_to_json(const std::vector<GroundTruth>& truth);

// Corpus builders used by the acceptance harness and `generate`.

// 200x200, one filled circle with integer center and radius in [r_lo, r_hi].
SceneSpec single_circle_scene(std::uint64_t seed, double noise_fraction = 0.0, int r_lo = 15,
                              int r_hi = 60);

// 200x200, one filled ellipse with axis ratio in [0.9, 1]; the ground truth
// radius is the mean semi-axis.
SceneSpec imperfect_circle_scene(std::uint64_t seed, double noise_fraction = 0.0);
// 540x300, one filled circle among rectangles, lines and triangles.
SceneSpec shape_discrimination_scene(std::uint64_t seed, double noise_fraction = 0.02);

// `count` disjoint filled circles.
SceneSpec multi_circle_scene(std::uint64_t seed, int count = 3, int width = 300, int height = 300);

// One circle with `occluded_fraction` of its circumference missing, as an arc.
SceneSpec occluded_circle_scene(std::uint64_t seed, double occluded_fraction);

// Small edge map for exhaustive comparisons: the raster of one circle thinned
// to at most max_points evenly spaced points, plus `clutter` random points.
RenderedEdges sparse_circle_edges(std::uint64_t seed, int max_points, int clutter = 0);

// Expands {"generator": {...}} or {"scenes": [...]} into scene specs.
std::vector<SceneSpec> corpus_from_json(const nlohmann::json& j);

}  // namespace emoc::synth
