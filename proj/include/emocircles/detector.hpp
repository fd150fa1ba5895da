#pragma once

// Circle detection over an edge map. A candidate is a triple of continuous
// indices into the edge vector; rounding each index selects three edge
// points and the circle through them is scored by objective_j.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "emocircles/edge_map.hpp"
#include "emocircles/emo.hpp"
#include "emocircles/geometry.hpp"

namespace emoc {

struct CandidateEncoding {
  std::array<double, 3> indices{};
};

struct DetectorConfig {
  EmoParams emo;
  double r_min = 5.0;
  // Defaults to half the larger image side.
  std::optional<double> r_max;
  // Early stop for each single-circle search.
  std::optional<double> fitness_threshold;
  double mask_tolerance_px = 2.0;
  double continuity_max_gap_fraction = 0.5;
  double min_support_fraction = 0.6;
  // Required margin of support over the control rings.
  double min_contrast = 0.3;
  int max_circles = 1;
  std::size_t oracle_cap = 60;

  void validate() const;
  double resolved_r_max(int width, int height) const;
};

struct DetectedCircle {
  Circle circle;
  double score = 1.0;
  bool validated = false;
  std::size_t support_points = 0;
  std::size_t test_points = 0;
  int iterations = 0;
  std::array<std::size_t, 3> edge_indices{};
};

struct Validation {
  bool accepted = false;
  std::size_t support = 0;
  std::size_t total = 0;
  std::size_t longest_gap = 0;
  // Highest support fraction on the control rings.
  double background = 0.0;
};

// Rounded, clamped and sorted edge indices selected by an encoding.
std::array<std::size_t, 3> resolve_indices(const CandidateEncoding& encoding, std::size_t np);

// Circle through the selected edge points, or nullopt when two indices
// coincide, the points are collinear or the radius is outside [r_min, r_max].
// Throws InsufficientEdgesError when the map has fewer than 3 points.
std::optional<Circle> decode(const CandidateEncoding& encoding, const EdgeMap& edges,
                             const DetectorConfig& config);

// objective_j of the decoded circle, 1 when infeasible.
double fitness(const CandidateEncoding& encoding, const EdgeMap& edges, const DetectorConfig& config);

// Continuity check: walks the circle's test points in angular order, counts
// those with an edge pixel within mask_tolerance_px, and accepts when the
// supported fraction reaches min_support_fraction and the longest (circular)
// unsupported run is at most continuity_max_gap_fraction of the test points.
// The support fraction must also beat that of two concentric control rings,
// offset by 2 * mask_tolerance_px + 1, by min_contrast. This rejects circles
// drawn through dense clutter, where every band is supported.
Validation validate(const Circle& circle, const EdgeMap& edges, const DetectorConfig& config);

// One EMO search over [0, Np-1]^3. Throws InsufficientEdgesError or
// NoCircleFoundError.
DetectedCircle detect_single(const EdgeMap& edges, const DetectorConfig& config);

// Repeats detect_single, masking each accepted circle out of the edge map,
// until max_circles is reached or a search fails or does not validate. Only
// validated circles are returned, sorted by ascending score. Search t uses
// derive_seed(emo.rng_seed, t).
std::vector<DetectedCircle> detect_multiple(const EdgeMap& edges, const DetectorConfig& config);

// Exhaustive minimum of fitness over all index triples i < j < k. Throws
// SizeLimitError above config.oracle_cap edge points.
DetectedCircle brute_force_oracle(const EdgeMap& edges, const DetectorConfig& config,
                                  Backend backend = Backend::Serial);

}  // namespace emoc
