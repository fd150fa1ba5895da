#include "emocircles/detector.hpp"

#include <algorithm>
#include <cmath>

#include "emocircles/error.hpp"

namespace emoc {
namespace {

void require_edges(const EdgeMap& edges) {
  if (edges.size() < 3) {
    throw InsufficientEdgesError("need at least 3 edge points, got " + std::to_string(edges.size()));
  }
}

std::optional<Circle> solve(const EdgeMap& edges, const std::array<std::size_t, 3>& idx,
                            const DetectorConfig& config) {
  if (idx[0] == idx[1] || idx[1] == idx[2]) return std::nullopt;
  const Point a = edges[idx[0]];
  const Point b = edges[idx[1]];
  const Point c = edges[idx[2]];
  Circle circle;
  try {
    circle = circle_from_three_points({double(a.x), double(a.y)}, {double(b.x), double(b.y)},
                                      {double(c.x), double(c.y)});
  } catch (const DegenerateGeometryError&) {
    return std::nullopt;
  }
  const double r_max = config.resolved_r_max(edges.width(), edges.height());
  if (circle.r < config.r_min || circle.r > r_max || circle.r < 1.0) return std::nullopt;
  return circle;
}

double score_indices(const EdgeMap& edges, const std::array<std::size_t, 3>& idx,
                     const DetectorConfig& config) {
  const auto circle = solve(edges, idx, config);
  return circle ? objective_j(*circle, edges) : 1.0;
}

DetectedCircle finish(const EdgeMap& edges, const Circle& circle, double score,
                      const std::array<std::size_t, 3>& idx, int iterations,
                      const DetectorConfig& config) {
  const Validation check = validate(circle, edges, config);
  DetectedCircle out;
  out.circle = circle;
  out.score = score;
  out.validated = check.accepted;
  out.support_points = check.support;
  out.test_points = check.total;
  out.iterations = iterations;
  out.edge_indices = idx;
  return out;
}

}  // namespace

void DetectorConfig::validate() const {
  emo.validate();
  if (!(r_min > 0.0) || !std::isfinite(r_min)) throw ParameterError("r_min must be positive");
  if (r_max && !(*r_max > r_min)) throw ParameterError("r_max must exceed r_min");
  if (fitness_threshold && !std::isfinite(*fitness_threshold)) {
    throw ParameterError("fitness_threshold must be finite");
  }
  if (!(mask_tolerance_px >= 0.0)) throw ParameterError("mask_tolerance_px must be non-negative");
  if (!(continuity_max_gap_fraction > 0.0 && continuity_max_gap_fraction <= 1.0)) {
    throw ParameterError("continuity_max_gap_fraction must lie in (0, 1]");
  }
  if (!(min_support_fraction >= 0.0 && min_support_fraction <= 1.0)) {
    throw ParameterError("min_support_fraction must lie in [0, 1]");
  }
  if (!(min_contrast >= 0.0 && min_contrast <= 1.0)) throw ParameterError("min_contrast must lie in [0, 1]");
  if (max_circles < 1) throw ParameterError("max_circles must be at least 1");
}

double DetectorConfig::resolved_r_max(int width, int height) const {
  return r_max ? *r_max : 0.5 * std::max(width, height);
}

std::array<std::size_t, 3> resolve_indices(const CandidateEncoding& encoding, std::size_t np) {
  std::array<std::size_t, 3> idx{};
  const double top = static_cast<double>(np - 1);
  for (std::size_t d = 0; d < 3; ++d) {
    const double v = std::clamp(std::floor(encoding.indices[d] + 0.5), 0.0, top);
    idx[d] = static_cast<std::size_t>(v);
  }
  // Sorting makes the decoded circle independent of index order.
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::optional<Circle> decode(const CandidateEncoding& encoding, const EdgeMap& edges,
                             const DetectorConfig& config) {
  require_edges(edges);
  return solve(edges, resolve_indices(encoding, edges.size()), config);
}

double fitness(const CandidateEncoding& encoding, const EdgeMap& edges, const DetectorConfig& config) {
  require_edges(edges);
  return score_indices(edges, resolve_indices(encoding, edges.size()), config);
}

namespace {

std::vector<Point> disc_offsets(double tol) {
  const int reach = static_cast<int>(std::floor(tol));
  std::vector<Point> offsets;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (dx * dx + dy * dy <= tol * tol) offsets.push_back({dx, dy});
    }
  }
  return offsets;
}

// Per test point: is there an edge pixel within the offsets?
std::vector<bool> band_support(const Circle& circle, const EdgeMap& edges, const std::vector<Point>& offsets) {
  const TestPointSet set = rasterize_mca(circle, edges.width(), edges.height());
  std::vector<bool> supported(set.total(), false);
  for (std::size_t i = 0; i < set.total(); ++i) {
    const Point p = set.points[i];
    supported[i] = std::any_of(offsets.begin(), offsets.end(),
                               [&](Point o) { return edges.contains(p.x + o.x, p.y + o.y); });
  }
  return supported;
}

double fraction(const std::vector<bool>& flags) {
  if (flags.empty()) return 0.0;
  return static_cast<double>(std::count(flags.begin(), flags.end(), true)) / static_cast<double>(flags.size());
}

}  // namespace

Validation validate(const Circle& circle, const EdgeMap& edges, const DetectorConfig& config) {
  Validation out;
  if (!(circle.r >= 1.0) || !circle.valid()) return out;
  const std::vector<Point> offsets = disc_offsets(config.mask_tolerance_px);
  const std::vector<bool> supported = band_support(circle, edges, offsets);
  out.total = supported.size();
  if (out.total == 0) return out;
  out.support = static_cast<std::size_t>(std::count(supported.begin(), supported.end(), true));

  // Longest unsupported run, wrapping around the circumference.
  if (out.support == 0) {
    out.longest_gap = out.total;
  } else {
    std::size_t run = 0;
    for (std::size_t step = 0; step < 2 * out.total; ++step) {
      if (supported[step % out.total]) {
        run = 0;
      } else {
        out.longest_gap = std::max(out.longest_gap, ++run);
      }
    }
    out.longest_gap = std::min(out.longest_gap, out.total);
  }

  // Control rings just outside the tolerance band on either side.
  const double offset = 2.0 * config.mask_tolerance_px + 1.0;
  for (double r : {circle.r - offset, circle.r + offset}) {
    if (r < 1.0) continue;
    out.background = std::max(out.background, fraction(band_support({circle.x0, circle.y0, r}, edges, offsets)));
  }

  const double n = static_cast<double>(out.total);
  const double support = static_cast<double>(out.support) / n;
  out.accepted = support >= config.min_support_fraction &&
                 static_cast<double>(out.longest_gap) <= config.continuity_max_gap_fraction * n &&
                 support - out.background >= config.min_contrast;
  return out;
}

DetectedCircle detect_single(const EdgeMap& edges, const DetectorConfig& config) {
  config.validate();
  require_edges(edges);

  EmoParams params = config.emo;
  if (config.fitness_threshold) params.fitness_threshold = config.fitness_threshold;
  const Bounds bounds = Bounds::cube(3, 0.0, static_cast<double>(edges.size() - 1));
  const Objective objective = [&](std::span<const double> x) {
    return score_indices(edges, resolve_indices({{x[0], x[1], x[2]}}, edges.size()), config);
  };
  const OptimizationResult result = optimize(objective, bounds, params);

  const auto idx = resolve_indices({{result.best_position[0], result.best_position[1],
                                     result.best_position[2]}},
                                   edges.size());
  const auto circle = solve(edges, idx, config);
  if (!circle) throw NoCircleFoundError("no feasible circle candidate in the final population");
  return finish(edges, *circle, result.best_fitness, idx, result.iterations_run, config);
}

std::vector<DetectedCircle> detect_multiple(const EdgeMap& edges, const DetectorConfig& config) {
  config.validate();
  require_edges(edges);
  std::vector<DetectedCircle> found;
  EdgeMap current = edges;
  for (int t = 0; t < config.max_circles && current.size() >= 3; ++t) {
    DetectorConfig step = config;
    if (t > 0) step.emo.rng_seed = derive_seed(config.emo.rng_seed, static_cast<std::uint64_t>(t));
    DetectedCircle detected;
    try {
      detected = detect_single(current, step);
    } catch (const NoCircleFoundError&) {
      break;
    }
    if (!detected.validated) break;
    found.push_back(detected);
    EdgeMap next = mask_circle(current, detected.circle, config.mask_tolerance_px);
    if (next.size() >= current.size()) break;
    current = std::move(next);
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const DetectedCircle& a, const DetectedCircle& b) { return a.score < b.score; });
  return found;
}

DetectedCircle brute_force_oracle(const EdgeMap& edges, const DetectorConfig& config, Backend backend) {
  config.validate();
  require_edges(edges);
  if (edges.size() > config.oracle_cap) {
    throw SizeLimitError("oracle refuses " + std::to_string(edges.size()) + " edge points (cap " +
                         std::to_string(config.oracle_cap) + ")");
  }
  const auto best = kernels::minimize_triples(
      backend, edges.size(),
      [&](std::size_t i, std::size_t j, std::size_t k) { return score_indices(edges, {i, j, k}, config); });
  const std::array<std::size_t, 3> idx{best.i, best.j, best.k};
  const auto circle = best.found ? solve(edges, idx, config) : std::nullopt;
  if (!circle) throw NoCircleFoundError("no feasible index triple");
  return finish(edges, *circle, best.score, idx, 0, config);
}

}  // namespace emoc
