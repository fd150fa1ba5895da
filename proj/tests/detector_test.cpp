#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emocircles/detector.hpp"
#include "emocircles/error.hpp"
#include "emocircles/synthgen.hpp"

namespace emoc {
namespace {

bool near(const Circle& a, const Circle& b, double tol) {
  return std::abs(a.x0 - b.x0) <= tol && std::abs(a.y0 - b.y0) <= tol && std::abs(a.r - b.r) <= tol;
}

EdgeMap raster_of(const Circle& c, int w, int h) {
  return EdgeMap::from_points(w, h, rasterize_mca(c, w, h).points);
}

std::size_t index_of(const EdgeMap& m, Point p) {
  const auto pts = m.points();
  return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
}

EdgeMap canny_scene(const synth::SceneSpec& spec) { return canny(synth::render(spec).image); }

synth::SceneSpec disc_scene(double x0, double y0, double r) {
  synth::SceneSpec spec;
  spec.shapes.push_back({synth::CircleShape{x0, y0, r, true}});
  return spec;
}

TEST(Decode, RoundingCollisionIsInfeasible) {
  const EdgeMap m = raster_of({50, 50, 20}, 100, 100);
  const CandidateEncoding e{{0.4, 1.6, 2.1}};
  EXPECT_EQ(resolve_indices(e, m.size()), (std::array<std::size_t, 3>{0, 2, 2}));
  EXPECT_FALSE(decode(e, m, {}).has_value());
  EXPECT_EQ(fitness(e, m, {}), 1.0);
}

TEST(Decode, SeparatedRasterPointsGiveTheCircle) {
  const Circle truth{50, 50, 20};
  const EdgeMap m = raster_of(truth, 100, 100);
  const std::size_t a = index_of(m, {70, 50});
  const std::size_t b = index_of(m, {40, 33});
  const std::size_t c = index_of(m, {40, 67});
  ASSERT_TRUE(m.contains(m[a]) && m[a] == (Point{70, 50}));
  ASSERT_EQ(m[b], (Point{40, 33}));
  ASSERT_EQ(m[c], (Point{40, 67}));
  const CandidateEncoding e{{a + 0.3, b - 0.2, c + 0.49}};
  const auto circle = decode(e, m, {});
  ASSERT_TRUE(circle.has_value());
  EXPECT_TRUE(near(*circle, truth, 1.0));
}

TEST(Fitness, TrueCircleOnCleanRasterScoresNearZero) {
  const EdgeMap m = raster_of({50, 50, 20}, 100, 100);
  const double a = static_cast<double>(index_of(m, {70, 50}));
  const double b = static_cast<double>(index_of(m, {30, 50}));
  const double c = static_cast<double>(index_of(m, {50, 70}));
  EXPECT_LE(fitness({{a, b, c}}, m, {}), 0.05);
}

TEST(Decode, OrderOfIndicesDoesNotMatter) {
  const EdgeMap m = raster_of({50, 50, 20}, 100, 100);
  const auto a = decode({{3, 40, 90}}, m, {});
  const auto b = decode({{90, 3, 40}}, m, {});
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->x0, b->x0);
  EXPECT_EQ(a->y0, b->y0);
  EXPECT_EQ(a->r, b->r);
}

TEST(Decode, RadiusFilterAndContainment) {
  Rng rng(6);
  const EdgeMap m = canny_scene(synth::shape_discrimination_scene(3));
  DetectorConfig config;
  config.r_min = 12;
  config.r_max = 80;
  const double top = static_cast<double>(m.size() - 1);
  for (int i = 0; i < 5000; ++i) {
    const CandidateEncoding e{{rng.uniform(-1.0, top + 1.0), rng.uniform(0, top), rng.uniform(0, top)}};
    for (std::size_t idx : resolve_indices(e, m.size())) ASSERT_LT(idx, m.size());
    const auto c = decode(e, m, config);
    if (c) {
      ASSERT_GE(c->r, 12.0);
      ASSERT_LE(c->r, 80.0);
    }
    const double f = fitness(e, m, config);
    ASSERT_GE(f, 0.0);
    ASSERT_LE(f, 1.0);
    ASSERT_EQ(f, fitness(e, m, config));
  }
}

TEST(Decode, NeedsThreeEdges) {
  const std::vector<Point> two{{1, 1}, {5, 5}};
  const EdgeMap m = EdgeMap::from_points(10, 10, two);
  EXPECT_THROW(decode({{0, 1, 1}}, m, {}), InsufficientEdgesError);
  EXPECT_THROW(detect_single(EdgeMap(10, 10), {}), InsufficientEdgesError);
}

TEST(Config, Validation) {
  DetectorConfig c;
  c.r_min = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.r_max = 4.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.continuity_max_gap_fraction = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.max_circles = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  EXPECT_EQ(c.resolved_r_max(540, 300), 270.0);
}

TEST(Validate, FullCircle) {
  const Circle c{50, 50, 20};
  const auto v = validate(c, raster_of(c, 100, 100), {});
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.support, v.total);
  EXPECT_EQ(v.longest_gap, 0u);
}

TEST(Validate, HalfArcPassesWithHalfGapAllowance) {
  const Circle c{60, 60, 40};
  const auto pts = rasterize_mca(c, 120, 120).points;
  const std::vector<Point> half(pts.begin(), pts.begin() + static_cast<long>((pts.size() + 1) / 2));
  DetectorConfig config;
  config.continuity_max_gap_fraction = 0.5;
  config.min_support_fraction = 0.5;
  const auto v = validate(c, EdgeMap::from_points(120, 120, half), config);
  EXPECT_TRUE(v.accepted);
  EXPECT_LE(static_cast<double>(v.longest_gap), 0.5 * static_cast<double>(v.total));
}

TEST(Validate, AntipodalQuarterArcsRejectedAtTightGap) {
  const Circle c{60, 60, 40};
  const auto pts = rasterize_mca(c, 120, 120).points;
  const std::size_t n = pts.size();
  std::vector<Point> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n / 4 || (i >= n / 2 && i < 3 * n / 4)) kept.push_back(pts[i]);
  }
  DetectorConfig config;
  config.continuity_max_gap_fraction = 0.2;
  config.min_support_fraction = 0.0;
  const auto v = validate(c, EdgeMap::from_points(120, 120, kept), config);
  EXPECT_FALSE(v.accepted);
  EXPECT_GT(static_cast<double>(v.longest_gap), 0.2 * static_cast<double>(n));
}

TEST(Validate, CircleInDenseClutterRejected) {
  // Every third pixel lit: any band is fully supported.
  std::vector<Point> grid;
  for (int y = 0; y < 120; ++y) {
    for (int x = 0; x < 120; ++x) {
      if ((x + y) % 3 == 0) grid.push_back({x, y});
    }
  }
  const Circle c{60, 60, 30};
  const auto v = validate(c, EdgeMap::from_points(120, 120, grid), {});
  EXPECT_EQ(v.support, v.total);
  EXPECT_EQ(v.background, 1.0);
  EXPECT_FALSE(v.accepted);
  DetectorConfig lenient;
  lenient.min_contrast = 0.0;
  EXPECT_TRUE(validate(c, EdgeMap::from_points(120, 120, grid), lenient).accepted);
}

TEST(Validate, ConcentricNeighbourBeyondRingsDoesNotCount) {
  const Circle c{60, 60, 30};
  auto pts = rasterize_mca(c, 120, 120).points;
  const auto outer = rasterize_mca({60, 60, 45}, 120, 120).points;
  pts.insert(pts.end(), outer.begin(), outer.end());
  const auto v = validate(c, EdgeMap::from_points(120, 120, pts), {});
  EXPECT_EQ(v.background, 0.0);
  EXPECT_TRUE(v.accepted);
}

TEST(Validate, SparseChordsRejected) {
  const Circle c{60, 60, 40};
  const auto pts = rasterize_mca(c, 120, 120).points;
  std::vector<Point> sparse;
  for (std::size_t i = 0; i < pts.size(); i += 20) sparse.push_back(pts[i]);
  EXPECT_FALSE(validate(c, EdgeMap::from_points(120, 120, sparse), {}).accepted);
}

TEST(DetectSingle, CleanDiscOverManySeeds) {
  const EdgeMap m = canny_scene(disc_scene(100, 100, 40));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DetectorConfig config;
    config.emo.rng_seed = seed;
    const auto d = detect_single(m, config);
    EXPECT_GE(d.score, 0.0);
    EXPECT_LE(d.score, 1.0);
    EXPECT_GE(d.circle.r, config.r_min);
    if (near(d.circle, {100, 100, 40}, 1.0)) ++hits;
  }
  EXPECT_GE(hits, 95);
}

TEST(DetectSingle, SameSeedSameResult) {
  const EdgeMap m = canny_scene(synth::shape_discrimination_scene(1));
  DetectorConfig config;
  config.emo.rng_seed = 31;
  const auto a = detect_single(m, config);
  config.emo.backend = Backend::OpenMP;
  const auto b = detect_single(m, config);
  EXPECT_EQ(a.circle.x0, b.circle.x0);
  EXPECT_EQ(a.circle.y0, b.circle.y0);
  EXPECT_EQ(a.circle.r, b.circle.r);
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.edge_indices, b.edge_indices);
}

TEST(DetectSingle, AllCollinearEdgesFindNothing) {
  std::vector<Point> line;
  for (int x = 0; x < 50; ++x) line.push_back({x, 10});
  EXPECT_THROW(detect_single(EdgeMap::from_points(60, 20, line), {}), NoCircleFoundError);
}

TEST(DetectMultiple, ThreeDisjointDiscs) {
  int complete = 0;
  for (std::uint64_t scene = 0; scene < 5; ++scene) {
    const auto rendered = synth::render(synth::multi_circle_scene(100 + scene));
    const EdgeMap m = canny(rendered.image);
    DetectorConfig config;
    config.max_circles = 3;
    config.emo.rng_seed = scene;
    const auto found = detect_multiple(m, config);
    ASSERT_LE(found.size(), 3u);
    int matched = 0;
    for (const auto& t : rendered.truth) {
      for (const auto& f : found) matched += near(f.circle, t.circle, 1.5) ? 1 : 0;
    }
    if (matched == 3) ++complete;
    for (std::size_t i = 1; i < found.size(); ++i) EXPECT_LE(found[i - 1].score, found[i].score);
    for (const auto& f : found) {
      EXPECT_TRUE(f.validated);
      EXPECT_LT(mask_circle(m, f.circle, config.mask_tolerance_px).size(), m.size());
    }
  }
  EXPECT_GE(complete, 4);
}

TEST(DetectMultiple, SingleDiscYieldsOneCircle) {
  const EdgeMap m = canny_scene(disc_scene(100, 100, 40));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DetectorConfig config;
    config.max_circles = 3;
    config.emo.rng_seed = seed;
    const auto found = detect_multiple(m, config);
    ASSERT_EQ(found.size(), 1u) << seed;
    EXPECT_TRUE(near(found[0].circle, {100, 100, 40}, 1.5));
  }
}

TEST(DetectMultiple, OneCircleMatchesDetectSingle) {
  const EdgeMap m = canny_scene(disc_scene(90, 110, 33));
  DetectorConfig config;
  config.emo.rng_seed = 9;
  const auto single = detect_single(m, config);
  const auto list = detect_multiple(m, config);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].circle.x0, single.circle.x0);
  EXPECT_EQ(list[0].circle.r, single.circle.r);
  EXPECT_EQ(list[0].score, single.score);
}

TEST(DetectMultiple, SameSeedSameList) {
  const EdgeMap m = canny_scene(synth::multi_circle_scene(5));
  DetectorConfig config;
  config.max_circles = 5;
  config.emo.rng_seed = 2;
  const auto a = detect_multiple(m, config);
  const auto b = detect_multiple(m, config);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].circle.x0, b[i].circle.x0);
    EXPECT_EQ(a[i].circle.y0, b[i].circle.y0);
    EXPECT_EQ(a[i].circle.r, b[i].circle.r);
  }
}

TEST(Oracle, RefusesLargeMaps) {
  const EdgeMap m = raster_of({50, 50, 20}, 100, 100);
  DetectorConfig config;
  config.oracle_cap = 60;
  ASSERT_GT(m.size(), 60u);
  EXPECT_THROW(brute_force_oracle(m, config), SizeLimitError);
}

TEST(Oracle, ThreePointsIsTheOnlyTriple) {
  const std::vector<Point> pts{{10, 30}, {30, 10}, {50, 30}};
  const EdgeMap m = EdgeMap::from_points(60, 60, pts);
  const auto d = brute_force_oracle(m, {});
  EXPECT_EQ(d.edge_indices, (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_NEAR(d.circle.x0, 30, 1e-9);
  EXPECT_NEAR(d.circle.y0, 30, 1e-9);
  EXPECT_NEAR(d.circle.r, 20, 1e-9);
}

TEST(Oracle, IsTheMinimumOverAllTriples) {
  const auto sparse = synth::sparse_circle_edges(11, 40, 6);
  const EdgeMap& m = sparse.edges;
  DetectorConfig config;
  const auto d = brute_force_oracle(m, config);
  const auto dp = brute_force_oracle(m, config, Backend::OpenMP);
  EXPECT_EQ(d.edge_indices, dp.edge_indices);
  EXPECT_EQ(d.score, dp.score);

  double best = 1.0;
  std::array<std::size_t, 3> arg{0, 0, 0};
  bool any = false;
  const double n = static_cast<double>(m.size());
  for (double i = 0; i < n; ++i) {
    for (double j = i + 1; j < n; ++j) {
      for (double k = j + 1; k < n; ++k) {
        const double f = fitness({{i, j, k}}, m, config);
        if (!any || f < best) {
          best = f;
          arg = {static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)};
          any = true;
        }
      }
    }
  }
  EXPECT_EQ(d.score, best);
  EXPECT_EQ(d.edge_indices, arg);
}

TEST(Oracle, DominatesEmoAndEmoGetsClose) {
  const auto sparse = synth::sparse_circle_edges(21, 45, 5);
  DetectorConfig config;
  const double oracle = brute_force_oracle(sparse.edges, config).score;
  int close = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    config.emo.rng_seed = seed;
    const double emo = detect_single(sparse.edges, config).score;
    ASSERT_LE(oracle, emo);
    if (emo <= oracle + 0.05) ++close;
  }
  EXPECT_GE(close, 90);
}

}  // namespace
}  // namespace emoc
