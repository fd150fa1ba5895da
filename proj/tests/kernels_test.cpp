#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "emocircles/kernels.hpp"
#include "emocircles/rng.hpp"

namespace emoc::kernels {
namespace {

class Kernels : public ::testing::Test {
 protected:
  // Force real concurrency even on single-core machines.
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

Plane random_plane(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  Plane p(w, h);
  for (float& v : p.data) v = static_cast<float>(rng.uniform(0.0, 255.0));
  return p;
}

Plane ramp(int w, int h, float a, float b) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) p.at(x, y) = a * x + b * y;
  }
  return p;
}

TEST_F(Kernels, EvaluateBatchMatchesDirectCalls) {
  Rng rng(1);
  std::vector<std::vector<double>> positions(257, std::vector<double>(3));
  for (auto& p : positions) {
    for (double& v : p) v = rng.uniform(-3, 3);
  }
  const BatchObjective f = [](std::span<const double> x) { return std::sin(x[0]) * x[1] + x[2] * x[2]; };
  std::vector<double> serial(positions.size()), parallel(positions.size());
  evaluate_batch_serial(f, positions, serial);
  evaluate_batch_openmp(f, positions, parallel);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    ASSERT_EQ(serial[i], f(positions[i]));
    ASSERT_EQ(parallel[i], serial[i]);
  }
}

TEST_F(Kernels, TripleMinimumKnownAnswer) {
  const TripleScore score = [](std::size_t i, std::size_t j, std::size_t k) {
    const double di = double(i) - 3, dj = double(j) - 7, dk = double(k) - 12;
    return di * di + dj * dj + dk * dk;
  };
  for (const auto& m : {minimize_triples_serial(20, score), minimize_triples_openmp(20, score)}) {
    EXPECT_TRUE(m.found);
    EXPECT_EQ(m.i, 3u);
    EXPECT_EQ(m.j, 7u);
    EXPECT_EQ(m.k, 12u);
    EXPECT_EQ(m.score, 0.0);
    EXPECT_EQ(m.evaluated, 20u * 19u * 18u / 6u);
  }
}

TEST_F(Kernels, TripleTiesResolveLexicographically) {
  const TripleScore flat = [](std::size_t, std::size_t, std::size_t) { return 0.5; };
  const TripleScore two = [](std::size_t i, std::size_t j, std::size_t k) {
    return (i == 9 && j == 10 && k == 30) || (i == 2 && j == 28 && k == 29) ? 0.0 : 1.0;
  };
  for (Backend b : {Backend::Serial, Backend::OpenMP}) {
    const auto m = minimize_triples(b, 31, flat);
    EXPECT_EQ(m.i, 0u);
    EXPECT_EQ(m.j, 1u);
    EXPECT_EQ(m.k, 2u);
    const auto t = minimize_triples(b, 31, two);
    EXPECT_EQ(t.i, 2u);
    EXPECT_EQ(t.j, 28u);
    EXPECT_EQ(t.k, 29u);
  }
}

TEST_F(Kernels, TripleMinimumAgreesOnRandomScores) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::uint64_t base = derive_seed(seed, 0);
    const TripleScore score = [base](std::size_t i, std::size_t j, std::size_t k) {
      // Coarse values to make ties common.
      return static_cast<double>(derive_seed(base, i * 10007 + j * 101 + k) % 50);
    };
    const auto s = minimize_triples_serial(25, score);
    const auto p = minimize_triples_openmp(25, score);
    EXPECT_EQ(s.i, p.i);
    EXPECT_EQ(s.j, p.j);
    EXPECT_EQ(s.k, p.k);
    EXPECT_EQ(s.score, p.score);
  }
}

TEST_F(Kernels, TooFewItemsFindNothing) {
  const TripleScore score = [](std::size_t, std::size_t, std::size_t) { return 0.0; };
  EXPECT_FALSE(minimize_triples_serial(2, score).found);
  EXPECT_FALSE(minimize_triples_openmp(2, score).found);
}

TEST_F(Kernels, IdentityKernelCopies) {
  const Plane in = random_plane(17, 9, 3);
  const float one[] = {1.0f};
  EXPECT_EQ(convolve_separable_serial(in, one).data, in.data);
  EXPECT_EQ(convolve_separable_openmp(in, one).data, in.data);
}

TEST_F(Kernels, BoxBlurOfConstantIsConstant) {
  Plane in(12, 7);
  for (float& v : in.data) v = 42.0f;
  const float box[] = {0.25f, 0.5f, 0.25f};
  for (float v : convolve_separable_serial(in, box).data) EXPECT_FLOAT_EQ(v, 42.0f);
}

TEST_F(Kernels, SobelOfRampIsConstantInterior) {
  const Gradient g = sobel_serial(ramp(10, 8, 2.0f, 3.0f));
  for (int y = 1; y < 7; ++y) {
    for (int x = 1; x < 9; ++x) {
      EXPECT_FLOAT_EQ(g.gx.at(x, y), 16.0f);
      EXPECT_FLOAT_EQ(g.gy.at(x, y), 24.0f);
      EXPECT_FLOAT_EQ(g.magnitude.at(x, y), std::hypot(16.0f, 24.0f));
    }
  }
}

TEST_F(Kernels, SuppressionKeepsRidgeOnly) {
  // Vertical ridge at x = 5.
  Plane in(11, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 11; ++x) in.at(x, y) = static_cast<float>(x <= 5 ? x : 10 - x);
  }
  Gradient g;
  g.gx = Plane(11, 5);
  g.gy = Plane(11, 5);
  g.magnitude = Plane(11, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 11; ++x) {
      g.gx.at(x, y) = 1.0f;
      g.magnitude.at(x, y) = 10.0f - std::abs(x - 5.0f);
    }
  }
  const Plane out = suppress_non_maxima_serial(g);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 11; ++x) EXPECT_EQ(out.at(x, y) > 0.0f, x == 5) << x << "," << y;
  }
}

TEST_F(Kernels, ImageKernelsBitIdenticalAcrossBackends) {
  const float gauss[] = {0.05f, 0.25f, 0.4f, 0.25f, 0.05f};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Plane in = random_plane(97 + static_cast<int>(seed), 61, seed);
    const Plane bs = convolve_separable_serial(in, gauss);
    const Plane bp = convolve_separable_openmp(in, gauss);
    ASSERT_EQ(bs.data, bp.data);
    const Gradient gs = sobel_serial(bs);
    const Gradient gp = sobel_openmp(bs);
    ASSERT_EQ(gs.gx.data, gp.gx.data);
    ASSERT_EQ(gs.gy.data, gp.gy.data);
    ASSERT_EQ(gs.magnitude.data, gp.magnitude.data);
    ASSERT_EQ(suppress_non_maxima_serial(gs).data, suppress_non_maxima_openmp(gs).data);
  }
}

TEST_F(Kernels, BackendNames) {
  EXPECT_EQ(to_string(Backend::Serial), "serial");
  EXPECT_EQ(to_string(Backend::OpenMP), "openmp");
}

}  // namespace
}  // namespace emoc::kernels
