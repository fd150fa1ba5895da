#pragma once

// Data-parallel kernels. Each kernel has a serial reference implementation and
// an OpenMP implementation; both produce bit-identical output, which the test
// suite checks and the benchmark target compares for speed.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace emoc {

enum class Backend { Serial, OpenMP };

std::string_view to_string(Backend backend);

namespace kernels {

using BatchObjective = std::function<double(std::span<const double>)>;

// out[p] = objective(positions[p]). The objective must be pure.
void evaluate_batch_serial(const BatchObjective& objective,
                           std::span<const std::vector<double>> positions, std::span<double> out);
void evaluate_batch_openmp(const BatchObjective& objective,
                           std::span<const std::vector<double>> positions, std::span<double> out);
void evaluate_batch(Backend backend, const BatchObjective& objective,
                    std::span<const std::vector<double>> positions, std::span<double> out);

struct TripleMinimum {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double score = 0.0;
  bool found = false;
  std::size_t evaluated = 0;
};

using TripleScore = std::function<double(std::size_t, std::size_t, std::size_t)>;

// Minimum of score(i, j, k) over all 0 <= i < j < k < n. Ties resolve to the
// lexicographically smallest (i, j, k).
TripleMinimum minimize_triples_serial(std::size_t n, const TripleScore& score);
TripleMinimum minimize_triples_openmp(std::size_t n, const TripleScore& score);
TripleMinimum minimize_triples(Backend backend, std::size_t n, const TripleScore& score);

// Row-major single-channel float plane.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  Plane() = default;
  Plane(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0f) {}

  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

// Separable convolution with a symmetric 1-D kernel, replicated borders.
Plane convolve_separable_serial(const Plane& in, std::span<const float> kernel);
Plane convolve_separable_openmp(const Plane& in, std::span<const float> kernel);
Plane convolve_separable(Backend backend, const Plane& in, std::span<const float> kernel);

struct Gradient {
  Plane gx;
  Plane gy;
  Plane magnitude;
};

// 3x3 Sobel derivatives and magnitude, replicated borders.
Gradient sobel_serial(const Plane& in);
Gradient sobel_openmp(const Plane& in);
Gradient sobel(Backend backend, const Plane& in);

// Non-maximum suppression along the quantized gradient direction.
Plane suppress_non_maxima_serial(const Gradient& g);
Plane suppress_non_maxima_openmp(const Gradient& g);
Plane suppress_non_maxima(Backend backend, const Gradient& g);

}  // namespace kernels
}  // namespace emoc
