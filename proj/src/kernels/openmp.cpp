#include <omp.h>

#include <limits>
#include <tuple>
#include <vector>

#include "emocircles/kernels.hpp"
#include "rows.hpp"

namespace emoc::kernels {
namespace {

bool precedes(const TripleMinimum& a, const TripleMinimum& b) {
  if (!b.found) return a.found;
  if (!a.found) return false;
  return std::tie(a.score, a.i, a.j, a.k) < std::tie(b.score, b.i, b.j, b.k);
}

}  // namespace

void evaluate_batch_openmp(const BatchObjective& objective,
                           std::span<const std::vector<double>> positions, std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(positions.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < count; ++p) out[p] = objective(positions[p]);
}

TripleMinimum minimize_triples_openmp(std::size_t n, const TripleScore& score) {
  TripleMinimum best;
  best.score = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  const auto rows = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
  {
    TripleMinimum local;
    local.score = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic, 1) reduction(+ : evaluated)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const double s = score(i, j, k);
          ++evaluated;
          if (s < local.score) {
            local.score = s;
            std::tie(local.i, local.j, local.k) = std::tie(i, j, k);
            local.found = true;
          }
        }
      }
    }
    // Total order on (score, i, j, k) makes the merge independent of thread
    // scheduling.
#pragma omp critical(emoc_minimize_triples)
    if (precedes(local, best)) {
      const std::size_t keep = best.evaluated;
      best = local;
      best.evaluated = keep;
    }
  }
  best.evaluated = evaluated;
  return best;
}

Plane convolve_separable_openmp(const Plane& in, std::span<const float> kernel) {
  Plane tmp(in.width, in.height);
  Plane out(in.width, in.height);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int y = 0; y < in.height; ++y) rows::convolve_horizontal(in, tmp, kernel, y);
#pragma omp for schedule(static)
    for (int y = 0; y < in.height; ++y) rows::convolve_vertical(tmp, out, kernel, y);
  }
  return out;
}

Gradient sobel_openmp(const Plane& in) {
  Gradient g{Plane(in.width, in.height), Plane(in.width, in.height), Plane(in.width, in.height)};
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height; ++y) rows::sobel(in, g, y);
  return g;
}

Plane suppress_non_maxima_openmp(const Gradient& g) {
  Plane out(g.magnitude.width, g.magnitude.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out.height; ++y) rows::suppress(g, out, y);
  return out;
}

}  // namespace emoc::kernels
