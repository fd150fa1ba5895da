#include <limits>
#include <tuple>

#include "emocircles/kernels.hpp"
#include "rows.hpp"

namespace emoc {

std::string_view to_string(Backend backend) {
  return backend == Backend::OpenMP ? "openmp" : "serial";
}

namespace kernels {

void evaluate_batch_serial(const BatchObjective& objective,
                           std::span<const std::vector<double>> positions, std::span<double> out) {
  for (std::size_t p = 0; p < positions.size(); ++p) out[p] = objective(positions[p]);
}

TripleMinimum minimize_triples_serial(std::size_t n, const TripleScore& score) {
  TripleMinimum best;
  best.score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double s = score(i, j, k);
        ++best.evaluated;
        // Enumeration is lexicographic, so strict < keeps the first minimum.
        if (s < best.score) {
          best.score = s;
          std::tie(best.i, best.j, best.k) = std::tie(i, j, k);
          best.found = true;
        }
      }
    }
  }
  return best;
}

Plane convolve_separable_serial(const Plane& in, std::span<const float> kernel) {
  Plane tmp(in.width, in.height);
  Plane out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) rows::convolve_horizontal(in, tmp, kernel, y);
  for (int y = 0; y < in.height; ++y) rows::convolve_vertical(tmp, out, kernel, y);
  return out;
}

Gradient sobel_serial(const Plane& in) {
  Gradient g{Plane(in.width, in.height), Plane(in.width, in.height), Plane(in.width, in.height)};
  for (int y = 0; y < in.height; ++y) rows::sobel(in, g, y);
  return g;
}

Plane suppress_non_maxima_serial(const Gradient& g) {
  Plane out(g.magnitude.width, g.magnitude.height);
  for (int y = 0; y < out.height; ++y) rows::suppress(g, out, y);
  return out;
}

void evaluate_batch(Backend backend, const BatchObjective& objective,
                    std::span<const std::vector<double>> positions, std::span<double> out) {
  if (backend == Backend::OpenMP) {
    evaluate_batch_openmp(objective, positions, out);
  } else {
    evaluate_batch_serial(objective, positions, out);
  }
}

TripleMinimum minimize_triples(Backend backend, std::size_t n, const TripleScore& score) {
  return backend == Backend::OpenMP ? minimize_triples_openmp(n, score)
                                    : minimize_triples_serial(n, score);
}

Plane convolve_separable(Backend backend, const Plane& in, std::span<const float> kernel) {
  return backend == Backend::OpenMP ? convolve_separable_openmp(in, kernel)
                                    : convolve_separable_serial(in, kernel);
}

Gradient sobel(Backend backend, const Plane& in) {
  return backend == Backend::OpenMP ? sobel_openmp(in) : sobel_serial(in);
}

Plane suppress_non_maxima(Backend backend, const Gradient& g) {
  return backend == Backend::OpenMP ? suppress_non_maxima_openmp(g) : suppress_non_maxima_serial(g);
}

}  // namespace kernels
}  // namespace emoc
