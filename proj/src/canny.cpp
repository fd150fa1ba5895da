#include <algorithm>
#include <cmath>
#include <vector>

#include "emocircles/edge_map.hpp"
#include "emocircles/error.hpp"

namespace emoc {
namespace {

std::vector<float> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<float> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double w = std::exp(-0.5 * t * t / (sigma * sigma));
    kernel[static_cast<std::size_t>(t + radius)] = static_cast<float>(w);
    sum += w;
  }
  for (float& w : kernel) w = static_cast<float>(w / sum);
  return kernel;
}

}  // namespace

void CannyParams::validate() const {
  if (!(gaussian_sigma > 0.0) || !std::isfinite(gaussian_sigma)) {
    throw ParameterError("gaussian_sigma must be positive");
  }
  if (!(low_threshold > 0.0 && low_threshold < high_threshold)) {
    throw ParameterError("Canny thresholds require 0 < low < high");
  }
}

EdgeMap canny(const GrayImage& image, const CannyParams& params) {
  params.validate();
  if (image.width < 3 || image.height < 3) throw ParameterError("Canny needs an image of at least 3x3");
  if (image.data.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw ParameterError("image data does not match its dimensions");
  }

  kernels::Plane input(image.width, image.height);
  std::transform(image.data.begin(), image.data.end(), input.data.begin(),
                 [](std::uint8_t v) { return static_cast<float>(v); });

  const auto kernel = gaussian_kernel(params.gaussian_sigma);
  const kernels::Plane smoothed = kernels::convolve_separable(params.backend, input, kernel);
  const kernels::Gradient gradient = kernels::sobel(params.backend, smoothed);
  const kernels::Plane thin = kernels::suppress_non_maxima(params.backend, gradient);

  const float max_gradient = *std::max_element(gradient.magnitude.data.begin(), gradient.magnitude.data.end());
  EdgeMap empty(image.width, image.height);
  if (!(max_gradient > 0.0f)) return empty;
  const float high = static_cast<float>(params.high_threshold) * max_gradient;
  const float low = static_cast<float>(params.low_threshold) * max_gradient;

  // Hysteresis: grow strong pixels through 8-connected weak ones.
  const int w = image.width;
  const int h = image.height;
  std::vector<std::uint8_t> raster(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (raster[i] || thin.data[i] < high) continue;
      raster[i] = 1;
      stack.push_back(static_cast<int>(i));
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int cx = c % w;
        const int cy = c / w;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
            if (!raster[n] && thin.data[n] >= low) {
              raster[n] = 1;
              stack.push_back(static_cast<int>(n));
            }
          }
        }
      }
    }
  }
  return EdgeMap::from_raster(w, h, raster);
}

}  // namespace emoc
