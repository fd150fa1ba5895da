#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "emocircles/image_io.hpp"
#include "emocircles/kernels.hpp"
#include "emocircles/types.hpp"

namespace emoc {

// Set of edge pixels kept both as an ordered vector (row-major) and as a
// membership raster for constant-time lookup. Immutable once built.
class EdgeMap {
 public:
  EdgeMap() = default;
  EdgeMap(int width, int height);

  // Points may come in any order and may repeat; the result is deduplicated
  // and enumerated row-major. Throws ParameterError for out-of-range points.
  static EdgeMap from_points(int width, int height, std::span<const Point> points);
  // Nonzero entries are edges. raster.size() must be width * height.
  static EdgeMap from_raster(int width, int height, std::span<const std::uint8_t> raster);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  std::span<const Point> points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_ &&
           raster_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  bool contains(Point p) const { return contains(p.x, p.y); }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::span<const std::uint8_t> raster() const { return raster_; }

  friend bool operator==(const EdgeMap& a, const EdgeMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.points_ == b.points_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Point> points_;
  std::vector<std::uint8_t> raster_;
};

// Thresholds are fractions of the largest gradient magnitude in the image.
struct CannyParams {
  double gaussian_sigma = 1.4;
  double low_threshold = 0.1;
  double high_threshold = 0.3;
  Backend backend = Backend::Serial;

  void validate() const;
};

// Gaussian smoothing, Sobel gradient, non-maximum suppression and hysteresis.
// Throws ParameterError for images smaller than 3x3.
EdgeMap canny(const GrayImage& image, const CannyParams& params = {});

// Removes every edge point within tolerance_px of the circle's circumference.
EdgeMap mask_circle(const EdgeMap& edges, const Circle& circle, double tolerance_px);

// Edge map rendered as a gray image (edges 255).
GrayImage to_image(const EdgeMap& edges);

}  // namespace emoc
