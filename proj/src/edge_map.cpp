#include "emocircles/edge_map.hpp"

#include <algorithm>

#include "emocircles/error.hpp"

namespace emoc {

EdgeMap::EdgeMap(int width, int height)
    : width_(width), height_(height), raster_(static_cast<std::size_t>(width) * height, 0) {
  if (width < 0 || height < 0) throw ParameterError("edge map dimensions must be non-negative");
}

EdgeMap EdgeMap::from_points(int width, int height, std::span<const Point> points) {
  EdgeMap map(width, height);
  for (const Point& p : points) {
    if (!map.in_bounds(p.x, p.y)) {
      throw ParameterError("edge point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                           ") lies outside the " + std::to_string(width) + "x" +
                           std::to_string(height) + " raster");
    }
    map.raster_[static_cast<std::size_t>(p.y) * width + p.x] = 1;
  }
  // Scanning the raster yields the row-major order without duplicates.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (map.raster_[static_cast<std::size_t>(y) * width + x]) map.points_.push_back({x, y});
    }
  }
  return map;
}

EdgeMap EdgeMap::from_raster(int width, int height, std::span<const std::uint8_t> raster) {
  if (raster.size() != static_cast<std::size_t>(width) * height) {
    throw ParameterError("raster size does not match width * height");
  }
  EdgeMap map(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      if (raster[i]) {
        map.raster_[i] = 1;
        map.points_.push_back({x, y});
      }
    }
  }
  return map;
}

EdgeMap mask_circle(const EdgeMap& edges, const Circle& circle, double tolerance_px) {
  if (!(tolerance_px >= 0.0)) throw ParameterError("mask tolerance must be non-negative");
  std::vector<Point> kept;
  kept.reserve(edges.size());
  for (const Point& p : edges.points()) {
    if (circle.distance_to_circumference(p.x, p.y) > tolerance_px) kept.push_back(p);
  }
  return EdgeMap::from_points(edges.width(), edges.height(), kept);
}

GrayImage to_image(const EdgeMap& edges) {
  GrayImage image(edges.width(), edges.height());
  for (const Point& p : edges.points()) image.at(p.x, p.y) = 255;
  return image;
}

}  // namespace emoc
