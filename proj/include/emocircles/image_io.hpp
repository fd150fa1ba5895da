#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace emoc {

class EdgeMap;

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // interleaved RGB

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  static RgbImage from_gray(const GrayImage& gray);

  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

enum class ImageFormat { Auto, Pbm, Pgm, Png };

// Sniffs the magic bytes. Throws IoError if unreadable, UnsupportedFormatError
// for anything other than PBM, PGM or PNG.
ImageFormat detect_format(const std::filesystem::path& path);

// Loads PNG (gray or color), PGM or PBM as 8-bit gray. Color is reduced with
// Rec. 601 luma weights; PBM ink bits load as 255.
GrayImage load_image(const std::filesystem::path& path, ImageFormat format = ImageFormat::Auto);

// Any nonzero pixel is an edge.
EdgeMap edge_map_from_image(const GrayImage& image);

// Loads an edge raster (PBM, or PNG/PGM where nonzero = edge).
EdgeMap load_edge_map(const std::filesystem::path& path, ImageFormat format = ImageFormat::Auto);

// Binary PBM (P4): one bit per pixel, rows padded to whole bytes, MSB first,
// 1 = edge.
void save_edge_map_pbm(const EdgeMap& edges, const std::filesystem::path& path);

void save_pgm(const GrayImage& image, const std::filesystem::path& path);
void save_png(const GrayImage& image, const std::filesystem::path& path);
void save_png(const RgbImage& image, const std::filesystem::path& path);

}  // namespace emoc
