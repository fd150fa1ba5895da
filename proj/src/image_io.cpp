#include "emocircles/image_io.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "emocircles/edge_map.hpp"
#include "emocircles/error.hpp"

namespace emoc {
namespace {

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return bytes;
}

void write_all(const std::filesystem::path& path, const std::string& header,
               std::span<const std::uint8_t> payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

ImageFormat sniff(std::span<const std::uint8_t> bytes, const std::string& name) {
  static constexpr std::array<std::uint8_t, 8> kPngMagic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= kPngMagic.size() && std::equal(kPngMagic.begin(), kPngMagic.end(), bytes.begin())) {
    return ImageFormat::Png;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '1' || bytes[1] == '4') return ImageFormat::Pbm;
    if (bytes[1] == '2' || bytes[1] == '5') return ImageFormat::Pgm;
  }
  throw UnsupportedFormatError(name + ": not a PBM, PGM or PNG file");
}

// Reader for the whitespace/comment separated header of the netpbm formats.
class NetpbmReader {
 public:
  NetpbmReader(std::span<const std::uint8_t> bytes, std::string name)
      : bytes_(bytes), name_(std::move(name)) {}

  char magic() {
    if (bytes_.size() < 2) fail("truncated header");
    pos_ = 2;
    return static_cast<char>(bytes_[1]);
  }

  int integer(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail(std::string("expected ") + what);
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) fail(std::string(what) + " out of range");
    }
    return static_cast<int>(value);
  }

  // Single whitespace byte that separates the header from binary data.
  void end_of_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing whitespace after header");
    ++pos_;
  }

  int ascii_bit() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail("truncated pixel data");
    const char c = static_cast<char>(bytes_[pos_++]);
    if (c != '0' && c != '1') fail("invalid bit value");
    return c - '0';
  }

  std::span<const std::uint8_t> remaining(std::size_t need) {
    if (bytes_.size() - pos_ < need) fail("truncated pixel data");
    auto out = bytes_.subspan(pos_, need);
    pos_ += need;
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedFileError(name_ + ": " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

void check_dimensions(NetpbmReader& reader, int w, int h) {
  if (w <= 0 || h <= 0) reader.fail("image dimensions must be positive");
}

// PBM as an ink mask: 1 for set bits.
GrayImage decode_pbm(std::span<const std::uint8_t> bytes, const std::string& name) {
  NetpbmReader reader(bytes, name);
  const char kind = reader.magic();
  const int w = reader.integer("width");
  const int h = reader.integer("height");
  check_dimensions(reader, w, h);
  GrayImage image(w, h);
  if (kind == '4') {
    reader.end_of_header();
    const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
    auto data = reader.remaining(stride * h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::uint8_t byte = data[y * stride + x / 8];
        image.at(x, y) = (byte >> (7 - x % 8)) & 1 ? 1 : 0;
      }
    }
  } else {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) image.at(x, y) = static_cast<std::uint8_t>(reader.ascii_bit());
    }
  }
  return image;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes, const std::string& name) {
  NetpbmReader reader(bytes, name);
  const char kind = reader.magic();
  const int w = reader.integer("width");
  const int h = reader.integer("height");
  check_dimensions(reader, w, h);
  const int maxval = reader.integer("maxval");
  if (maxval <= 0 || maxval > 65535) reader.fail("maxval out of range");
  GrayImage image(w, h);
  auto scale = [maxval](int v) {
    return static_cast<std::uint8_t>(std::lround(255.0 * std::min(v, maxval) / maxval));
  };
  const std::size_t count = static_cast<std::size_t>(w) * h;
  if (kind == '5') {
    reader.end_of_header();
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    auto data = reader.remaining(count * bytes_per);
    for (std::size_t i = 0; i < count; ++i) {
      const int v = bytes_per == 2 ? (data[2 * i] << 8) | data[2 * i + 1] : data[i];
      image.data[i] = scale(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) image.data[i] = scale(reader.integer("pixel value"));
  }
  return image;
}

GrayImage decode_png(const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw MalformedFileError(path.string() + ": " + png.message);
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw MalformedFileError(path.string() + ": " + message);
  }
  const int w = static_cast<int>(png.width);
  const int h = static_cast<int>(png.height);
  GrayImage image(w, h);
  if (!color) {
    image.data = std::move(buffer);
    return image;
  }
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    const double luma = 0.299 * buffer[3 * i] + 0.587 * buffer[3 * i + 1] + 0.114 * buffer[3 * i + 2];
    image.data[i] = static_cast<std::uint8_t>(std::min(255.0, std::floor(luma + 0.5)));
  }
  return image;
}

void encode_png(const std::filesystem::path& path, int w, int h, png_uint_32 format,
                const std::uint8_t* data) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(w);
  png.height = static_cast<png_uint_32>(h);
  png.format = format;
  if (!png_image_write_to_file(&png, path.c_str(), 0, data, 0, nullptr)) {
    throw IoError(path.string() + ": " + png.message);
  }
}

}  // namespace

RgbImage RgbImage::from_gray(const GrayImage& gray) {
  RgbImage rgb(gray.width, gray.height);
  for (std::size_t i = 0; i < gray.data.size(); ++i) {
    rgb.data[3 * i] = rgb.data[3 * i + 1] = rgb.data[3 * i + 2] = gray.data[i];
  }
  return rgb;
}

void RgbImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  if (!in_bounds(x, y)) return;
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
  data[i] = r;
  data[i + 1] = g;
  data[i + 2] = b;
}

ImageFormat detect_format(const std::filesystem::path& path) {
  return sniff(read_all(path), path.string());
}

GrayImage load_image(const std::filesystem::path& path, ImageFormat format) {
  const auto bytes = read_all(path);
  const ImageFormat actual = sniff(bytes, path.string());
  if (format != ImageFormat::Auto && format != actual) {
    throw UnsupportedFormatError(path.string() + ": content does not match the requested format");
  }
  switch (actual) {
    case ImageFormat::Pbm: {
      GrayImage image = decode_pbm(bytes, path.string());
      for (auto& v : image.data) v = v ? 255 : 0;
      return image;
    }
    case ImageFormat::Pgm:
      return decode_pgm(bytes, path.string());
    case ImageFormat::Png:
    case ImageFormat::Auto:
      break;
  }
  return decode_png(path);
}

EdgeMap edge_map_from_image(const GrayImage& image) {
  return EdgeMap::from_raster(image.width, image.height, image.data);
}

EdgeMap load_edge_map(const std::filesystem::path& path, ImageFormat format) {
  return edge_map_from_image(load_image(path, format));
}

void save_edge_map_pbm(const EdgeMap& edges, const std::filesystem::path& path) {
  const std::size_t stride = (static_cast<std::size_t>(edges.width()) + 7) / 8;
  std::vector<std::uint8_t> payload(stride * edges.height(), 0);
  for (const Point& p : edges.points()) {
    payload[p.y * stride + p.x / 8] |= static_cast<std::uint8_t>(0x80u >> (p.x % 8));
  }
  write_all(path, "P4\n" + std::to_string(edges.width()) + " " + std::to_string(edges.height()) + "\n",
            payload);
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  write_all(path,
            "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n",
            image.data);
}

void save_png(const GrayImage& image, const std::filesystem::path& path) {
  encode_png(path, image.width, image.height, PNG_FORMAT_GRAY, image.data.data());
}

void save_png(const RgbImage& image, const std::filesystem::path& path) {
  encode_png(path, image.width, image.height, PNG_FORMAT_RGB, image.data.data());
}

}  // namespace emoc
