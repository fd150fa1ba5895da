#include "emocircles/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emocircles/error.hpp"
#include "emocircles/geometry.hpp"
#include "emocircles/rng.hpp"

namespace emoc::synth {
namespace {

using nlohmann::json;

constexpr std::uint64_t kNoiseStream = 0x5a17;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Box {
  double x0, y0, x1, y1;
};

std::vector<Point> bresenham(Point a, Point b) {
  std::vector<Point> out;
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  Point p = a;
  while (true) {
    out.push_back(p);
    if (p == b) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.y += sy;
    }
  }
  return out;
}

Point snap(PointD p) { return {round_to_pixel(p.x), round_to_pixel(p.y)}; }

void append(std::vector<Point>& out, const std::vector<Point>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<Point> polygon_outline(std::span<const PointD> vertices) {
  std::vector<Point> out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    append(out, bresenham(snap(vertices[v]), snap(vertices[(v + 1) % vertices.size()])));
  }
  return out;
}

double degrees_mod(double deg) {
  double v = std::fmod(deg, 360.0);
  return v < 0.0 ? v + 360.0 : v;
}

double arc_span(const ArcShape& arc) { return std::clamp(arc.end_deg - arc.start_deg, 0.0, 360.0); }

std::array<PointD, 4> ellipse_axes(const EllipseShape& e) {
  const double t = e.angle_deg * std::numbers::pi / 180.0;
  return {PointD{std::cos(t), std::sin(t)}, PointD{-std::sin(t), std::cos(t)}, {}, {}};
}

// Pixels covered by a shape; filled shapes include their interior.
std::vector<Point> coverage(const ShapeGeometry& shape, bool outline_only) {
  return std::visit(
      Overloaded{
          [&](const CircleShape& c) {
            if (!c.filled || outline_only) {
              return midpoint_circle(round_to_pixel(c.x0), round_to_pixel(c.y0), c.r);
            }
            std::vector<Point> out;
            for (int y = static_cast<int>(std::floor(c.y0 - c.r)); y <= std::ceil(c.y0 + c.r); ++y) {
              for (int x = static_cast<int>(std::floor(c.x0 - c.r)); x <= std::ceil(c.x0 + c.r); ++x) {
                if ((x - c.x0) * (x - c.x0) + (y - c.y0) * (y - c.y0) <= c.r * c.r) out.push_back({x, y});
              }
            }
            return out;
          },
          [&](const RectangleShape& r) {
            if (!r.filled || outline_only) {
              const std::array<PointD, 4> v{PointD{r.x, r.y}, {r.x + r.w, r.y}, {r.x + r.w, r.y + r.h},
                                            {r.x, r.y + r.h}};
              return polygon_outline(v);
            }
            std::vector<Point> out;
            for (int y = static_cast<int>(std::ceil(r.y)); y <= std::floor(r.y + r.h); ++y) {
              for (int x = static_cast<int>(std::ceil(r.x)); x <= std::floor(r.x + r.w); ++x) out.push_back({x, y});
            }
            return out;
          },
          [&](const LineShape& l) { return bresenham(snap({l.x1, l.y1}), snap({l.x2, l.y2})); },
          [&](const TriangleShape& t) {
            if (!t.filled || outline_only) return polygon_outline(t.vertices);
            const auto& v = t.vertices;
            auto side = [](PointD a, PointD b, double x, double y) {
              return (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
            };
            std::vector<Point> out;
            const double x_lo = std::min({v[0].x, v[1].x, v[2].x});
            const double x_hi = std::max({v[0].x, v[1].x, v[2].x});
            const double y_lo = std::min({v[0].y, v[1].y, v[2].y});
            const double y_hi = std::max({v[0].y, v[1].y, v[2].y});
            for (int y = static_cast<int>(std::ceil(y_lo)); y <= std::floor(y_hi); ++y) {
              for (int x = static_cast<int>(std::ceil(x_lo)); x <= std::floor(x_hi); ++x) {
                const double s0 = side(v[0], v[1], x, y);
                const double s1 = side(v[1], v[2], x, y);
                const double s2 = side(v[2], v[0], x, y);
                const bool neg = s0 < 0 || s1 < 0 || s2 < 0;
                const bool pos = s0 > 0 || s1 > 0 || s2 > 0;
                if (!(neg && pos)) out.push_back({x, y});
              }
            }
            return out;
          },
          [&](const ArcShape& a) {
            const int cx = round_to_pixel(a.x0);
            const int cy = round_to_pixel(a.y0);
            const double span = arc_span(a);
            std::vector<Point> out;
            for (const Point& p : midpoint_circle(cx, cy, a.r)) {
              const double angle = std::atan2(p.y - cy, p.x - cx) * 180.0 / std::numbers::pi;
              if (span >= 360.0 || degrees_mod(angle - a.start_deg) <= span) out.push_back(p);
            }
            return out;
          },
          [&](const EllipseShape& e) {
            const auto axes = ellipse_axes(e);
            std::vector<Point> out;
            if (!e.filled || outline_only) {
              const int samples = static_cast<int>(std::ceil(4.0 * std::numbers::pi * std::max(e.a, e.b))) + 8;
              for (int i = 0; i < samples; ++i) {
                const double t = 2.0 * std::numbers::pi * i / samples;
                const double u = e.a * std::cos(t);
                const double v = e.b * std::sin(t);
                out.push_back(snap({e.x0 + u * axes[0].x + v * axes[1].x, e.y0 + u * axes[0].y + v * axes[1].y}));
              }
              return out;
            }
            const double reach = std::max(e.a, e.b);
            for (int y = static_cast<int>(std::floor(e.y0 - reach)); y <= std::ceil(e.y0 + reach); ++y) {
              for (int x = static_cast<int>(std::floor(e.x0 - reach)); x <= std::ceil(e.x0 + reach); ++x) {
                const double dx = x - e.x0;
                const double dy = y - e.y0;
                const double u = dx * axes[0].x + dy * axes[0].y;
                const double v = dx * axes[1].x + dy * axes[1].y;
                if ((u * u) / (e.a * e.a) + (v * v) / (e.b * e.b) <= 1.0) out.push_back({x, y});
              }
            }
            return out;
          },
      },
      shape);
}

bool is_filled(const ShapeGeometry& shape) {
  return std::visit(Overloaded{[](const CircleShape& s) { return s.filled; },
                               [](const RectangleShape& s) { return s.filled; },
                               [](const TriangleShape& s) { return s.filled; },
                               [](const EllipseShape& s) { return s.filled; },
                               [](const auto&) { return false; }},
                    shape);
}

Box bounding_box(const ShapeGeometry& shape) {
  return std::visit(
      Overloaded{
          [](const CircleShape& c) { return Box{c.x0 - c.r, c.y0 - c.r, c.x0 + c.r, c.y0 + c.r}; },
          [](const RectangleShape& r) { return Box{r.x, r.y, r.x + r.w, r.y + r.h}; },
          [](const LineShape& l) {
            return Box{std::min(l.x1, l.x2), std::min(l.y1, l.y2), std::max(l.x1, l.x2), std::max(l.y1, l.y2)};
          },
          [](const TriangleShape& t) {
            const auto& v = t.vertices;
            return Box{std::min({v[0].x, v[1].x, v[2].x}), std::min({v[0].y, v[1].y, v[2].y}),
                       std::max({v[0].x, v[1].x, v[2].x}), std::max({v[0].y, v[1].y, v[2].y})};
          },
          [](const ArcShape& a) { return Box{a.x0 - a.r, a.y0 - a.r, a.x0 + a.r, a.y0 + a.r}; },
          [](const EllipseShape& e) {
            const double reach = std::max(e.a, e.b);
            return Box{e.x0 - reach, e.y0 - reach, e.x0 + reach, e.y0 + reach};
          },
      },
      shape);
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw SpecError(field, message);
}

bool finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void validate_shape(const ShapeGeometry& shape, const std::string& field) {
  std::visit(Overloaded{
                 [&](const CircleShape& c) {
                   require(finite({c.x0, c.y0, c.r}) && c.r >= 1.0, field, "circle needs finite center and r >= 1");
                 },
                 [&](const RectangleShape& r) {
                   require(finite({r.x, r.y, r.w, r.h}) && r.w > 0 && r.h > 0, field,
                           "rectangle needs finite corner and positive size");
                 },
                 [&](const LineShape& l) { require(finite({l.x1, l.y1, l.x2, l.y2}), field, "line needs finite endpoints"); },
                 [&](const TriangleShape& t) {
                   for (const auto& v : t.vertices) require(finite({v.x, v.y}), field, "triangle needs finite vertices");
                 },
                 [&](const ArcShape& a) {
                   require(finite({a.x0, a.y0, a.r, a.start_deg, a.end_deg}) && a.r >= 1.0, field,
                           "arc needs finite parameters and r >= 1");
                   require(a.end_deg > a.start_deg, field, "arc end_deg must exceed start_deg");
                 },
                 [&](const EllipseShape& e) {
                   require(finite({e.x0, e.y0, e.a, e.b, e.angle_deg}) && e.a >= 1.0 && e.b >= 1.0, field,
                           "ellipse needs finite parameters and semi-axes >= 1");
                 },
             },
             shape);
}

std::vector<GroundTruth> ground_truth(const SceneSpec& spec) {
  std::vector<GroundTruth> truth;
  for (const Shape& shape : spec.shapes) {
    if (shape.intensity == 0) continue;
    if (const auto* c = std::get_if<CircleShape>(&shape.geometry)) {
      truth.push_back({{c->x0, c->y0, c->r}, 1.0, 0.0});
    } else if (const auto* a = std::get_if<ArcShape>(&shape.geometry)) {
      truth.push_back({{a->x0, a->y0, a->r}, arc_span(*a) / 360.0, 0.0});
    } else if (const auto* e = std::get_if<EllipseShape>(&shape.geometry)) {
      truth.push_back({{e->x0, e->y0, 0.5 * (e->a + e->b)}, 1.0, std::abs(e->a - e->b)});
    }
  }
  return truth;
}

// Exactly round(fraction * pixels) distinct pixel indices (partial
// Fisher-Yates), in draw order.
std::vector<std::size_t> noise_pixels(const SceneSpec& spec) {
  const std::size_t total = static_cast<std::size_t>(spec.width) * spec.height;
  const auto count = static_cast<std::size_t>(std::floor(spec.noise.salt_pepper_fraction * total + 0.5));
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  Rng rng(derive_seed(spec.rng_seed, kNoiseStream));
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(order[i], order[j]);
  }
  order.resize(count);
  return order;
}

void paint(std::vector<std::uint8_t>& canvas, int width, int height, const std::vector<Point>& pixels,
           std::uint8_t value) {
  for (const Point& p : pixels) {
    if (p.x >= 0 && p.y >= 0 && p.x < width && p.y < height) {
      canvas[static_cast<std::size_t>(p.y) * width + p.x] = value;
    }
  }
}

// --- JSON ---

std::string join(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

double number(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key)) throw SpecError(join(field, key), "missing");
  if (!j.at(key).is_number()) throw SpecError(join(field, key), "expected a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& field) {
  return j.contains(key) ? number(j, key, field) : fallback;
}

bool flag_or(const json& j, const char* key, bool fallback, const std::string& field) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw SpecError(join(field, key), "expected true or false");
  return j.at(key).get<bool>();
}

std::int64_t integer(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key)) throw SpecError(join(field, key), "missing");
  if (!j.at(key).is_number_integer()) throw SpecError(join(field, key), "expected an integer");
  return j.at(key).get<std::int64_t>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& field) {
  if (!j.is_object()) throw SpecError(field, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      throw SpecError(join(field, key), "unknown key");
    }
  }
}

Shape shape_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw SpecError(join(field, "type"), "missing shape type");
  }
  const std::string type = j.at("type").get<std::string>();
  Shape shape;
  if (j.contains("intensity")) {
    const auto v = integer(j, "intensity", field);
    if (v < 0 || v > 255) throw SpecError(field + ".intensity", "must lie in [0, 255]");
    shape.intensity = static_cast<std::uint8_t>(v);
  }
  if (type == "circle") {
    check_keys(j, {"type", "intensity", "x0", "y0", "r", "filled"}, field);
    shape.geometry = CircleShape{number(j, "x0", field), number(j, "y0", field), number(j, "r", field),
                                 flag_or(j, "filled", false, field)};
  } else if (type == "rectangle") {
    check_keys(j, {"type", "intensity", "x", "y", "w", "h", "filled"}, field);
    shape.geometry = RectangleShape{number(j, "x", field), number(j, "y", field), number(j, "w", field),
                                    number(j, "h", field), flag_or(j, "filled", false, field)};
  } else if (type == "line") {
    check_keys(j, {"type", "intensity", "x1", "y1", "x2", "y2"}, field);
    shape.geometry = LineShape{number(j, "x1", field), number(j, "y1", field), number(j, "x2", field),
                               number(j, "y2", field)};
  } else if (type == "triangle") {
    check_keys(j, {"type", "intensity", "vertices", "filled"}, field);
    const json& v = j.contains("vertices") ? j.at("vertices") : json();
    if (!v.is_array() || v.size() != 3) throw SpecError(field + ".vertices", "expected three [x, y] pairs");
    TriangleShape t;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_array() || v[i].size() != 2 || !v[i][0].is_number() || !v[i][1].is_number()) {
        throw SpecError(field + ".vertices[" + std::to_string(i) + "]", "expected [x, y]");
      }
      t.vertices[i] = {v[i][0].get<double>(), v[i][1].get<double>()};
    }
    t.filled = flag_or(j, "filled", false, field);
    shape.geometry = t;
  } else if (type == "arc") {
    check_keys(j, {"type", "intensity", "x0", "y0", "r", "start_deg", "end_deg"}, field);
    shape.geometry = ArcShape{number(j, "x0", field), number(j, "y0", field), number(j, "r", field),
                              number(j, "start_deg", field), number(j, "end_deg", field)};
  } else if (type == "ellipse") {
    check_keys(j, {"type", "intensity", "x0", "y0", "a", "b", "angle_deg", "filled"}, field);
    shape.geometry = EllipseShape{number(j, "x0", field), number(j, "y0", field), number(j, "a", field),
                                  number(j, "b", field), number_or(j, "angle_deg", 0.0, field),
                                  flag_or(j, "filled", false, field)};
  } else {
    throw SpecError(join(field, "type"), "unknown shape type '" + type + "'");
  }
  return shape;
}

json shape_to_json(const Shape& shape) {
  json j = std::visit(
      Overloaded{
          [](const CircleShape& c) {
            return json{{"type", "circle"}, {"x0", c.x0}, {"y0", c.y0}, {"r", c.r}, {"filled", c.filled}};
          },
          [](const RectangleShape& r) {
            return json{{"type", "rectangle"}, {"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}, {"filled", r.filled}};
          },
          [](const LineShape& l) {
            return json{{"type", "line"}, {"x1", l.x1}, {"y1", l.y1}, {"x2", l.x2}, {"y2", l.y2}};
          },
          [](const TriangleShape& t) {
            json v = json::array();
            for (const auto& p : t.vertices) v.push_back({p.x, p.y});
            return json{{"type", "triangle"}, {"vertices", v}, {"filled", t.filled}};
          },
          [](const ArcShape& a) {
            return json{{"type", "arc"}, {"x0", a.x0}, {"y0", a.y0}, {"r", a.r}, {"start_deg", a.start_deg},
                        {"end_deg", a.end_deg}};
          },
          [](const EllipseShape& e) {
            return json{{"type", "ellipse"}, {"x0", e.x0}, {"y0", e.y0}, {"a", e.a}, {"b", e.b},
                        {"angle_deg", e.angle_deg}, {"filled", e.filled}};
          },
      },
      shape.geometry);
  j["intensity"] = shape.intensity;
  return j;
}

bool overlaps(const Box& a, const Box& b, double gap) {
  return !(a.x1 + gap < b.x0 || b.x1 + gap < a.x0 || a.y1 + gap < b.y0 || b.y1 + gap < a.y0);
}

}  // namespace

void SceneSpec::validate() const {
  require(width >= 3 && height >= 3, "width/height", "canvas must be at least 3x3");
  require(noise.salt_pepper_fraction >= 0.0 && noise.salt_pepper_fraction <= 1.0,
          "noise.salt_pepper_fraction", "must lie in [0, 1]");
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const std::string field = "shapes[" + std::to_string(s) + "]";
    validate_shape(shapes[s].geometry, field);
    const Box box = bounding_box(shapes[s].geometry);
    require(box.x1 >= 0 && box.y1 >= 0 && box.x0 <= width - 1 && box.y0 <= height - 1, field,
            "shape lies entirely outside the canvas");
  }
}

RenderedImage render(const SceneSpec& spec) {
  spec.validate();
  RenderedImage out{GrayImage(spec.width, spec.height), ground_truth(spec)};
  for (const Shape& shape : spec.shapes) {
    paint(out.image.data, spec.width, spec.height, coverage(shape.geometry, false), shape.intensity);
  }
  for (std::size_t i : noise_pixels(spec)) out.image.data[i] = static_cast<std::uint8_t>(255 - out.image.data[i]);
  return out;
}

RenderedEdges render_edge_map(const SceneSpec& spec) {
  spec.validate();
  std::vector<std::uint8_t> raster(static_cast<std::size_t>(spec.width) * spec.height, 0);
  for (const Shape& shape : spec.shapes) {
    if (shape.intensity == 0) {
      // Occluders erase their whole footprint.
      if (is_filled(shape.geometry)) paint(raster, spec.width, spec.height, coverage(shape.geometry, false), 0);
      continue;
    }
    paint(raster, spec.width, spec.height, coverage(shape.geometry, true), 1);
  }
  for (std::size_t i : noise_pixels(spec)) raster[i] = raster[i] ? 0 : 1;
  return {EdgeMap::from_raster(spec.width, spec.height, raster), ground_truth(spec)};
}

SceneSpec scene_from_json(const json& j) {
  check_keys(j, {"width", "height", "shapes", "noise", "rng_seed"}, "");
  SceneSpec spec;
  spec.width = static_cast<int>(integer(j, "width", ""));
  spec.height = static_cast<int>(integer(j, "height", ""));
  if (j.contains("rng_seed")) {
    const json& seed = j.at("rng_seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw SpecError("rng_seed", "expected a non-negative integer");
    }
    spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  }
  if (j.contains("noise")) {
    check_keys(j.at("noise"), {"salt_pepper_fraction"}, "noise");
    spec.noise.salt_pepper_fraction = number_or(j.at("noise"), "salt_pepper_fraction", 0.0, "noise");
  }
  if (j.contains("shapes")) {
    if (!j.at("shapes").is_array()) throw SpecError("shapes", "expected an array");
    for (std::size_t s = 0; s < j.at("shapes").size(); ++s) {
      spec.shapes.push_back(shape_from_json(j.at("shapes")[s], "shapes[" + std::to_string(s) + "]"));
    }
  }
  spec.validate();
  return spec;
}

json scene_to_json(const SceneSpec& spec) {
  json shapes = json::array();
  for (const Shape& s : spec.shapes) shapes.push_back(shape_to_json(s));
  return json{{"width", spec.width},
              {"height", spec.height},
              {"rng_seed", spec.rng_seed},
              {"noise", {{"salt_pepper_fraction", spec.noise.salt_pepper_fraction}}},
              {"shapes", shapes}};
}

json truth_to_json(const std::vector<GroundTruth>& truth) {
  json out = json::array();
  for (const GroundTruth& t : truth) {
    out.push_back({{"x0", t.circle.x0},
                   {"y0", t.circle.y0},
                   {"r", t.circle.r},
                   {"arc_fraction", t.arc_fraction},
                   {"tolerance_px", t.tolerance_px}});
  }
  return out;
}

SceneSpec single_circle_scene(std::uint64_t seed, double noise_fraction, int r_lo, int r_hi) {
  Rng rng(seed);
  SceneSpec spec;
  spec.width = 200;
  spec.height = 200;
  spec.rng_seed = seed;
  spec.noise.salt_pepper_fraction = noise_fraction;
  const int r = static_cast<int>(rng.between(r_lo, r_hi));
  const int margin = r + 3;
  const double x0 = static_cast<double>(rng.between(margin, spec.width - 1 - margin));
  const double y0 = static_cast<double>(rng.between(margin, spec.height - 1 - margin));
  spec.shapes.push_back({CircleShape{x0, y0, static_cast<double>(r), true}, 255});
  return spec;
}

SceneSpec imperfect_circle_scene(std::uint64_t seed, double noise_fraction) {
  Rng rng(seed);
  SceneSpec spec;
  spec.width = 200;
  spec.height = 200;
  spec.rng_seed = seed;
  spec.noise.salt_pepper_fraction = noise_fraction;
  const double a = static_cast<double>(rng.between(15, 60));
  const double b = a * rng.uniform(0.9, 1.0);
  const double angle = rng.uniform(0.0, 180.0);
  const int margin = static_cast<int>(a) + 3;
  const double x0 = static_cast<double>(rng.between(margin, spec.width - 1 - margin));
  const double y0 = static_cast<double>(rng.between(margin, spec.height - 1 - margin));
  spec.shapes.push_back({EllipseShape{x0, y0, a, b, angle, true}, 255});
  return spec;
}

SceneSpec shape_discrimination_scene(std::uint64_t seed, double noise_fraction) {
  Rng rng(seed);
  SceneSpec spec;
  spec.width = 540;
  spec.height = 300;
  spec.rng_seed = seed;
  spec.noise.salt_pepper_fraction = noise_fraction;
  std::vector<Box> taken;

  const int r = static_cast<int>(rng.between(20, 60));
  const double cx = static_cast<double>(rng.between(r + 4, spec.width - 5 - r));
  const double cy = static_cast<double>(rng.between(r + 4, spec.height - 5 - r));
  spec.shapes.push_back({CircleShape{cx, cy, static_cast<double>(r), true}, 255});
  taken.push_back({cx - r, cy - r, cx + r, cy + r});

  // Rectangle, line, triangle, then one more of a random kind.
  const int kinds[] = {0, 1, 2, static_cast<int>(rng.below(3))};
  for (int kind : kinds) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      const double w = static_cast<double>(rng.between(30, 120));
      const double h = static_cast<double>(rng.between(30, 120));
      const double x = static_cast<double>(rng.between(4, spec.width - 5 - static_cast<int>(w)));
      const double y = static_cast<double>(rng.between(4, spec.height - 5 - static_cast<int>(h)));
      const Box box{x, y, x + w, y + h};
      if (std::any_of(taken.begin(), taken.end(), [&](const Box& b) { return overlaps(box, b, 8.0); })) continue;
      taken.push_back(box);
      if (kind == 0) {
        spec.shapes.push_back({RectangleShape{x, y, w, h, true}, 255});
      } else if (kind == 1) {
        const bool rising = rng.below(2) == 1;
        spec.shapes.push_back({LineShape{x, rising ? y + h : y, x + w, rising ? y : y + h}, 255});
      } else {
        const double apex = x + rng.uniform(0.0, w);
        spec.shapes.push_back({TriangleShape{{PointD{x, y + h}, PointD{x + w, y + h}, PointD{apex, y}}, true}, 255});
      }
      break;
    }
  }
  return spec;
}

SceneSpec multi_circle_scene(std::uint64_t seed, int count, int width, int height) {
  Rng rng(seed);
  SceneSpec spec;
  spec.width = width;
  spec.height = height;
  spec.rng_seed = seed;
  std::vector<CircleShape> placed;
  for (int attempt = 0; static_cast<int>(placed.size()) < count && attempt < 10000; ++attempt) {
    const int r = static_cast<int>(rng.between(15, 50));
    if (2 * r + 8 > std::min(width, height)) continue;
    const CircleShape c{static_cast<double>(rng.between(r + 3, width - 4 - r)),
                        static_cast<double>(rng.between(r + 3, height - 4 - r)), static_cast<double>(r), true};
    const bool clear = std::all_of(placed.begin(), placed.end(), [&](const CircleShape& o) {
      return std::hypot(c.x0 - o.x0, c.y0 - o.y0) >= c.r + o.r + 10.0;
    });
    if (clear) placed.push_back(c);
  }
  if (static_cast<int>(placed.size()) < count) throw SpecError("count", "could not place disjoint circles");
  for (const auto& c : placed) spec.shapes.push_back({c, 255});
  return spec;
}

SceneSpec occluded_circle_scene(std::uint64_t seed, double occluded_fraction) {
  if (!(occluded_fraction >= 0.0 && occluded_fraction < 1.0)) {
    throw SpecError("occlusion", "fraction must lie in [0, 1)");
  }
  Rng rng(seed);
  SceneSpec spec;
  spec.width = 200;
  spec.height = 200;
  spec.rng_seed = seed;
  const int r = static_cast<int>(rng.between(20, 60));
  const double x0 = static_cast<double>(rng.between(r + 3, spec.width - 4 - r));
  const double y0 = static_cast<double>(rng.between(r + 3, spec.height - 4 - r));
  const double start = rng.uniform(0.0, 360.0);
  spec.shapes.push_back({ArcShape{x0, y0, static_cast<double>(r), start, start + 360.0 * (1.0 - occluded_fraction)}, 255});
  return spec;
}

RenderedEdges sparse_circle_edges(std::uint64_t seed, int max_points, int clutter) {
  if (max_points < 3 || clutter < 0 || clutter > max_points - 3) {
    throw SpecError("max_points", "need room for at least 3 circle points");
  }
  Rng rng(seed);
  const int size = 100;
  const int r = static_cast<int>(rng.between(12, 30));
  const int cx = static_cast<int>(rng.between(r + 2, size - 3 - r));
  const int cy = static_cast<int>(rng.between(r + 2, size - 3 - r));
  const std::vector<Point> ring = midpoint_circle(cx, cy, r);
  const std::size_t want = static_cast<std::size_t>(max_points - clutter);
  const std::size_t offset = static_cast<std::size_t>(rng.below(ring.size()));

  std::vector<std::uint8_t> raster(static_cast<std::size_t>(size) * size, 0);
  std::size_t placed = 0;
  // Evenly spaced picks along the angular order.
  for (std::size_t t = 0; t < want && t < ring.size(); ++t) {
    const Point p = ring[(offset + t * ring.size() / want) % ring.size()];
    auto& cell = raster[static_cast<std::size_t>(p.y) * size + p.x];
    placed += cell ? 0 : 1;
    cell = 1;
  }
  for (int c = 0; c < clutter;) {
    const auto x = static_cast<int>(rng.below(size));
    const auto y = static_cast<int>(rng.below(size));
    auto& cell = raster[static_cast<std::size_t>(y) * size + x];
    if (cell) continue;
    cell = 1;
    ++c;
  }
  RenderedEdges out{EdgeMap::from_raster(size, size, raster),
                    {GroundTruth{{double(cx), double(cy), double(r)}, static_cast<double>(placed) / ring.size(), 0.0}}};
  return out;
}

std::vector<SceneSpec> corpus_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("", "corpus spec must be a JSON object");
  std::vector<SceneSpec> scenes;
  if (j.contains("scenes")) {
    if (!j.at("scenes").is_array()) throw SpecError("scenes", "expected an array");
    for (std::size_t s = 0; s < j.at("scenes").size(); ++s) {
      try {
        scenes.push_back(scene_from_json(j.at("scenes")[s]));
      } catch (const SpecError& e) {
        throw SpecError(join("scenes[" + std::to_string(s) + "]", e.field()), e.message());
      }
    }
  }
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    check_keys(g, {"kind", "count", "seed", "noise", "circles", "occlusion"}, "generator");
    if (!g.contains("kind") || !g.at("kind").is_string()) throw SpecError("generator.kind", "missing");
    const std::string kind = g.at("kind").get<std::string>();
    const auto count = integer(g, "count", "generator");
    if (count < 0) throw SpecError("generator.count", "must be non-negative");
    const auto raw_seed = g.contains("seed") ? integer(g, "seed", "generator") : 0;
    if (raw_seed < 0) throw SpecError("generator.seed", "must be non-negative");
    const auto seed = static_cast<std::uint64_t>(raw_seed);
    const double noise = number_or(g, "noise", kind == "shapes" ? 0.02 : 0.0, "generator");
    for (std::int64_t s = 0; s < count; ++s) {
      const std::uint64_t scene_seed = derive_seed(seed, static_cast<std::uint64_t>(s));
      if (kind == "single_circle") {
        scenes.push_back(single_circle_scene(scene_seed, noise));
      } else if (kind == "imperfect_circle") {
        scenes.push_back(imperfect_circle_scene(scene_seed, noise));
      } else if (kind == "shapes") {
        scenes.push_back(shape_discrimination_scene(scene_seed, noise));
      } else if (kind == "multi_circle") {
        const auto circles = g.contains("circles") ? integer(g, "circles", "generator") : 3;
        scenes.push_back(multi_circle_scene(scene_seed, static_cast<int>(circles)));
        scenes.back().noise.salt_pepper_fraction = noise;
      } else if (kind == "occluded") {
        scenes.push_back(occluded_circle_scene(scene_seed, number_or(g, "occlusion", 0.25, "generator")));
        scenes.back().noise.salt_pepper_fraction = noise;
      } else {
        throw SpecError("generator.kind", "unknown generator '" + kind + "'");
      }
      scenes.back().validate();
    }
  }
  return scenes;
}

}  // namespace emoc::synth
