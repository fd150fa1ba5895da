#include "emocircles/report.hpp"

#include <cmath>

#include "emocircles/error.hpp"

namespace emoc {
namespace {

using nlohmann::json;

std::string_view mode_name(LocalSearchMode mode) {
  switch (mode) {
    case LocalSearchMode::None:
      return "none";
    case LocalSearchMode::All:
      return "all";
    case LocalSearchMode::BestOnly:
      break;
  }
  return "best";
}

LocalSearchMode parse_mode(const std::string& name) {
  if (name == "none") return LocalSearchMode::None;
  if (name == "best") return LocalSearchMode::BestOnly;
  if (name == "all") return LocalSearchMode::All;
  throw SpecError("ls_mode", "expected none, best or all");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw SpecError(key, "expected a number");
  return j.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw SpecError(key, "expected an integer");
  return j.get<std::int64_t>();
}

std::optional<double> get_optional(const json& j, const std::string& key) {
  if (j.is_null()) return std::nullopt;
  return get_number(j, key);
}

}  // namespace

json config_to_json(const RunConfig& config) {
  const DetectorConfig& d = config.detector;
  return json{
      {"seed", d.emo.rng_seed},
      {"pop", d.emo.population_size},
      {"iters", d.emo.max_iterations},
      {"ls_iters", d.emo.local_search_iters},
      {"ls_step", d.emo.local_search_step},
      {"ls_mode", mode_name(d.emo.local_search_mode)},
      {"rmin", d.r_min},
      {"rmax", optional_number(d.r_max)},
      {"fitness_threshold", optional_number(d.fitness_threshold)},
      {"mask_tol", d.mask_tolerance_px},
      {"max_gap_fraction", d.continuity_max_gap_fraction},
      {"min_support_fraction", d.min_support_fraction},
      {"min_contrast", d.min_contrast},
      {"max_circles", d.max_circles},
      {"oracle_cap", d.oracle_cap},
      {"edges", config.edges_input},
      {"canny",
       {{"sigma", config.canny.gaussian_sigma},
        {"low", config.canny.low_threshold},
        {"high", config.canny.high_threshold}}},
  };
}

RunConfig config_from_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw SpecError("", "config must be a JSON object");
  DetectorConfig& d = base.detector;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
        throw SpecError(key, "expected a non-negative integer");
      }
      d.emo.rng_seed = value.get<std::uint64_t>();
    } else if (key == "pop") {
      d.emo.population_size = static_cast<int>(get_integer(value, key));
    } else if (key == "iters") {
      d.emo.max_iterations = static_cast<int>(get_integer(value, key));
    } else if (key == "ls_iters") {
      d.emo.local_search_iters = static_cast<int>(get_integer(value, key));
    } else if (key == "ls_step") {
      d.emo.local_search_step = get_number(value, key);
    } else if (key == "ls_mode") {
      if (!value.is_string()) throw SpecError(key, "expected a string");
      d.emo.local_search_mode = parse_mode(value.get<std::string>());
    } else if (key == "rmin") {
      d.r_min = get_number(value, key);
    } else if (key == "rmax") {
      d.r_max = get_optional(value, key);
    } else if (key == "fitness_threshold") {
      d.fitness_threshold = get_optional(value, key);
    } else if (key == "mask_tol") {
      d.mask_tolerance_px = get_number(value, key);
    } else if (key == "max_gap_fraction") {
      d.continuity_max_gap_fraction = get_number(value, key);
    } else if (key == "min_support_fraction") {
      d.min_support_fraction = get_number(value, key);
    } else if (key == "min_contrast") {
      d.min_contrast = get_number(value, key);
    } else if (key == "max_circles") {
      d.max_circles = static_cast<int>(get_integer(value, key));
    } else if (key == "oracle_cap") {
      const auto cap = get_integer(value, key);
      if (cap < 3) throw SpecError(key, "must be at least 3");
      d.oracle_cap = static_cast<std::size_t>(cap);
    } else if (key == "edges") {
      if (!value.is_boolean()) throw SpecError(key, "expected true or false");
      base.edges_input = value.get<bool>();
    } else if (key == "canny") {
      if (!value.is_object()) throw SpecError(key, "expected an object");
      for (const auto& [ck, cv] : value.items()) {
        const std::string field = "canny." + ck;
        if (ck == "sigma") {
          base.canny.gaussian_sigma = get_number(cv, field);
        } else if (ck == "low") {
          base.canny.low_threshold = get_number(cv, field);
        } else if (ck == "high") {
          base.canny.high_threshold = get_number(cv, field);
        } else {
          throw SpecError(field, "unknown key");
        }
      }
    } else {
      throw SpecError(key, "unknown key");
    }
  }
  return base;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

json circle_to_json(const DetectedCircle& c) {
  return json{{"x0", round3(c.circle.x0)},
              {"y0", round3(c.circle.y0)},
              {"r", round3(c.circle.r)},
              {"score", round3(c.score)},
              {"validated", c.validated},
              {"support", c.support_points},
              {"test_points", c.test_points},
              {"iterations", c.iterations}};
}

json make_report(const std::string& input, const RunConfig& config,
                 const std::vector<DetectedCircle>& circles, double duration_ms) {
  json list = json::array();
  for (const auto& c : circles) list.push_back(circle_to_json(c));
  return json{{"input", input},
              {"config", config_to_json(config)},
              {"circles", list},
              {"duration_ms", round3(duration_ms)}};
}

std::string comparable_report(const json& report) {
  json copy = report;
  if (copy.is_object()) copy.erase("duration_ms");
  return copy.dump();
}

}  // namespace emoc
