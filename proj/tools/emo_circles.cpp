// emo-circles: circle detection with electromagnetism-like optimization.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  usage, flag, config or scene-spec parse error
//   3  input unreadable, malformed or in an unsupported format
//   4  no circle found
//   5  oracle refused: edge map above the size cap

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "emocircles/detector.hpp"
#include "emocircles/error.hpp"
#include "emocircles/geometry.hpp"
#include "emocircles/image_io.hpp"
#include "emocircles/report.hpp"
#include "emocircles/synthgen.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kInput = 3,
  kNoCircle = 4,
  kSizeCap = 5,
};

struct Overrides {
  bool edges = false;
  std::optional<int> max_circles;
  std::optional<std::uint64_t> seed;
  std::optional<int> iters;
  std::optional<int> pop;
  std::optional<int> ls_iters;
  std::optional<double> ls_step;
  std::optional<std::string> ls_mode;
  std::optional<double> rmin;
  std::optional<double> rmax;
  std::optional<double> mask_tol;
  std::optional<double> canny_sigma;
  std::optional<double> canny_low;
  std::optional<double> canny_high;
  std::optional<std::size_t> oracle_cap;
  std::string config_path;
};

void add_run_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_flag("--edges", o.edges, "Input is already an edge map (nonzero = edge); skip Canny");
  cmd.add_option("--max-circles", o.max_circles, "Maximum number of circles to detect")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "RNG seed (default: $EMO_CIRCLES_SEED or 0)");
  cmd.add_option("--iters", o.iters, "EMO iterations per circle");
  cmd.add_option("--pop", o.pop, "EMO population size");
  cmd.add_option("--ls-iters", o.ls_iters, "Local search iteration count");
  cmd.add_option("--ls-step", o.ls_step, "Local search step length (index units)");
  cmd.add_option("--ls-mode", o.ls_mode, "Local search mode: none, best or all");
  cmd.add_option("--rmin", o.rmin, "Smallest admissible radius (px)");
  cmd.add_option("--rmax", o.rmax, "Largest admissible radius (px)");
  cmd.add_option("--mask-tol", o.mask_tol, "Masking and support tolerance (px)");
  cmd.add_option("--canny-sigma", o.canny_sigma, "Gaussian sigma for Canny");
  cmd.add_option("--canny-low", o.canny_low, "Low hysteresis threshold, fraction of max gradient");
  cmd.add_option("--canny-high", o.canny_high, "High hysteresis threshold, fraction of max gradient");
  cmd.add_option("--oracle-cap", o.oracle_cap, "Largest edge map the oracle accepts");
  cmd.add_option("--config", o.config_path, "JSON config file (same keys as the report's config)");
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw emoc::IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw emoc::SpecError(path.string(), e.what());
  }
}

// defaults < $EMO_CIRCLES_SEED < config file < flags
emoc::RunConfig resolve_config(const Overrides& o) {
  emoc::RunConfig config;
  if (const char* env = std::getenv("EMO_CIRCLES_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      config.detector.emo.rng_seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw emoc::SpecError("EMO_CIRCLES_SEED", "expected a non-negative integer");
    }
  }
  if (!o.config_path.empty()) {
    try {
      config = emoc::config_from_json(read_json(o.config_path), config);
    } catch (const emoc::IoError&) {
      throw emoc::SpecError("--config", "cannot open " + o.config_path);
    }
  }
  auto& d = config.detector;
  if (o.edges) config.edges_input = true;
  if (o.max_circles) d.max_circles = *o.max_circles;
  if (o.seed) d.emo.rng_seed = *o.seed;
  if (o.iters) d.emo.max_iterations = *o.iters;
  if (o.pop) d.emo.population_size = *o.pop;
  if (o.ls_iters) d.emo.local_search_iters = *o.ls_iters;
  if (o.ls_step) d.emo.local_search_step = *o.ls_step;
  if (o.ls_mode) config = emoc::config_from_json(json{{"ls_mode", *o.ls_mode}}, config);
  if (o.rmin) d.r_min = *o.rmin;
  if (o.rmax) d.r_max = *o.rmax;
  if (o.mask_tol) d.mask_tolerance_px = *o.mask_tol;
  if (o.canny_sigma) config.canny.gaussian_sigma = *o.canny_sigma;
  if (o.canny_low) config.canny.low_threshold = *o.canny_low;
  if (o.canny_high) config.canny.high_threshold = *o.canny_high;
  if (o.oracle_cap) d.oracle_cap = *o.oracle_cap;
  try {
    d.validate();
    config.canny.validate();
  } catch (const emoc::ParameterError& e) {
    throw emoc::SpecError("config", e.what());
  }
  return config;
}

struct Loaded {
  emoc::GrayImage image;
  emoc::EdgeMap edges;
};

Loaded load_input(const std::string& path, const emoc::RunConfig& config) {
  Loaded in;
  in.image = emoc::load_image(path);
  in.edges = config.edges_input ? emoc::edge_map_from_image(in.image) : emoc::canny(in.image, config.canny);
  return in;
}

void annotate(const Loaded& in, const std::vector<emoc::DetectedCircle>& circles, const fs::path& out) {
  emoc::RgbImage canvas = emoc::RgbImage::from_gray(in.image);
  for (const auto& c : circles) {
    if (c.circle.r >= 1.0) {
      for (const auto& p : emoc::rasterize_mca(c.circle, canvas.width, canvas.height).points) {
        canvas.set(p.x, p.y, 255, 0, 0);
      }
    }
    const int cx = emoc::round_to_pixel(c.circle.x0);
    const int cy = emoc::round_to_pixel(c.circle.y0);
    for (int t = -2; t <= 2; ++t) {
      canvas.set(cx + t, cy, 0, 255, 0);
      canvas.set(cx, cy + t, 0, 255, 0);
    }
  }
  emoc::save_png(canvas, out);
}

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw emoc::IoError("cannot create " + output);
  out << text;
}

int input_error(const std::string& path, const std::exception& e) {
  std::cerr << "emo-circles: " << path << ": " << e.what() << "\n";
  return kInput;
}

struct DetectOutcome {
  json report;
  int code = kOk;
};

DetectOutcome detect_one(const std::string& path, const emoc::RunConfig& config, const std::string& annotate_path) {
  DetectOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  std::vector<emoc::DetectedCircle> circles;
  try {
    const Loaded in = load_input(path, config);
    if (in.edges.size() >= 3) circles = emoc::detect_multiple(in.edges, config.detector);
    if (!annotate_path.empty()) annotate(in, circles, annotate_path);
  } catch (const emoc::IoError& e) {
    outcome.code = input_error(path, e);
  } catch (const emoc::MalformedFileError& e) {
    outcome.code = input_error(path, e);
  } catch (const emoc::UnsupportedFormatError& e) {
    outcome.code = input_error(path, e);
  } catch (const emoc::ParameterError& e) {
    // Images too small for edge detection.
    outcome.code = input_error(path, e);
  } catch (const std::exception& e) {
    // Nothing may escape the parallel loop.
    std::cerr << "emo-circles: internal error: " << path << ": " << e.what() << "\n";
    outcome.code = kInternal;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (outcome.code == kOk && circles.empty()) outcome.code = kNoCircle;
  outcome.report = emoc::make_report(path, config, circles, ms);
  return outcome;
}

int run_detect(const std::vector<std::string>& inputs, const Overrides& o, const std::string& annotate_path,
               int jobs, const std::string& output) {
  const emoc::RunConfig config = resolve_config(o);
  if (!annotate_path.empty() && inputs.size() != 1) {
    throw emoc::SpecError("--annotate", "needs exactly one input");
  }
  std::vector<DetectOutcome> outcomes(inputs.size());
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i) outcomes[i] = detect_one(inputs[i], config, annotate_path);

  int code = kOk;
  json doc = json::array();
  for (auto& outcome : outcomes) {
    doc.push_back(std::move(outcome.report));
    if (outcome.code == kInternal) code = kInternal;
    if (outcome.code == kInput && code != kInternal) code = kInput;
    if (outcome.code == kNoCircle && code == kOk) code = kNoCircle;
  }
  emit(inputs.size() == 1 ? doc[0] : doc, output);
  if (code == kNoCircle) std::cerr << "emo-circles: no circle found\n";
  return code;
}

int run_oracle(const std::string& input, const Overrides& o, const std::string& output) {
  const emoc::RunConfig config = resolve_config(o);
  const auto start = std::chrono::steady_clock::now();
  Loaded in;
  try {
    in = load_input(input, config);
  } catch (const emoc::IoError& e) {
    return input_error(input, e);
  } catch (const emoc::MalformedFileError& e) {
    return input_error(input, e);
  } catch (const emoc::UnsupportedFormatError& e) {
    return input_error(input, e);
  } catch (const emoc::ParameterError& e) {
    return input_error(input, e);
  }
  std::vector<emoc::DetectedCircle> circles;
  int code = kOk;
  try {
    circles.push_back(emoc::brute_force_oracle(in.edges, config.detector, emoc::Backend::OpenMP));
  } catch (const emoc::SizeLimitError& e) {
    std::cerr << "emo-circles: " << e.what() << "\n";
    return kSizeCap;
  } catch (const emoc::InsufficientEdgesError&) {
    code = kNoCircle;
  } catch (const emoc::NoCircleFoundError&) {
    code = kNoCircle;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(emoc::make_report(input, config, circles, ms), output);
  if (code == kNoCircle) std::cerr << "emo-circles: no circle found\n";
  return code;
}

int run_generate(const std::string& spec_path, const fs::path& out_dir, const std::string& format, bool edges) {
  std::vector<emoc::synth::SceneSpec> scenes;
  try {
    scenes = emoc::synth::corpus_from_json(read_json(spec_path));
  } catch (const emoc::IoError& e) {
    return input_error(spec_path, e);
  }
  fs::create_directories(out_dir);
  json manifest = json::array();
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "scene_%04zu", s);
    json entry{{"scene", emoc::synth::scene_to_json(scenes[s])}};
    std::vector<emoc::synth::GroundTruth> truth;
    if (edges) {
      const auto rendered = emoc::synth::render_edge_map(scenes[s]);
      const std::string name = std::string(stem) + ".pbm";
      emoc::save_edge_map_pbm(rendered.edges, out_dir / name);
      entry["file"] = name;
      entry["edges"] = true;
      truth = rendered.truth;
    } else {
      const auto rendered = emoc::synth::render(scenes[s]);
      const std::string name = std::string(stem) + "." + format;
      if (format == "png") {
        emoc::save_png(rendered.image, out_dir / name);
      } else {
        emoc::save_pgm(rendered.image, out_dir / name);
      }
      entry["file"] = name;
      entry["edges"] = false;
      truth = rendered.truth;
    }
    entry["truth"] = emoc::synth::truth_to_json(truth);
    manifest.push_back(entry);
  }
  std::ofstream out(out_dir / "manifest.json");
  if (!out) throw emoc::IoError("cannot create " + (out_dir / "manifest.json").string());
  out << json{{"images", manifest}}.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circle detection with electromagnetism-like optimization"};
  app.require_subcommand(1);

  Overrides detect_flags;
  std::vector<std::string> detect_inputs;
  std::string annotate_path;
  std::string detect_output;
  int jobs = 1;
  auto* detect = app.add_subcommand("detect", "Detect circles in images or edge maps");
  detect->add_option("inputs", detect_inputs, "PNG, PGM or PBM inputs")->required();
  add_run_flags(*detect, detect_flags);
  detect->add_option("--annotate", annotate_path, "Write a PNG copy of the input with detections drawn");
  detect->add_option("--jobs", jobs, "Process this many inputs in parallel")->check(CLI::PositiveNumber);
  detect->add_option("-o,--output", detect_output, "Write the JSON report here instead of stdout");

  Overrides oracle_flags;
  std::string oracle_input;
  std::string oracle_output;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over all edge-point triples");
  oracle->add_option("input", oracle_input, "PNG, PGM or PBM input")->required();
  add_run_flags(*oracle, oracle_flags);
  oracle->add_option("-o,--output", oracle_output, "Write the JSON report here instead of stdout");

  std::string spec_path;
  std::string out_dir;
  std::string format = "png";
  bool generate_edges = false;
  auto* generate = app.add_subcommand("generate", "Render a synthetic corpus with ground truth");
  generate->add_option("spec", spec_path, "Corpus spec (JSON)")->required();
  generate->add_option("output_dir", out_dir, "Directory for images and manifest.json")->required();
  generate->add_option("--format", format, "Image format")->check(CLI::IsMember({"png", "pgm"}));
  generate->add_flag("--edges", generate_edges, "Write PBM edge maps instead of images");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*detect) return run_detect(detect_inputs, detect_flags, annotate_path, jobs, detect_output);
    if (*oracle) return run_oracle(oracle_input, oracle_flags, oracle_output);
    if (*generate) return run_generate(spec_path, out_dir, format, generate_edges);
  } catch (const emoc::SpecError& e) {
    std::cerr << "emo-circles: " << e.what() << "\n";
    return kParse;
  } catch (const emoc::IoError& e) {
    std::cerr << "emo-circles: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "emo-circles: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
