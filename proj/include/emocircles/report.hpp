#pragma once

// Run configuration and the JSON report shared by the CLI and the tests.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emocircles/detector.hpp"
#include "emocircles/edge_map.hpp"

namespace emoc {

struct RunConfig {
  DetectorConfig detector;
  CannyParams canny;
  // Input is already an edge map; skip Canny.
  bool edges_input = false;
};

// Every field is emitted, so the object can be fed back as a config file.
nlohmann::json config_to_json(const RunConfig& config);

// Applies the keys present in `j` on top of `base`. Unknown keys and type
// mismatches throw SpecError naming the key.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

// Rounds to 3 decimals.
double round3(double v);

nlohmann::json circle_to_json(const DetectedCircle& circle);

// {input, config, circles[], duration_ms}
nlohmann::json make_report(const std::string& input, const RunConfig& config,
                           const std::vector<DetectedCircle>& circles, double duration_ms);

// The report without duration_ms, serialized; equal strings mean identical runs.
std::string comparable_report(const nlohmann::json& report);

}  // namespace emoc
