#include <gtest/gtest.h>

#include "emocircles/error.hpp"
#include "emocircles/report.hpp"

namespace emoc {
namespace {

using nlohmann::json;

std::string field_of(const json& j) {
  try {
    config_from_json(j);
  } catch (const SpecError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(Config, RoundTripsThroughJson) {
  RunConfig config;
  config.detector.emo.rng_seed = 123456789012345ull;
  config.detector.emo.population_size = 17;
  config.detector.emo.local_search_mode = LocalSearchMode::All;
  config.detector.r_max = 88.5;
  config.detector.fitness_threshold = 0.1;
  config.detector.max_circles = 4;
  config.canny.gaussian_sigma = 2.0;
  config.edges_input = true;
  const json j = config_to_json(config);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
  EXPECT_EQ(j.at("seed"), 123456789012345ull);
  EXPECT_EQ(j.at("ls_mode"), "all");
}

TEST(Config, DefaultsAreTheReferenceParameters) {
  const json j = config_to_json({});
  EXPECT_EQ(j.at("pop"), 10);
  EXPECT_EQ(j.at("iters"), 20);
  EXPECT_EQ(j.at("ls_iters"), 2);
  EXPECT_EQ(j.at("ls_step"), 3.0);
  EXPECT_EQ(j.at("ls_mode"), "best");
  EXPECT_TRUE(j.at("rmax").is_null());
}

TEST(Config, PartialObjectOverridesBase) {
  RunConfig base;
  base.detector.emo.population_size = 30;
  const RunConfig out = config_from_json({{"seed", 5}}, base);
  EXPECT_EQ(out.detector.emo.rng_seed, 5u);
  EXPECT_EQ(out.detector.emo.population_size, 30);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(field_of({{"popsize", 3}}), "popsize");
  EXPECT_EQ(field_of({{"pop", 2.5}}), "pop");
  EXPECT_EQ(field_of({{"seed", -1}}), "seed");
  EXPECT_EQ(field_of({{"ls_mode", "sometimes"}}), "ls_mode");
  EXPECT_EQ(field_of({{"canny", {{"sigma", "x"}}}}), "canny.sigma");
  EXPECT_EQ(field_of({{"canny", {{"blur", 1}}}}), "canny.blur");
  EXPECT_EQ(field_of({{"oracle_cap", 2}}), "oracle_cap");
  EXPECT_EQ(field_of({{"min_contrast", "high"}}), "min_contrast");
  EXPECT_THROW(config_from_json(json::array()), SpecError);
}

TEST(Report, ShapeAndRounding) {
  DetectedCircle c;
  c.circle = {10.12345, 20.98765, 5.00049};
  c.score = 0.123456;
  c.validated = true;
  c.support_points = 31;
  c.test_points = 40;
  c.iterations = 20;
  const json r = make_report("in.png", {}, {c}, 12.34567);
  EXPECT_EQ(r.at("input"), "in.png");
  EXPECT_TRUE(r.at("config").is_object());
  EXPECT_EQ(r.at("duration_ms"), 12.346);
  const json& circle = r.at("circles").at(0);
  EXPECT_EQ(circle.at("x0"), 10.123);
  EXPECT_EQ(circle.at("y0"), 20.988);
  EXPECT_EQ(circle.at("r"), 5.0);
  EXPECT_EQ(circle.at("score"), 0.123);
  EXPECT_EQ(circle.at("validated"), true);
  EXPECT_EQ(circle.at("support"), 31);
}

TEST(Report, ComparableIgnoresDuration) {
  const json a = make_report("x", {}, {}, 1.0);
  const json b = make_report("x", {}, {}, 2.0);
  EXPECT_EQ(comparable_report(a), comparable_report(b));
  EXPECT_EQ(comparable_report(a).find("duration_ms"), std::string::npos);
}

}  // namespace
}  // namespace emoc
