#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gripkit/calibration.h"
#include "gripkit/error.h"

using namespace gripkit;

namespace {

const std::string kReference = std::string(GRIPKIT_DATA_DIR) + "/grasp_strength_reference.csv";

ReferenceRow row(GraspMode mode, double offset, double angle, PullType type, double n) {
  ReferenceRow r;
  r.scenario.mode = mode;
  r.scenario.fruit_offset_mm = offset;
  r.scenario.pull_angle_deg = angle;
  r.scenario.pull_type = type;
  r.strength_N = n;
  return r;
}

}  // namespace

TEST_CASE("shipped reference parses") {
  const auto ref = load_reference_csv(kReference);
  REQUIRE(ref.size() == 9);
  CHECK(ref[0].scenario.mode == GraspMode::kSuction);
  CHECK(ref[0].strength_N == 12.0);
  CHECK(ref[0].stdev_N == 0.0);
  CHECK(ref[4].strength_N == 34.3);
  CHECK(ref[4].stdev_N == 1.6);
  CHECK(ref[8].scenario.pull_type == PullType::kRotational);
}

TEST_CASE("reference parse errors name the line") {
  const std::string header = "mode,offset_mm,angle_deg,pull_type,strength_N,stdev_N\n";
  try {
    parse_reference_csv(header + "dual,0,0,axial,34.3,1\ndual,x,0,axial,3,1\n", "ref.csv");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("offset_mm") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_reference_csv(header + "both,0,0,axial,3,1\n"), Error);
  CHECK_THROWS_AS(parse_reference_csv(header + "dual,0,0,axial,-3,1\n"), Error);
  CHECK_THROWS_AS(parse_reference_csv("mode,offset_mm\ndual,0\n"), Error);
  CHECK_THROWS_AS(load_reference_csv("/nonexistent/ref.csv"), Error);
}

TEST_CASE("residuals are relative errors of the model") {
  const ReferenceMeasurements ref{row(GraspMode::kDual, 0, 0, PullType::kAxial, 30.0)};
  const GraspModelParams p;
  const auto fit = evaluate_fit(ref, p);
  const double pred = predict_strength(ref[0].scenario, p);
  REQUIRE(fit.residuals.size() == 1);
  CHECK(fit.residuals[0].predicted_N == doctest::Approx(pred));
  CHECK(fit.residuals[0].relative_error == doctest::Approx((pred - 30.0) / 30.0));
  CHECK(fit.loss == doctest::Approx(std::pow((pred - 30.0) / 30.0, 2)));
}

TEST_CASE("calibration recovers a model's own predictions") {
  GraspModelParams truth;
  truth.pad_force_N = 12.0;
  truth.mu_pad = 0.7;
  truth.suction_axial_N = 3.0;
  truth.shear_fraction = 0.6;
  truth.cup_moment_arm_mm = 15.0;
  ReferenceMeasurements ref = load_reference_csv(kReference);
  for (auto& r : ref) r.strength_N = predict_strength(r.scenario, truth);
  const auto fit = calibrate(ref, GraspModelParams{});
  CHECK(fit.mean_relative_error < 0.01);
  for (const auto& r : fit.residuals) CHECK(std::abs(r.relative_error) < 0.03);
}

TEST_CASE("calibration improves on the starting point") {
  const auto ref = load_reference_csv(kReference);
  const auto start = evaluate_fit(ref, GraspModelParams{});
  const auto fit = calibrate(ref, GraspModelParams{});
  CHECK(fit.loss < start.loss);
  CHECK(fit.mean_relative_error < 0.15);
  CHECK(fit.residuals.size() == ref.size());
  const auto again = calibrate(ref, GraspModelParams{});
  CHECK(again.loss == fit.loss);
}

TEST_CASE("calibration failures") {
  CHECK_THROWS_AS(calibrate({}, GraspModelParams{}), Error);
  // One scenario measured at 1 N and twice at 100 N cannot be fitted.
  const ReferenceMeasurements bad{row(GraspMode::kSuction, 0, 0, PullType::kAxial, 1.0),
                                  row(GraspMode::kSuction, 0, 0, PullType::kAxial, 100.0),
                                  row(GraspMode::kSuction, 0, 0, PullType::kAxial, 100.0)};
  try {
    calibrate(bad, GraspModelParams{});
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCalibrationDiverged);
  }
}
