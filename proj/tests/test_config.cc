#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gripkit/config.h"
#include "gripkit/error.h"
#include "gripkit/units.h"

using namespace gripkit;
using nlohmann::json;

namespace {

std::string config_error(const json& doc) {
  try {
    parse_config(doc, GRIPKIT_DATA_DIR);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  FAIL("expected a config error");
  return "";
}

}  // namespace

TEST_CASE("empty document keeps the prototype") {
  const GripperConfig cfg = parse_config(json::object());
  CHECK(cfg.linkage.l_f == 48.0);
  CHECK(cfg.screw.n_starts == 4);
  CHECK(cfg.screw.thread_angle_rad == doctest::Approx(deg_to_rad(14.5)));
  CHECK(cfg.bruise_threshold_N == 30.0);
  CHECK(cfg.cam.synthesize);
  CHECK_FALSE(cfg.has_field_stats);
}

TEST_CASE("shipped config loads with its field statistics") {
  const GripperConfig cfg = load_config(std::string(GRIPKIT_DATA_DIR) + "/gripper_config.json");
  CHECK(cfg.has_field_stats);
  CHECK(cfg.field_stats.net_fdf_N.median() == 15.0);
  CHECK(cfg.grasp_model.mu_pad == doctest::Approx(0.952075439));
  CHECK(cfg.proxy.branch_stiffness_Npm == 455.0);
}

TEST_CASE("round trip through JSON") {
  GripperConfig cfg = load_config(std::string(GRIPKIT_DATA_DIR) + "/gripper_config.json");
  cfg.linkage.p_x = 13.0;
  cfg.pick.retries = 2;
  const GripperConfig back = parse_config(to_json(cfg), GRIPKIT_DATA_DIR);
  CHECK(back.linkage.p_x == 13.0);
  CHECK(back.pick.retries == 2);
  CHECK(back.screw.thread_angle_rad == doctest::Approx(cfg.screw.thread_angle_rad));
  CHECK(back.grasp_model.cup_moment_arm_mm == cfg.grasp_model.cup_moment_arm_mm);
  CHECK(back.field_stats.offset_mm.q == cfg.field_stats.offset_mm.q);
}

TEST_CASE("errors name the offending field") {
  CHECK(config_error({{"linkage", {{"l_q_mm", 3}}}}).find("linkage.l_q_mm") != std::string::npos);
  CHECK(config_error({{"screw", {{"mu", "high"}}}}).find("screw.mu") != std::string::npos);
  CHECK(config_error({{"screw", {{"mu", -0.1}}}}).find("screw") != std::string::npos);
  CHECK(config_error({{"travel", {{"x_min_mm", 10.0}}}}).find("travel") != std::string::npos);
  CHECK(config_error({{"cam", "custom"}}).find("cam") != std::string::npos);
  CHECK(config_error({{"cam", {{"spec_file", "missing_tracks.json"}}}}).find("does not exist") !=
        std::string::npos);
  CHECK(config_error({{"field_stats", "nope.json"}}).find("nope.json") != std::string::npos);
  CHECK(config_error({{"grasp_model", {{"mu_pad", -1}}}}).find("grasp_model") != std::string::npos);
  CHECK(config_error({{"bogus", 1}}).find("bogus") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("cam tracks survive a JSON round trip") {
  const CamTrackSpec spec = build_default_tracks(37.5, 3.0);
  const CamTrackSpec back = cam_spec_from_json(to_json(spec));
  const auto a = validate_path(spec, 100);
  const auto b = validate_path(back, 100);
  CHECK(a.min_clearance == doctest::Approx(b.min_clearance).epsilon(1e-12));
  CHECK(back.outer_path.size() == spec.outer_path.size());
}

TEST_CASE("pad hold force from the holding torque") {
  const double f = pad_hold_force(LinkageParams{}, ScrewParams::tr8x8(), 0.4, 58.0);
  CHECK(f == doctest::Approx(thrust_for_torque(ScrewParams::tr8x8(), 0.4) *
                             transmission_ratio(LinkageParams{}, 58.0)));
  CHECK(f == doctest::Approx(151.0).epsilon(0.01));
}
