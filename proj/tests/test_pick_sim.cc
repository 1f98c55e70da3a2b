#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gripkit/config.h"
#include "gripkit/error.h"
#include "gripkit/pick_sim.h"

using namespace gripkit;

namespace {

const GripperConfig& shipped() {
  static const GripperConfig cfg = load_config(std::string(GRIPKIT_DATA_DIR) + "/gripper_config.json");
  return cfg;
}

bool same(const CampaignResult& a, const CampaignResult& b) {
  if (a.picked != b.picked || a.log.size() != b.log.size()) return false;
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    const auto& x = a.log[i];
    const auto& y = b.log[i];
    if (x.fdf_N != y.fdf_N || x.offset_mm != y.offset_mm || x.strength_N != y.strength_N ||
        x.outcome != y.outcome || x.attempts != y.attempts)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lab proxy pick") {
  const ProxyModel proxy;
  GraspScenario s;
  s.mode = GraspMode::kDual;
  const PickState st = run_pick(proxy, s, shipped().grasp_model);
  CHECK(st.outcome == PickOutcome::kPicked);
  CHECK(st.pull_travel_mm == doctest::Approx(1000.0 * 16.0 / 455.0));
  CHECK(st.pull_travel_mm == doctest::Approx(35.2).epsilon(0.002));
  CHECK(st.cups_engaged == 3);
  CHECK(st.fingers_deployed);
  const std::vector<PickPhase> phases{PickPhase::kApproach, PickPhase::kSuctionEngage,
                                      PickPhase::kFingerDeploy, PickPhase::kPull,
                                      PickPhase::kDone};
  CHECK(st.history == phases);
  CHECK(st.strength_N == doctest::Approx(predict_strength(s, shipped().grasp_model)));
}

TEST_CASE("suction alone slips on the proxy") {
  GraspScenario s;
  s.mode = GraspMode::kSuction;
  const PickState st = run_pick(ProxyModel{}, s, shipped().grasp_model);
  CHECK(st.outcome == PickOutcome::kGraspSlip);
  CHECK(st.strength_N < 16.0);
  CHECK_FALSE(st.fingers_deployed);
}

TEST_CASE("cups out of reach do not engage") {
  PickSetup setup;
  setup.lateral_offset_mm = 45.0;
  GraspScenario s;
  const PickState st = run_pick(ProxyModel{}, s, shipped().grasp_model, setup);
  CHECK(st.outcome == PickOutcome::kNoEngage);
  CHECK(st.cups_engaged < 2);
  setup.lateral_offset_mm = 0.0;
  setup.blocked_cup = 1;
  setup.engage_rule = 3;
  CHECK(run_pick(ProxyModel{}, s, shipped().grasp_model, setup).outcome == PickOutcome::kNoEngage);
  setup.engage_rule = 2;
  CHECK(run_pick(ProxyModel{}, s, shipped().grasp_model, setup).outcome == PickOutcome::kPicked);
  setup.engage_rule = 4;
  CHECK_THROWS_AS(run_pick(ProxyModel{}, s, shipped().grasp_model, setup), Error);
}

TEST_CASE("cup distances from the fruit axis") {
  const auto d0 = cup_lateral_distances(GraspModelParams{}, 0.0, 0.0);
  for (double d : d0) CHECK(d == doctest::Approx(20.0));
  // Offset toward cup 0's longitude brings it 5 mm closer to the axis.
  const auto d = cup_lateral_distances(GraspModelParams{}, 5.0, 3.141592653589793 + 3.141592653589793 / 3);
  CHECK(d[0] == doctest::Approx(15.0));
}

TEST_CASE("fingers that cannot clear an oversized fruit") {
  const FingerSweep sweep(build_default_tracks(37.5, 3.0), 200);
  CHECK(sweep.min_clearance(37.5) >= 3.0 - 1e-9);
  CHECK(sweep.min_clearance(46.0) < 0.0);
  PickSetup setup;
  setup.sweep = &sweep;
  ProxyModel big;
  big.fruit_diameter_mm = 92.0;
  GraspScenario s;
  s.mode = GraspMode::kFingers;
  PickState st = run_pick(big, s, shipped().grasp_model, setup);
  CHECK_FALSE(st.fingers_deployed);
  CHECK(st.outcome == PickOutcome::kGraspSlip);
  s.mode = GraspMode::kDual;
  st = run_pick(big, s, shipped().grasp_model, setup);
  GraspScenario suction = s;
  suction.mode = GraspMode::kSuction;
  suction.fruit_radius_mm = 46.0;
  CHECK(st.strength_N == doctest::Approx(predict_strength(suction, shipped().grasp_model)));
}

TEST_CASE("campaign is reproducible and thread independent") {
  const auto& cfg = shipped();
  CampaignOptions opt;
  opt.trials = 300;
  opt.seed = 42;
  opt.retries = 2;
  const CampaignResult a = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  const CampaignResult b = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  CHECK(same(a, b));
  for (int t : {2, 4, 8}) {
    opt.threads = t;
    CHECK(same(a, run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt)));
  }
  opt.seed = 43;
  CHECK_FALSE(same(a, run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt)));
  CHECK(trial_seed(42, 0) != trial_seed(42, 1));
  CHECK(trial_seed(42, 5) == trial_seed(42, 5));
}

TEST_CASE("outcomes follow strength against detachment force") {
  const auto& cfg = shipped();
  CampaignOptions opt;
  opt.trials = 500;
  for (auto mode : {GraspMode::kSuction, GraspMode::kDual, GraspMode::kFingers}) {
    const CampaignResult r = run_campaign(cfg.field_stats, cfg.grasp_model, mode, opt);
    int picked = 0;
    for (const auto& t : r.log) {
      if (t.outcome == PickOutcome::kPicked) {
        ++picked;
        CHECK(t.strength_N >= t.fdf_N);
      }
      if (t.outcome == PickOutcome::kGraspSlip) CHECK(t.strength_N < t.fdf_N);
      CHECK(t.fdf_N >= 7.0);
      CHECK(t.fdf_N <= 38.0);
      CHECK(t.offset_mm >= 1.0);
      CHECK(t.offset_mm <= 30.0);
    }
    CHECK(picked == r.picked);
    CHECK(r.success_rate == doctest::Approx(picked / 500.0));
    int sum = 0;
    for (const auto& [k, v] : r.breakdown) sum += v;
    CHECK(sum == 500);
  }
}

TEST_CASE("stronger grasps pick a superset of fruit") {
  const auto& cfg = shipped();
  GraspModelParams strong = cfg.grasp_model;
  strong.pad_force_N *= 1.3;
  strong.suction_axial_N *= 1.3;
  strong.mu_pad *= 1.1;
  CampaignOptions opt;
  opt.trials = 400;
  opt.seed = 5;
  for (auto mode : {GraspMode::kSuction, GraspMode::kDual}) {
    const auto weak = run_campaign(cfg.field_stats, cfg.grasp_model, mode, opt);
    const auto more = run_campaign(cfg.field_stats, strong, mode, opt);
    CHECK(more.success_rate >= weak.success_rate);
    for (std::size_t i = 0; i < weak.log.size(); ++i) {
      if (weak.log[i].outcome == PickOutcome::kPicked) CHECK(more.log[i].outcome == PickOutcome::kPicked);
    }
  }
}

TEST_CASE("retries only add picks") {
  const auto& cfg = shipped();
  CampaignOptions opt;
  opt.trials = 400;
  const auto once = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  opt.retries = 2;
  const auto thrice = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  CHECK(thrice.picked >= once.picked);
  for (std::size_t i = 0; i < once.log.size(); ++i) {
    if (once.log[i].outcome == PickOutcome::kPicked) {
      CHECK(thrice.log[i].outcome == PickOutcome::kPicked);
      CHECK(thrice.log[i].attempts == 1);
    }
    CHECK(thrice.log[i].attempts <= 3);
  }
}

TEST_CASE("campaign argument errors") {
  const auto& cfg = shipped();
  CampaignOptions opt;
  opt.trials = 0;
  CHECK_THROWS_AS(run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt), Error);
  opt.trials = 1;
  opt.occlusion_probability = 2.0;
  CHECK_THROWS_AS(run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt), Error);
}
