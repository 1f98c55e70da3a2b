#include "gripkit/pick_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gripkit/error.h"
#include "gripkit/parallel.h"
#include "gripkit/units.h"

namespace gripkit {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Angle between the stem force and the gripper axis.
double pull_angle_for(double net, double tangential) {
  const double ratio = net > 0.0 ? std::max(tangential, 0.0) / net : 0.0;
  return rad_to_deg(std::asin(std::min(ratio, 1.0)));
}

bool uses_cups(GraspMode m) { return m != GraspMode::kFingers; }
bool uses_fingers(GraspMode m) { return m != GraspMode::kSuction; }

}  // namespace

const char* to_string(PickPhase phase) {
  switch (phase) {
    case PickPhase::kApproach: return "Approach";
    case PickPhase::kSuctionEngage: return "SuctionEngage";
    case PickPhase::kFingerDeploy: return "FingerDeploy";
    case PickPhase::kPull: return "Pull";
    case PickPhase::kDone: return "Done";
  }
  return "?";
}

const char* to_string(PickOutcome outcome) {
  switch (outcome) {
    case PickOutcome::kPending: return "Pending";
    case PickOutcome::kPicked: return "Picked";
    case PickOutcome::kGraspSlip: return "GraspSlip";
    case PickOutcome::kNoEngage: return "NoEngage";
  }
  return "?";
}

void ProxyModel::validate() const {
  if (!(detachment_force_N > 0.0) || !(branch_stiffness_Npm > 0.0) ||
      !(fruit_diameter_mm > 0.0) || !(fruit_mass_g > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "proxy fields must be positive");
  }
}

FingerSweep::FingerSweep(CamTrackSpec spec, int samples) : spec_(std::move(spec)) {
  validate_path(spec_, samples, 1, &poses_);
}

double FingerSweep::min_clearance(double fruit_radius_mm) const {
  CamTrackSpec probe = spec_;
  probe.fruit_radius_mm = fruit_radius_mm;
  probe.fruit_center_mm = {0.0, spec_.palm_plane_z_mm + fruit_radius_mm};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pose : poses_) {
    if (pose.region == Region::kSweeping) best = std::min(best, finger_clearance(probe, pose));
  }
  return best;
}

std::array<double, 3> cup_lateral_distances(const GraspModelParams& model,
                                            double lateral_offset_mm,
                                            double offset_direction_rad) {
  std::array<double, 3> d{};
  const double ex = lateral_offset_mm * std::cos(offset_direction_rad);
  const double ey = lateral_offset_mm * std::sin(offset_direction_rad);
  for (int k = 0; k < 3; ++k) {
    const double lon = deg_to_rad(60.0 + 120.0 * k);
    d[k] = std::hypot(model.cup_ring_radius_mm * std::cos(lon) + ex,
                      model.cup_ring_radius_mm * std::sin(lon) + ey);
  }
  return d;
}

PickState run_pick(const ProxyModel& proxy, const GraspScenario& scenario,
                   const GraspModelParams& model, const PickSetup& setup) {
  proxy.validate();
  model.validate();
  if (setup.engage_rule < 1 || setup.engage_rule > 3) {
    throw Error(ErrorCode::kInvalidArgument, "engage rule must be 1 to 3 cups");
  }
  GraspScenario s = scenario;
  s.fruit_radius_mm = 0.5 * proxy.fruit_diameter_mm;
  s.validate();
  const double r = s.fruit_radius_mm;

  PickState st;
  st.history.push_back(PickPhase::kApproach);
  auto finish = [&](PickOutcome outcome) {
    st.phase = PickPhase::kDone;
    st.history.push_back(PickPhase::kDone);
    st.outcome = outcome;
    return st;
  };

  st.travel_mm = setup.approach_limit_mm;
  if (uses_cups(s.mode)) {
    st.phase = PickPhase::kSuctionEngage;
    st.history.push_back(st.phase);
    const auto dist = cup_lateral_distances(model, setup.lateral_offset_mm,
                                            setup.offset_direction_rad);
    std::vector<double> touch;
    for (int k = 0; k < 3; ++k) {
      s.cups_engaged[k] = false;
      if (k == setup.blocked_cup) continue;
      const double dk = dist[k];
      if (!(dk < r) || dk > model.cup_ring_radius_mm + setup.cup_tolerance_mm) continue;
      // Palm starts approach_limit from the fruit's nearest point; compliant
      // bellows take up whatever the lip has not reached by the limit.
      const double travel = setup.approach_limit_mm - setup.cup_stroke_mm + r -
                            std::sqrt(r * r - dk * dk);
      s.cups_engaged[k] = true;
      touch.push_back(std::clamp(travel, 0.0, setup.approach_limit_mm));
    }
    st.cups_engaged = static_cast<int>(touch.size());
    if (st.cups_engaged < setup.engage_rule) return finish(PickOutcome::kNoEngage);
    std::sort(touch.begin(), touch.end());
    st.travel_mm = touch[setup.engage_rule - 1];
  }

  if (uses_fingers(s.mode)) {
    st.phase = PickPhase::kFingerDeploy;
    st.history.push_back(st.phase);
    st.fingers_deployed = setup.sweep == nullptr || setup.sweep->min_clearance(r) >= 0.0;
    if (!st.fingers_deployed) {
      if (s.mode == GraspMode::kFingers) {
        st.phase = PickPhase::kPull;
        st.history.push_back(st.phase);
        st.strength_N = 0.0;
        st.pull_travel_mm = 1000.0 * proxy.detachment_force_N / proxy.branch_stiffness_Npm;
        return finish(PickOutcome::kGraspSlip);
      }
      s.mode = GraspMode::kSuction;
    }
  }

  st.phase = PickPhase::kPull;
  st.history.push_back(st.phase);
  st.pull_travel_mm = 1000.0 * proxy.detachment_force_N / proxy.branch_stiffness_Npm;
  st.strength_N = predict_strength(s, model);
  return finish(st.strength_N >= proxy.detachment_force_N ? PickOutcome::kPicked
                                                          : PickOutcome::kGraspSlip);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

CampaignResult run_campaign(const TrialStats& stats, const GraspModelParams& model,
                            GraspMode mode, const CampaignOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(options.occlusion_probability >= 0.0 && options.occlusion_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "occlusion probability must lie in [0, 1]");
  }
  if (options.retries < 0) throw Error(ErrorCode::kInvalidArgument, "retries must be >= 0");
  stats.validate();
  model.validate();

  CampaignResult result;
  result.trials = options.trials;
  result.log.resize(static_cast<std::size_t>(options.trials));
  parallel_for(result.log.size(), options.threads, [&](std::size_t i) {
    TrialRng rng(trial_seed(options.seed, i));
    TrialRecord rec;
    rec.trial = static_cast<int>(i);
    rec.mode = mode;
    rec.fdf_N = stats.net_fdf_N.sample(rng.uniform());
    rec.tangential_fdf_N = stats.tangential_fdf_N.sample(rng.uniform());
    rec.offset_mm = stats.offset_mm.sample(rng.uniform());
    rec.diameter_mm = stats.diameter_mm.sample(rng.uniform());
    rec.stiffness_Npm = stats.stiffness_Npm.sample(rng.uniform());
    double direction = 2.0 * kPi * rng.uniform();
    const bool occluded = rng.uniform() < options.occlusion_probability;
    const int cup = std::min(static_cast<int>(3.0 * rng.uniform()), 2);

    rec.pull_angle_deg = pull_angle_for(rec.fdf_N, rec.tangential_fdf_N);

    ProxyModel proxy;
    proxy.detachment_force_N = std::max(rec.fdf_N, 1e-9);
    proxy.branch_stiffness_Npm = std::max(rec.stiffness_Npm, 1e-9);
    proxy.fruit_diameter_mm = rec.diameter_mm;
    proxy.fruit_mass_g = stats.weight_g.median() > 0.0 ? stats.weight_g.median() : 220.0;

    GraspScenario scenario;
    scenario.mode = mode;
    scenario.pull_type = PullType::kStem;
    scenario.pull_angle_deg = rec.pull_angle_deg;

    PickSetup setup;
    setup.engage_rule = options.engage_rule;
    setup.cup_tolerance_mm = options.cup_tolerance_mm;
    setup.approach_limit_mm = options.approach_limit_mm;
    setup.cup_stroke_mm = options.cup_stroke_mm;
    setup.blocked_cup = occluded ? cup : -1;
    setup.sweep = options.sweep;

    for (int attempt = 0; attempt <= options.retries; ++attempt) {
      if (attempt > 0) {
        // A new attempt re-poses the gripper: offset and pull direction change,
        // the fruit and its stem do not.
        rec.offset_mm = stats.offset_mm.sample(rng.uniform());
        direction = 2.0 * kPi * rng.uniform();
        rec.tangential_fdf_N = stats.tangential_fdf_N.sample(rng.uniform());
        scenario.pull_angle_deg = pull_angle_for(rec.fdf_N, rec.tangential_fdf_N);
        rec.pull_angle_deg = scenario.pull_angle_deg;
      }
      setup.lateral_offset_mm = rec.offset_mm;
      setup.offset_direction_rad = direction;
      const PickState st = run_pick(proxy, scenario, model, setup);
      rec.attempts = attempt + 1;
      rec.strength_N = st.strength_N;
      rec.outcome = st.outcome;
      if (st.outcome == PickOutcome::kPicked) break;
    }
    result.log[i] = rec;
  });

  for (const auto& rec : result.log) {
    ++result.breakdown[rec.outcome];
    if (rec.outcome == PickOutcome::kPicked) ++result.picked;
  }
  result.success_rate = static_cast<double>(result.picked) / result.trials;
  return result;
}

}  // namespace gripkit
