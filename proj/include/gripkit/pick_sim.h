#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "gripkit/cam_path.h"
#include "gripkit/grasp_wrench.h"
#include "gripkit/quantile.h"

namespace gripkit {

struct ProxyModel {
  double detachment_force_N = 16.0;
  double branch_stiffness_Npm = 455.0;
  double fruit_diameter_mm = 75.0;
  double fruit_mass_g = 220.0;

  void validate() const;
};

enum class PickPhase { kApproach, kSuctionEngage, kFingerDeploy, kPull, kDone };
enum class PickOutcome { kPending, kPicked, kGraspSlip, kNoEngage };

const char* to_string(PickPhase phase);
const char* to_string(PickOutcome outcome);

struct PickState {
  PickPhase phase = PickPhase::kApproach;
  int cups_engaged = 0;
  double travel_mm = 0.0;       // approach travel when the pick stopped advancing
  double pull_travel_mm = 0.0;  // branch stretch needed to reach detachment
  double strength_N = 0.0;
  bool fingers_deployed = false;
  PickOutcome outcome = PickOutcome::kPending;
  std::vector<PickPhase> history;  // phases entered, in order
};

/// Finger poses of the gripper's fixed cam tracks, reused to check sweep
/// clearance against fruit of other sizes sitting on the palm.
class FingerSweep {
 public:
  FingerSweep(CamTrackSpec spec, int samples);
  /// Smallest sweep clearance to a fruit of this radius resting on the palm.
  double min_clearance(double fruit_radius_mm) const;
  const CamTrackSpec& spec() const { return spec_; }

 private:
  CamTrackSpec spec_;
  std::vector<FingerPose> poses_;
};

struct PickSetup {
  int engage_rule = 2;                  // cups needed to stop the approach
  double cup_tolerance_mm = 15.0;       // lateral slack per cup
  double lateral_offset_mm = 0.0;       // gripper axis to fruit centre
  double offset_direction_rad = 0.0;
  double approach_limit_mm = 50.0;
  double cup_stroke_mm = 10.0;          // cup lip ahead of the palm
  int blocked_cup = -1;                 // cup index kept off the fruit, or -1
  const FingerSweep* sweep = nullptr;   // null skips the deploy clearance check
};

/// Runs approach, suction engage, finger deploy and pull-back. Failures are
/// outcomes, never exceptions (bad arguments still throw).
PickState run_pick(const ProxyModel& proxy, const GraspScenario& scenario,
                   const GraspModelParams& model, const PickSetup& setup = {});

/// Lateral distance of each cup from the fruit axis; cups sit on a ring.
std::array<double, 3> cup_lateral_distances(const GraspModelParams& model,
                                            double lateral_offset_mm,
                                            double offset_direction_rad);

struct CampaignOptions {
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  int engage_rule = 2;
  double cup_tolerance_mm = 15.0;
  double occlusion_probability = 0.04;  // one cup kept off by foliage
  int retries = 0;  // extra attempts; each re-samples offset and pull direction
  double approach_limit_mm = 50.0;
  double cup_stroke_mm = 10.0;
  const FingerSweep* sweep = nullptr;
};

struct TrialRecord {
  int trial = 0;
  double fdf_N = 0.0;
  double tangential_fdf_N = 0.0;
  double pull_angle_deg = 0.0;
  double offset_mm = 0.0;
  double diameter_mm = 0.0;
  double stiffness_Npm = 0.0;
  GraspMode mode = GraspMode::kDual;
  double strength_N = 0.0;
  int attempts = 0;
  PickOutcome outcome = PickOutcome::kPending;
};

struct CampaignResult {
  int trials = 0;
  int picked = 0;
  double success_rate = 0.0;
  std::map<PickOutcome, int> breakdown;
  std::vector<TrialRecord> log;
};

/// Trial i draws from its own generator seeded by hash(seed, i), so results do
/// not depend on the thread count.
CampaignResult run_campaign(const TrialStats& stats, const GraspModelParams& model,
                            GraspMode mode, const CampaignOptions& options);

/// splitmix64 finalizer over (seed, index).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace gripkit
