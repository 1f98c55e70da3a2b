#pragma once

#include <string>

#include <json.hpp>

#include "gripkit/cam_path.h"
#include "gripkit/grasp_wrench.h"
#include "gripkit/leadscrew.h"
#include "gripkit/linkage.h"
#include "gripkit/pick_sim.h"
#include "gripkit/quantile.h"

namespace gripkit {

/// How the campath command obtains tracks: synthesized from a fruit radius and
/// clearance, or loaded from a CamTrackSpec JSON file.
struct CamSource {
  bool synthesize = true;
  double fruit_radius_mm = 37.5;
  double clearance_mm = 3.0;
  PalmEnvelope envelope;
  std::string spec_file;  // resolved path when !synthesize
};

struct PickConfig {
  int engage_rule = 2;
  double cup_tolerance_mm = 15.0;
  double occlusion_probability = 0.04;
  int retries = 0;
  double approach_limit_mm = 50.0;
  double cup_stroke_mm = 10.0;
  double sweep_fruit_radius_mm = 43.0;  // fruit the finger tracks were cut for
  double sweep_clearance_mm = 3.0;
  int sweep_samples = 200;
};

struct GripperConfig {
  LinkageParams linkage;
  ScrewParams screw = ScrewParams::tr8x8();
  double holding_torque_Nm = 0.4;
  TravelRange travel;
  GraspModelParams grasp_model;
  CamSource cam;
  double bruise_threshold_N = 30.0;
  ProxyModel proxy;
  PickConfig pick;
  TrialStats field_stats;
  bool has_field_stats = false;

  void validate() const;
};

/// Parses a config document. Missing sections keep their defaults; unknown
/// keys and bad values throw kConfigError naming the field. Relative file
/// references resolve against base_dir.
GripperConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");
GripperConfig load_config(const std::string& path);
nlohmann::json to_json(const GripperConfig& config);

nlohmann::json to_json(const GraspModelParams& p);
GraspModelParams grasp_model_from_json(const nlohmann::json& j,
                                       const GraspModelParams& base = {});

nlohmann::json to_json(const QuantileModel& q);
nlohmann::json to_json(const TrialStats& stats);
TrialStats trial_stats_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CamTrackSpec& spec);
CamTrackSpec cam_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PathReport& report);

/// Per-finger pad force limit: nut thrust at the holding torque times the
/// transmission ratio at the pad-force anchor travel.
double pad_hold_force(const LinkageParams& linkage, const ScrewParams& screw,
                      double holding_torque_Nm, double x_mm);

}  // namespace gripkit
