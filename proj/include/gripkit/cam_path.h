#pragma once

#include <vector>

#include <Eigen/Core>

#include "gripkit/bezier.h"
#include "gripkit/units.h"

namespace gripkit {

/// Two-region cam tracks for one finger, drawn in the finger's axial plane.
/// Coordinates are (x, z) in mm: x is radial distance from the gripper axis,
/// z runs along the axis toward the fruit. The palm face is the plane
/// z = palm_plane_z and the tracks live behind it.
///
/// The outer path holds the sweeping segment(s) followed by the clamping
/// segment; the inner path ends at the hard stop.
struct CamTrackSpec {
  std::vector<CubicBezier> outer_path;
  std::vector<CubicBezier> inner_path;
  double pin_separation_mm = 12.0;
  double inner_hard_stop = 1.0;  // inner-path parameter where the slot ends
  double fruit_radius_mm = 37.5;
  Eigen::Vector2d fruit_center_mm{0.0, 37.5};
  double palm_plane_z_mm = 0.0;
  double finger_length_mm = 50.0;  // inner pin to pad tip
  double pad_half_width_mm = 5.0;
  double contact_latitude_band_rad = deg_to_rad(10.0);

  void validate() const;
};

enum class Region { kSweeping, kClamping };

const char* to_string(Region region);

struct FingerPose {
  Eigen::Vector2d inner_pin = Eigen::Vector2d::Zero();
  Eigen::Vector2d outer_pin = Eigen::Vector2d::Zero();
  Eigen::Vector2d pad_tip = Eigen::Vector2d::Zero();
  Region region = Region::kSweeping;
  double rotation = 0.0;     // finger axis tilt from +z toward +x, rad
  double inner_param = 0.0;  // solved inner-path parameter
};

struct PathReport {
  double min_clearance = 0.0;      // over Sweeping samples; +inf if none
  double max_sweep_radius = 0.0;   // largest radial reach of the pad tip
  double clamp_contact_latitude = 0.0;  // below the equator is positive
  bool interference = false;
  bool latitude_in_band = false;
  int region_transitions = 0;
  bool region_reverted = false;
  double max_pin_error = 0.0;
  int samples = 0;
};

/// Mechanism envelope that default-track synthesis must fit in.
struct PalmEnvelope {
  double pin_separation_mm = 12.0;
  double pad_half_width_mm = 5.0;
  double hard_stop_depth_mm = 10.0;   // inner hard stop below the palm plane
  double retract_depth_mm = 3.0;      // pad tip below the palm plane at u = 0
  double sweep_margin_mm = 1.5;       // sweep radius beyond the clearance
  double max_finger_length_mm = 120.0;
  double max_radius_mm = 80.0;
  double contact_latitude_band_rad = deg_to_rad(10.0);
  double palm_plane_z_mm = 0.0;
};

/// Synthesizes tracks whose sweep keeps the finger at least `clearance_mm`
/// off the fruit and whose clamp ends with the pad on the equator. Throws
/// kSynthesisFailed naming the violated constraint.
CamTrackSpec build_default_tracks(double fruit_radius_mm, double clearance_mm,
                                  const PalmEnvelope& envelope = {});

/// Finger pose with the outer pin at outer_path(u). Throws kPoseUnsolvable
/// when no inner-path point sits at pin_separation from the outer pin.
FingerPose solve_finger_pose(const CamTrackSpec& spec, double u);

/// Samples `samples` poses uniformly in u. `threads` > 1 evaluates poses in
/// parallel; the report is identical to the sequential one. When `poses` is
/// given it receives every sampled pose in order.
PathReport validate_path(const CamTrackSpec& spec, int samples, int threads = 1,
                         std::vector<FingerPose>* poses = nullptr);

/// Signed distance from the finger body (inner pin to pad tip, widened by the
/// pad half-width) to the fruit sphere.
double finger_clearance(const CamTrackSpec& spec, const FingerPose& pose);

}  // namespace gripkit
