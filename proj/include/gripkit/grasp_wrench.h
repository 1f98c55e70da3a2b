#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gripkit {

enum class GraspMode { kSuction, kFingers, kDual };
/// Axial: pull through the fruit centre, tilted by the pull angle.
/// Rotational: pull at the stem point, orthogonal to the gripper axis.
/// Stem: pull at the stem point, tilted by the pull angle (field picks).
enum class PullType { kAxial, kRotational, kStem };
enum class ContactKind { kFingerPad, kSuctionCup };

const char* to_string(GraspMode mode);
const char* to_string(PullType type);
GraspMode parse_grasp_mode(const std::string& text);
PullType parse_pull_type(const std::string& text);

/// Frame: origin at the fruit centre, +z along the gripper axis pointing away
/// from the palm. Fingers touch below the equator (toward the palm).
struct GraspScenario {
  double fruit_radius_mm = 37.5;
  double fruit_offset_mm = 0.0;
  double pull_angle_deg = 0.0;
  PullType pull_type = PullType::kAxial;
  GraspMode mode = GraspMode::kDual;
  std::array<bool, 3> cups_engaged{true, true, true};

  void validate() const;
};

struct GraspModelParams {
  double pad_force_N = 18.0;        // per-finger clamp preload
  double mu_pad = 0.5;
  double suction_axial_N = 4.0;     // tension capacity per cup
  double shear_fraction = 0.5;      // cup shear limit as a share of tension
  double cup_moment_arm_mm = 10.0;  // seal bending capacity / tension
  double pad_hold_force_N = 151.0;  // per-finger limit before the nut slips
  double cup_ring_radius_mm = 20.0;
  double cup_compression_N = 60.0;
  double cup_rim_friction = 0.5;
  int cone_sides = 8;

  void validate() const;
};

struct Contact {
  ContactKind kind = ContactKind::kFingerPad;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  // pushes into the fruit
  Eigen::Vector3d tangent = Eigen::Vector3d::Zero();  // zero: derived from normal
  double normal_capacity = 0.0;   // pad normal or cup compression
  double tension_capacity = 0.0;  // cups only
  double mu = 0.0;                // pad friction or cup rim friction
  double shear_fraction = 0.0;    // cups only
  double moment_capacity_Nmm = 0.0;  // cups only
  int cone_sides = 8;
};

struct ContactSet {
  std::vector<Contact> contacts;
  /// Cap on the summed finger-pad normal forces (shared squeeze).
  double squeeze_budget_N = std::numeric_limits<double>::infinity();
};

/// Unit tangent orthogonal to n that rotates with the contact about z.
Eigen::Vector3d default_tangent(const Eigen::Vector3d& normal);

/// Throws kOffsetExceedsRadius when the offset exceeds the fruit radius.
ContactSet build_contacts(const GraspScenario& scenario,
                          const GraspModelParams& model);

struct ContactLoad {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // on the fruit, N
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // pure seal moment, N mm
  double compression = 0.0;  // cups: rim push along the axis
  double tension = 0.0;      // cups: suction pull against the axis
};

struct PullSolution {
  double alpha = 0.0;
  std::vector<ContactLoad> loads;  // one per contact, the LP witness
  double witness_violation = 0.0;  // LP rows re-checked at the witness
  int iterations = 0;
};

/// Largest multiple of the unit pull that the contacts can hold in static
/// equilibrium. Returns +inf when the LP is unbounded. Throws
/// kLpNumericalFailure when the witness fails its own re-check.
PullSolution solve_resistible_pull(const ContactSet& contacts,
                                   const Eigen::Vector3d& pull_direction,
                                   const Eigen::Vector3d& application_point);

double max_resistible_pull(const ContactSet& contacts,
                           const Eigen::Vector3d& pull_direction,
                           const Eigen::Vector3d& application_point);

/// Largest physical violation of a witness: friction cone, capacity,
/// squeeze budget, cup limits and static equilibrium, checked on the contact
/// loads rather than the LP rows.
double witness_residual(const ContactSet& contacts, const Eigen::Vector3d& pull_direction,
                        const Eigen::Vector3d& application_point,
                        const PullSolution& solution);

/// Pull direction and application point for a scenario.
void pull_geometry(const GraspScenario& scenario, Eigen::Vector3d* direction,
                   Eigen::Vector3d* point);

double predict_strength(const GraspScenario& scenario,
                        const GraspModelParams& model);

}  // namespace gripkit
