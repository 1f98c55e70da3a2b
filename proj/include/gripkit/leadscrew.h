#pragma once

namespace gripkit {

/// Multi-start trapezoidal lead screw. Lengths in mm, thread angle is the
/// acme half-angle in radians.
struct ScrewParams {
  double pitch_mm = 2.0;
  int n_starts = 4;
  double thread_angle_rad = 0.0;
  double d_outer_mm = 8.0;
  double mu = 0.2;

  /// Tr8x8 screw of the gripper prototype: 2 mm pitch, 4 starts, 14.5 deg.
  static ScrewParams tr8x8();

  /// Throws kInvalidArgument when a field is out of range.
  void validate() const;
};

struct ScrewDerived {
  double lead_mm = 0.0;
  double d_mean_mm = 0.0;
};

ScrewDerived derive(const ScrewParams& screw);

/// Motor torque (N m) needed to raise a nut load f_nut (N).
double torque_for_thrust(const ScrewParams& screw, double f_nut);

/// Nut thrust (N) produced by motor torque t_motor (N m); exact inverse of
/// torque_for_thrust.
double thrust_for_torque(const ScrewParams& screw, double t_motor);

/// Torque (N m) needed to lower the load. Negative means the load back-drives
/// the screw.
double back_drive_torque(const ScrewParams& screw, double f_nut);

/// True when mu * sec(phi) >= lead / (pi * d_mean), i.e. the load cannot
/// back-drive the screw.
bool is_self_locking(const ScrewParams& screw);

}  // namespace gripkit
