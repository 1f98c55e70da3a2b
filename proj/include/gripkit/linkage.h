#pragma once

#include <string>
#include <vector>

#include "gripkit/leadscrew.h"

namespace gripkit {

/// Crank-slider geometry of one finger in the clamping region (mm).
///
/// The nut slides along the gripper axis and drives a bar (l_b) whose far end
/// turns a crank (l_k) about the inner pivot. The pivot sits p_x off-axis; its
/// axial distance from the nut joint is y = p_y - l_n - x. The finger lever
/// (l_f) carries the pad.
struct LinkageParams {
  double p_x = 12.0;
  double l_b = 18.5;
  double l_k = 17.5;
  double l_f = 48.0;
  double p_y = 90.0;
  double l_n = 7.0;

  static LinkageParams prototype();
  void validate() const;
};

struct TravelRange {
  double x_min = 50.0;
  double x_max = 59.0;
};

/// Solved linkage configuration at nut travel x. Angles in radians.
struct LinkageState {
  double x = 0.0;
  double y = 0.0;
  double gamma = 0.0;  // bar-crank angle
  double alpha = 0.0;  // axis to nut-pivot diagonal
  double theta = 0.0;  // diagonal to bar
  double ratio = 0.0;  // F_out / F_nut
};

struct ForceState {
  double f_nut = 0.0;
  double f_bar = 0.0;
  double f_out = 0.0;
};

/// Slack allowed on acos/asin arguments before a configuration counts as
/// infeasible.
inline constexpr double kTrigSlack = 1e-9;

/// Throws kNegativeY when x >= p_y - l_n and kGeometryInfeasible when the
/// triangle cannot close or the transmission angle alpha + theta reaches 90 deg.
LinkageState solve_geometry(const LinkageParams& params, double x);

double transmission_ratio(const LinkageParams& params, double x);

ForceState force_out(const LinkageParams& params, double x, double f_nut);

/// Rebuilds the joints in the plane, balances moments about the inner pivot
/// with cross products and returns the relative disagreement with the
/// closed-form pad force.
double moment_balance_check(const LinkageParams& params, double x,
                            double f_nut);

/// Throws kGeometryInfeasible unless every x in the range is solvable.
void validate_travel(const LinkageParams& params, const TravelRange& range);

struct SweepRow {
  double x = 0.0;
  bool feasible = false;
  LinkageState state;
  double f_nut = 0.0;
  double t_motor = 0.0;
  std::string error;  // set when !feasible
};

/// One row per sample x_min + i * step up to x_max. Rows whose geometry fails
/// stay in the table with feasible = false.
std::vector<SweepRow> sweep_transmission(const LinkageParams& params,
                                         const TravelRange& range, double step,
                                         double f_out_target,
                                         const ScrewParams& screw);

/// Number of samples sweep_transmission produces for a range and step.
int sweep_sample_count(const TravelRange& range, double step);

/// Nut thrust that puts the pad force at anchor_force when the nut is at
/// anchor_x.
double anchored_nut_force(const LinkageParams& params, double anchor_force,
                          double anchor_x);

struct BruiseRow {
  double x = 0.0;
  double ratio = 0.0;
  double f_out = 0.0;
  bool exceeds = false;  // above the bruise threshold
};

/// Pad force over the range for a fixed nut thrust.
std::vector<BruiseRow> bruise_curve(const LinkageParams& params,
                                    const TravelRange& range, double step,
                                    double f_nut, double threshold);

}  // namespace gripkit
