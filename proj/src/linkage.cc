#include "gripkit/linkage.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "gripkit/error.h"
#include "gripkit/units.h"

namespace gripkit {
namespace {

double clamp_unit(double arg, const char* what, double x) {
  if (!std::isfinite(arg) || std::abs(arg) > 1.0 + kTrigSlack) {
    throw Error(ErrorCode::kGeometryInfeasible,
                std::string(what) + " argument " + std::to_string(arg) +
                    " outside [-1, 1] at x = " + std::to_string(x) + " mm");
  }
  return std::clamp(arg, -1.0, 1.0);
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

LinkageParams LinkageParams::prototype() { return LinkageParams{}; }

void LinkageParams::validate() const {
  for (double v : {p_x, l_b, l_k, l_f, p_y, l_n}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "linkage lengths must be finite and > 0");
    }
  }
}

LinkageState solve_geometry(const LinkageParams& p, double x) {
  p.validate();
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kInvalidArgument, "nut travel must be finite");
  }
  LinkageState s;
  s.x = x;
  s.y = p.p_y - p.l_n - x;
  if (!(s.y > 0.0)) {
    throw Error(ErrorCode::kNegativeY,
                "y = " + std::to_string(s.y) + " mm at x = " +
                    std::to_string(x) + " mm");
  }
  const double diag_sq = p.p_x * p.p_x + s.y * s.y;
  s.gamma = std::acos(clamp_unit(
      (p.l_b * p.l_b + p.l_k * p.l_k - diag_sq) / (2.0 * p.l_b * p.l_k),
      "acos(gamma)", x));
  s.alpha = std::atan(p.p_x / s.y);
  s.theta = std::asin(
      clamp_unit(p.l_k * std::sin(s.gamma) / std::sqrt(diag_sq), "asin(theta)", x));

  const double transmission = std::cos(s.alpha + s.theta);
  if (!(transmission > 1e-12)) {
    throw Error(ErrorCode::kGeometryInfeasible,
                "alpha + theta reaches 90 deg at x = " + std::to_string(x) +
                    " mm");
  }
  s.ratio = (p.l_k / p.l_f) * std::sin(s.gamma) / transmission;
  if (!(s.ratio > 0.0) || !std::isfinite(s.ratio)) {
    throw Error(ErrorCode::kGeometryInfeasible,
                "degenerate crank angle at x = " + std::to_string(x) + " mm");
  }
  return s;
}

double transmission_ratio(const LinkageParams& params, double x) {
  return solve_geometry(params, x).ratio;
}

ForceState force_out(const LinkageParams& params, double x, double f_nut) {
  if (!(f_nut >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "f_nut must be >= 0");
  }
  const LinkageState s = solve_geometry(params, x);
  return ForceState{f_nut, f_nut / std::cos(s.alpha + s.theta),
                    s.ratio * f_nut};
}

// Frame: origin at the nut joint, +y along the nut travel direction toward
// the pivot, +x toward the pivot's lateral offset.
double moment_balance_check(const LinkageParams& p, double x, double f_nut) {
  const ForceState closed = force_out(p, x, f_nut);
  const LinkageState s = solve_geometry(p, x);

  const Eigen::Vector2d nut(0.0, 0.0);
  const Eigen::Vector2d pivot(p.p_x, s.y);
  const Eigen::Vector2d to_pivot = pivot - nut;
  const double d = to_pivot.norm();

  // Bar/crank joint: intersection of circle(nut, l_b) and circle(pivot, l_k),
  // on the side of the diagonal away from the axis.
  const double a = (p.l_b * p.l_b - p.l_k * p.l_k + d * d) / (2.0 * d);
  double h_sq = p.l_b * p.l_b - a * a;
  if (h_sq < -kTrigSlack * p.l_b * p.l_b) {
    throw Error(ErrorCode::kGeometryInfeasible,
                "bar and crank circles do not meet at x = " +
                    std::to_string(x) + " mm");
  }
  h_sq = std::max(h_sq, 0.0);
  const Eigen::Vector2d along = to_pivot / d;
  const Eigen::Vector2d ccw(-along.y(), along.x());
  const Eigen::Vector2d joint = nut + a * along - std::sqrt(h_sq) * ccw;

  const Eigen::Vector2d bar_dir = (joint - nut) / p.l_b;
  if (!(bar_dir.y() > 0.0)) {
    throw Error(ErrorCode::kGeometryInfeasible,
                "bar points against the nut travel at x = " +
                    std::to_string(x) + " mm");
  }
  // The nut guide absorbs the lateral component; the axial one equals f_nut.
  const Eigen::Vector2d bar_force = (f_nut / bar_dir.y()) * bar_dir;
  const double torque = cross2(joint - pivot, bar_force);
  const double f_out_vector = std::abs(torque) / p.l_f;

  return std::abs(f_out_vector - closed.f_out) / std::max(closed.f_out, 1.0);
}

void validate_travel(const LinkageParams& params, const TravelRange& range) {
  if (!(range.x_min < range.x_max)) {
    throw Error(ErrorCode::kInvalidArgument, "travel range needs x_min < x_max");
  }
  constexpr int kProbe = 200;
  for (int i = 0; i <= kProbe; ++i) {
    const double x =
        range.x_min + (range.x_max - range.x_min) * i / static_cast<double>(kProbe);
    solve_geometry(params, x);
  }
}

int sweep_sample_count(const TravelRange& range, double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sweep step must be > 0");
  }
  if (range.x_max < range.x_min) {
    throw Error(ErrorCode::kInvalidArgument, "empty travel range");
  }
  return static_cast<int>(std::floor((range.x_max - range.x_min) / step + 1e-9)) + 1;
}

std::vector<SweepRow> sweep_transmission(const LinkageParams& params,
                                         const TravelRange& range, double step,
                                         double f_out_target,
                                         const ScrewParams& screw) {
  if (!(f_out_target >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target pad force must be >= 0");
  }
  const int n = sweep_sample_count(range, step);
  std::vector<SweepRow> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    SweepRow row;
    row.x = range.x_min + i * step;
    try {
      row.state = solve_geometry(params, row.x);
      row.f_nut = f_out_target / row.state.ratio;
      row.t_motor = torque_for_thrust(screw, row.f_nut);
      row.feasible = true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDenominatorNonpositive) throw;
      row.feasible = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double anchored_nut_force(const LinkageParams& params, double anchor_force,
                          double anchor_x) {
  if (!(anchor_force >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "anchor force must be >= 0");
  }
  return anchor_force / transmission_ratio(params, anchor_x);
}

std::vector<BruiseRow> bruise_curve(const LinkageParams& params,
                                    const TravelRange& range, double step,
                                    double f_nut, double threshold) {
  const int n = sweep_sample_count(range, step);
  std::vector<BruiseRow> rows(n);
  for (int i = 0; i < n; ++i) {
    BruiseRow& r = rows[i];
    r.x = range.x_min + i * step;
    r.ratio = transmission_ratio(params, r.x);
    r.f_out = r.ratio * f_nut;
    r.exceeds = r.f_out > threshold;
  }
  return rows;
}

}  // namespace gripkit
