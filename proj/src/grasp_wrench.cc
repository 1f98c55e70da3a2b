#include "gripkit/grasp_wrench.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "gripkit/error.h"
#include "gripkit/simplex.h"
#include "gripkit/units.h"

namespace gripkit {
namespace {

constexpr double kWitnessTolerance = 1e-6;

// Column bookkeeping for one contact in the LP.
struct ContactColumns {
  int first = 0;
  int generators = 0;    // friction-pyramid edges (pads) or shear directions (cups)
  int compression = -1;  // cups
  int tension = -1;      // cups
  int moments = -1;      // first seal-moment column, cups with moment capacity
};

Eigen::Vector3d tangent_of(const Contact& c) {
  if (c.tangent.squaredNorm() > 0.0) return c.tangent.normalized();
  return default_tangent(c.normal);
}

}  // namespace

const char* to_string(GraspMode mode) {
  switch (mode) {
    case GraspMode::kSuction: return "suction";
    case GraspMode::kFingers: return "fingers";
    case GraspMode::kDual: return "dual";
  }
  return "?";
}

const char* to_string(PullType type) {
  switch (type) {
    case PullType::kAxial: return "axial";
    case PullType::kRotational: return "rotational";
    case PullType::kStem: return "stem";
  }
  return "?";
}

GraspMode parse_grasp_mode(const std::string& text) {
  if (text == "suction") return GraspMode::kSuction;
  if (text == "fingers") return GraspMode::kFingers;
  if (text == "dual") return GraspMode::kDual;
  throw Error(ErrorCode::kParseError, "unknown grasp mode '" + text + "'");
}

PullType parse_pull_type(const std::string& text) {
  if (text == "axial") return PullType::kAxial;
  if (text == "rotational") return PullType::kRotational;
  if (text == "stem") return PullType::kStem;
  throw Error(ErrorCode::kParseError, "unknown pull type '" + text + "'");
}

void GraspScenario::validate() const {
  if (!(fruit_radius_mm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fruit radius must be positive");
  }
  if (!(fruit_offset_mm >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fruit offset must be non-negative");
  }
  if (!(pull_angle_deg >= 0.0 && pull_angle_deg <= 90.0)) {
    throw Error(ErrorCode::kInvalidArgument, "pull angle must lie in [0, 90] deg");
  }
}

void GraspModelParams::validate() const {
  const double fields[] = {pad_force_N,        mu_pad,           suction_axial_N,
                           cup_moment_arm_mm,  pad_hold_force_N, cup_ring_radius_mm,
                           cup_compression_N,  cup_rim_friction};
  for (double v : fields) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "grasp model fields must be finite and >= 0");
    }
  }
  if (!(shear_fraction > 0.0 && shear_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "shear fraction must lie in (0, 1]");
  }
  if (cone_sides < 3) {
    throw Error(ErrorCode::kInvalidArgument, "friction cone needs at least 3 sides");
  }
}

Eigen::Vector3d default_tangent(const Eigen::Vector3d& normal) {
  const Eigen::Vector3d n = normal.normalized();
  Eigen::Vector3d t = Eigen::Vector3d::UnitZ().cross(n);
  if (t.norm() < 1e-9) t = n.cross(Eigen::Vector3d::UnitX().cross(n));
  return t.normalized();
}

ContactSet build_contacts(const GraspScenario& scenario, const GraspModelParams& model) {
  scenario.validate();
  model.validate();
  const double r = scenario.fruit_radius_mm;
  if (scenario.fruit_offset_mm > r) {
    std::ostringstream msg;
    msg << "fruit offset " << scenario.fruit_offset_mm << " mm exceeds radius " << r;
    throw Error(ErrorCode::kOffsetExceedsRadius, msg.str());
  }
  if (model.cup_ring_radius_mm >= r) {
    throw Error(ErrorCode::kInvalidArgument, "suction ring does not fit under the fruit");
  }

  ContactSet set;
  const bool fingers = scenario.mode != GraspMode::kSuction;
  const bool cups = scenario.mode != GraspMode::kFingers;
  if (fingers) {
    const double lat = std::asin(scenario.fruit_offset_mm / r);
    for (int k = 0; k < 3; ++k) {
      const double lon = deg_to_rad(120.0 * k);
      Contact c;
      c.kind = ContactKind::kFingerPad;
      c.position = r * Eigen::Vector3d(std::cos(lat) * std::cos(lon),
                                       std::cos(lat) * std::sin(lon), -std::sin(lat));
      c.normal = -c.position / r;
      c.tangent = default_tangent(c.normal);
      c.normal_capacity = model.pad_hold_force_N;
      c.mu = model.mu_pad;
      c.cone_sides = model.cone_sides;
      set.contacts.push_back(c);
    }
    set.squeeze_budget_N = 3.0 * model.pad_force_N;
  }
  if (cups) {
    const double psi = std::asin(model.cup_ring_radius_mm / r);
    for (int k = 0; k < 3; ++k) {
      if (!scenario.cups_engaged[k]) continue;
      const double lon = deg_to_rad(60.0 + 120.0 * k);
      Contact c;
      c.kind = ContactKind::kSuctionCup;
      c.position = r * Eigen::Vector3d(std::sin(psi) * std::cos(lon),
                                       std::sin(psi) * std::sin(lon), -std::cos(psi));
      c.normal = Eigen::Vector3d::UnitZ();
      c.tangent = Eigen::Vector3d(std::cos(lon), std::sin(lon), 0.0);
      c.normal_capacity = model.cup_compression_N;
      c.tension_capacity = model.suction_axial_N;
      c.mu = model.cup_rim_friction;
      c.shear_fraction = model.shear_fraction;
      c.moment_capacity_Nmm = model.cup_moment_arm_mm * model.suction_axial_N;
      c.cone_sides = model.cone_sides;
      set.contacts.push_back(c);
    }
  }
  return set;
}

PullSolution solve_resistible_pull(const ContactSet& set,
                                   const Eigen::Vector3d& pull_direction,
                                   const Eigen::Vector3d& application_point) {
  if (set.contacts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "contact set is empty");
  }
  if (!(std::abs(pull_direction.norm() - 1.0) < 1e-9)) {
    throw Error(ErrorCode::kInvalidArgument, "pull direction must be a unit vector");
  }

  // Moment rows are divided by a length scale so they weigh like force rows.
  double scale = 1.0;
  for (const auto& c : set.contacts) scale = std::max(scale, c.position.norm());

  std::vector<ContactColumns> cols(set.contacts.size());
  std::vector<Eigen::Matrix<double, 6, 1>> wrench;  // unit wrench per column
  auto add_column = [&](const Eigen::Vector3d& f, const Eigen::Vector3d& m) {
    Eigen::Matrix<double, 6, 1> w;
    w << f, m / scale;
    wrench.push_back(w);
    return static_cast<int>(wrench.size()) - 1;
  };

  for (std::size_t i = 0; i < set.contacts.size(); ++i) {
    const Contact& c = set.contacts[i];
    if (c.cone_sides < 3) {
      throw Error(ErrorCode::kInvalidArgument, "contact needs at least 3 cone sides");
    }
    const Eigen::Vector3d n = c.normal.normalized();
    const Eigen::Vector3d t1 = tangent_of(c);
    const Eigen::Vector3d t2 = n.cross(t1);
    ContactColumns& cc = cols[i];
    cc.first = static_cast<int>(wrench.size());
    cc.generators = c.cone_sides;
    for (int j = 0; j < c.cone_sides; ++j) {
      const double phi = 2.0 * kPi * j / c.cone_sides;
      const Eigen::Vector3d t = std::cos(phi) * t1 + std::sin(phi) * t2;
      const Eigen::Vector3d f = c.kind == ContactKind::kFingerPad ? Eigen::Vector3d(n + c.mu * t)
                                                                  : t;
      add_column(f, c.position.cross(f));
    }
    if (c.kind == ContactKind::kSuctionCup) {
      cc.compression = add_column(n, c.position.cross(n));
      cc.tension = add_column(-n, c.position.cross(-n));
      if (c.moment_capacity_Nmm > 0.0) {
        cc.moments = static_cast<int>(wrench.size());
        for (int j = 0; j < c.cone_sides; ++j) {
          const double phi = 2.0 * kPi * j / c.cone_sides;
          add_column(Eigen::Vector3d::Zero(), std::cos(phi) * t1 + std::sin(phi) * t2);
        }
      }
    }
  }
  const int alpha_col =
      add_column(pull_direction, application_point.cross(pull_direction));
  const int nv = static_cast<int>(wrench.size());

  LinearProgram lp;
  lp.a.resize(0, nv);
  lp.c = Eigen::VectorXd::Zero(nv);
  lp.c(alpha_col) = 1.0;
  for (int r = 0; r < 6; ++r) {
    Eigen::RowVectorXd row(nv);
    for (int j = 0; j < nv; ++j) row(j) = wrench[j](r);
    lp.add_row(row, RowSense::kEqual, 0.0);
  }
  auto cap_row = [&](int first, int count, double cap) {
    if (!std::isfinite(cap)) return;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nv);
    row.segment(first, count).setOnes();
    lp.add_row(row, RowSense::kLessEqual, cap);
  };
  Eigen::RowVectorXd squeeze = Eigen::RowVectorXd::Zero(nv);
  bool any_pad = false;
  for (std::size_t i = 0; i < set.contacts.size(); ++i) {
    const Contact& c = set.contacts[i];
    const ContactColumns& cc = cols[i];
    if (c.kind == ContactKind::kFingerPad) {
      cap_row(cc.first, cc.generators, c.normal_capacity);
      squeeze.segment(cc.first, cc.generators).setOnes();
      any_pad = true;
    } else {
      cap_row(cc.compression, 1, c.normal_capacity);
      cap_row(cc.tension, 1, c.tension_capacity);
      Eigen::RowVectorXd shear = Eigen::RowVectorXd::Zero(nv);
      shear.segment(cc.first, cc.generators).setOnes();
      // Rim friction follows the net rim load, so tension eats into it.
      shear(cc.compression) = -c.mu;
      shear(cc.tension) = c.mu;
      lp.add_row(shear, RowSense::kLessEqual, c.shear_fraction * c.tension_capacity);
      if (cc.moments >= 0) cap_row(cc.moments, c.cone_sides, c.moment_capacity_Nmm);
    }
  }
  if (any_pad && std::isfinite(set.squeeze_budget_N)) {
    lp.add_row(squeeze, RowSense::kLessEqual, set.squeeze_budget_N);
  }

  const LpResult res = solve_lp(lp);
  PullSolution out;
  out.iterations = res.iterations;
  if (res.status == LpStatus::kUnbounded) {
    out.alpha = std::numeric_limits<double>::infinity();
    return out;
  }
  if (res.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kLpNumericalFailure, "zero pull reported infeasible");
  }
  out.witness_violation = max_violation(lp, res.x);
  const double tol = kWitnessTolerance * std::max(1.0, lp.b.cwiseAbs().maxCoeff());
  if (!(out.witness_violation <= tol)) {
    std::ostringstream msg;
    msg << "witness violates constraints by " << out.witness_violation;
    throw Error(ErrorCode::kLpNumericalFailure, msg.str());
  }
  out.alpha = res.x(alpha_col);

  out.loads.resize(set.contacts.size());
  for (std::size_t i = 0; i < set.contacts.size(); ++i) {
    const ContactColumns& cc = cols[i];
    ContactLoad& load = out.loads[i];
    auto accumulate = [&](int col) {
      load.force += res.x(col) * wrench[col].head<3>();
    };
    for (int j = 0; j < cc.generators; ++j) accumulate(cc.first + j);
    if (cc.compression >= 0) {
      accumulate(cc.compression);
      load.compression = res.x(cc.compression);
    }
    if (cc.tension >= 0) {
      accumulate(cc.tension);
      load.tension = res.x(cc.tension);
    }
    if (cc.moments >= 0) {
      for (int j = 0; j < set.contacts[i].cone_sides; ++j) {
        load.moment += res.x(cc.moments + j) * wrench[cc.moments + j].tail<3>() * scale;
      }
    }
  }
  return out;
}

double max_resistible_pull(const ContactSet& contacts,
                           const Eigen::Vector3d& pull_direction,
                           const Eigen::Vector3d& application_point) {
  return solve_resistible_pull(contacts, pull_direction, application_point).alpha;
}

double witness_residual(const ContactSet& set, const Eigen::Vector3d& pull_direction,
                        const Eigen::Vector3d& application_point,
                        const PullSolution& solution) {
  if (solution.loads.size() != set.contacts.size()) {
    throw Error(ErrorCode::kInvalidArgument, "witness does not match the contact set");
  }
  double scale = 1.0;
  for (const auto& c : set.contacts) scale = std::max(scale, c.position.norm());

  double worst = 0.0;
  auto excess = [&](double v) { worst = std::max(worst, v); };
  Eigen::Vector3d net_force = solution.alpha * pull_direction;
  Eigen::Vector3d net_moment = application_point.cross(solution.alpha * pull_direction);
  double squeeze = 0.0;
  for (std::size_t i = 0; i < set.contacts.size(); ++i) {
    const Contact& c = set.contacts[i];
    const ContactLoad& l = solution.loads[i];
    const Eigen::Vector3d n = c.normal.normalized();
    const double axial = l.force.dot(n);
    const double shear = (l.force - axial * n).norm();
    net_force += l.force;
    net_moment += c.position.cross(l.force) + l.moment;
    if (c.kind == ContactKind::kFingerPad) {
      excess(-axial);
      excess(axial - c.normal_capacity);
      excess(shear - c.mu * axial);
      excess(l.moment.norm() / scale);
      squeeze += axial;
    } else {
      excess(std::abs(axial - (l.compression - l.tension)));
      excess(-l.compression);
      excess(-l.tension);
      excess(l.compression - c.normal_capacity);
      excess(l.tension - c.tension_capacity);
      excess(shear - c.shear_fraction * c.tension_capacity -
             c.mu * (l.compression - l.tension));
      excess((l.moment.norm() - c.moment_capacity_Nmm) / scale);
      excess(std::abs(l.moment.dot(n)) / scale);
    }
  }
  if (std::isfinite(set.squeeze_budget_N)) excess(squeeze - set.squeeze_budget_N);
  excess(net_force.cwiseAbs().maxCoeff());
  excess(net_moment.cwiseAbs().maxCoeff() / scale);
  return worst;
}

void pull_geometry(const GraspScenario& scenario, Eigen::Vector3d* direction,
                   Eigen::Vector3d* point) {
  const double w = deg_to_rad(scenario.pull_angle_deg);
  const Eigen::Vector3d stem(0.0, 0.0, scenario.fruit_radius_mm);
  switch (scenario.pull_type) {
    case PullType::kAxial:
      *direction = {std::sin(w), 0.0, std::cos(w)};
      *point = Eigen::Vector3d::Zero();
      break;
    case PullType::kRotational:
      *direction = Eigen::Vector3d::UnitX();
      *point = stem;
      break;
    case PullType::kStem:
      *direction = {std::sin(w), 0.0, std::cos(w)};
      *point = stem;
      break;
  }
}

double predict_strength(const GraspScenario& scenario, const GraspModelParams& model) {
  const ContactSet set = build_contacts(scenario, model);
  if (set.contacts.empty()) return 0.0;
  Eigen::Vector3d dir;
  Eigen::Vector3d point;
  pull_geometry(scenario, &dir, &point);
  return max_resistible_pull(set, dir, point);
}

}  // namespace gripkit
