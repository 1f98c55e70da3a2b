// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gripkit/calibration.h"
#include "gripkit/cam_path.h"
#include "gripkit/config.h"
#include "gripkit/error.h"
#include "gripkit/grasp_wrench.h"
#include "gripkit/leadscrew.h"
#include "gripkit/linkage.h"
#include "gripkit/pick_sim.h"
#include "gripkit/quantile.h"
#include "gripkit/units.h"
#include "oracles.h"

using namespace gripkit;

namespace {

const std::string kData = GRIPKIT_DATA_DIR;
int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void transmission() {
  const auto t0 = std::chrono::steady_clock::now();
  const LinkageParams p;
  const auto rows = sweep_transmission(p, TravelRange{}, 0.1, 30.0, ScrewParams::tr8x8());
  std::size_t arg = 0;
  bool increasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].feasible) increasing = false;
    if (rows[i].t_motor > rows[arg].t_motor) arg = i;
    if (i > 0 && !(rows[i].state.ratio > rows[i - 1].state.ratio)) increasing = false;
  }
  const double r59 = transmission_ratio(p, 59.0);
  const double oracle_gap = std::abs(r59 - oracle::virtual_work_ratio(p, 59.0));
  const double secs = seconds_since(t0);
  const bool ok = arg == 0 && std::abs(rows[arg].t_motor - 0.35) <= 0.02 && increasing &&
                  std::abs(r59 - 1.0) <= 0.15 && oracle_gap <= 1e-6 && secs < 1.0;
  report("1 transmission", ok,
         fmt("torque max %.4f N m at x=%.1f mm; ratio(59)=%.6f; oracle gap %.1e", rows[arg].t_motor,
             rows[arg].x, r59, oracle_gap) +
             (increasing ? "; ratio increasing" : "; ratio NOT increasing") +
             fmt("; %.3f s", secs));
}

void lead_screw() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double energy = 0.0, round_trip = 0.0;
  int sign_mismatch = 0, screws = 0;
  while (screws < 100) {
    ScrewParams s;
    s.pitch_mm = 0.5 + 4.5 * u(rng);
    s.n_starts = 1 + static_cast<int>(6 * u(rng));
    s.thread_angle_rad = deg_to_rad(30.0 * u(rng));
    s.d_outer_mm = s.pitch_mm / 2 + 2 + 20 * u(rng);
    s.mu = 0.4 * u(rng);
    const double f = 1 + 200 * u(rng);
    double t = 0;
    try {
      t = torque_for_thrust(s, f);
    } catch (const Error&) {
      continue;
    }
    ++screws;
    round_trip = std::max(round_trip, std::abs(thrust_for_torque(s, t) - f) / f);
    ScrewParams ideal = s;
    ideal.mu = 0.0;
    const double lead = derive(s).lead_mm;
    energy = std::max(energy, std::abs(torque_for_thrust(ideal, f) * 1000 * 2 * kPi - f * lead) / (f * lead));
    const double lhs = s.mu / std::cos(s.thread_angle_rad);
    const double rhs = lead / (kPi * derive(s).d_mean_mm);
    const double back = back_drive_torque(s, f);
    if ((lhs < rhs) != (back < 0.0) || (lhs >= rhs) != is_self_locking(s)) ++sign_mismatch;
  }
  report("2 lead screw", energy <= 1e-12 && round_trip <= 1e-12 && sign_mismatch == 0,
         fmt("energy identity %.1e, round trip %.1e, back-drive sign mismatches %.0f over 100 screws",
             energy, round_trip, sign_mismatch));
}

void statics() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int linkages = 0, points = 0;
  double worst = 0.0;
  while (linkages < 100) {
    LinkageParams p;
    p.p_x = 5 + 15 * u(rng);
    p.l_k = 10 + 15 * u(rng);
    p.l_b = p.l_k + 15 * u(rng);
    p.l_f = 30 + 30 * u(rng);
    p.l_n = 3 + 7 * u(rng);
    std::vector<double> ok;
    for (double x = 0.0; x < p.p_y - p.l_n; x += 0.25) {
      try {
        solve_geometry(p, x);
        ok.push_back(x);
      } catch (const Error&) {
      }
    }
    if (ok.size() < 20) continue;
    ++linkages;
    for (int k = 0; k < 20; ++k) {
      worst = std::max(worst, moment_balance_check(p, ok[k * (ok.size() - 1) / 19], 10 + 90 * u(rng)));
      ++points;
    }
  }
  report("3 statics", worst < 1e-9,
         fmt("worst closed-form vs moment-balance residual %.2e over %.0f linkages x 20 points",
             worst, linkages));
  (void)points;
}

void bruise() {
  const LinkageParams p;
  const double f_nut = anchored_nut_force(p, 18.0, 58.0);
  const auto rows = bruise_curve(p, TravelRange{}, 0.1, f_nut, 30.0);
  bool increasing = true, below = true;
  double prev = -1.0, peak = 0.0;
  for (const auto& r : rows) {
    peak = std::max(peak, r.f_out);
    if (r.f_out > 30.0) below = false;
    if (r.x >= 52.0 - 1e-9 && r.x <= 58.0 + 1e-9) {
      if (!(r.f_out > prev)) increasing = false;
      prev = r.f_out;
    }
  }
  report("4 bruising", increasing && below,
         fmt("F_nut %.2f N; F_out(52)=%.2f, F_out(58)=%.2f, max %.2f N (threshold 30 N)", f_nut,
             f_nut * transmission_ratio(p, 52.0), f_nut * transmission_ratio(p, 58.0), peak));
}

void lp_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_witness = 0.0;
  int queries = 0;
  auto solve = [&](const ContactSet& set, const Eigen::Vector3d& d, const Eigen::Vector3d& q) {
    const PullSolution s = solve_resistible_pull(set, d, q);
    worst_witness = std::max(worst_witness, witness_residual(set, d, q, s));
    ++queries;
    return s.alpha;
  };

  double analytic_gap = 0.0;
  for (double mu : {0.2, 0.5, 1.0}) {
    for (double w_deg : {0.0, 30.0, 60.0, 90.0}) {
      const double n = 20.0, w = deg_to_rad(w_deg);
      oracle::PlanarCase pc{{oracle::pad_on_circle(30, 0, n, mu), oracle::pad_on_circle(30, kPi, n, mu)},
                            std::sin(w), std::cos(w), 0, 0};
      const double a = solve(oracle::to_contacts(pc), {pc.dx, 0, pc.dz}, {0, 0, 0});
      analytic_gap = std::max(analytic_gap, std::abs(a - 2 * mu * n / (2 * mu * std::sin(w) + std::cos(w))));
    }
    oracle::PlanarCase rot{{oracle::pad_on_circle(30, 0, 15, mu), oracle::pad_on_circle(30, kPi, 15, mu)},
                           1, 0, 0, 30};
    const double a = solve(oracle::to_contacts(rot), {1, 0, 0}, {0, 0, 30});
    analytic_gap = std::max(analytic_gap, std::abs(a - 2 * mu * 15 / (2 * mu + 1)));
  }

  std::mt19937_64 rng(2024);
  int compared = 0;
  double worst_rel = 0.0;
  bool oracle_above = false;
  while (compared < 100) {
    const auto pc = oracle::random_planar_case(rng, compared < 50 ? 2 : 3);
    const double sampled = oracle::sampling_oracle(pc, 7 + compared);
    if (sampled < 0.0) continue;
    const double lp = solve(oracle::to_contacts(pc), {pc.dx, 0, pc.dz}, {pc.qx, 0, pc.qz});
    ++compared;
    if (sampled > lp + 1e-6) oracle_above = true;
    if (lp > 1e-9) worst_rel = std::max(worst_rel, std::abs(lp - sampled) / lp);
    else worst_rel = std::max(worst_rel, std::abs(lp - sampled) > 1e-9 ? 1.0 : 0.0);
  }

  GraspModelParams model;
  for (auto mode : {GraspMode::kSuction, GraspMode::kFingers, GraspMode::kDual}) {
    for (auto type : {PullType::kAxial, PullType::kRotational, PullType::kStem}) {
      for (double offset : {0.0, 10.0, 20.0}) {
        for (double angle : {0.0, 45.0, 90.0}) {
          GraspScenario s;
          s.mode = mode;
          s.pull_type = type;
          s.fruit_offset_mm = offset;
          s.pull_angle_deg = angle;
          Eigen::Vector3d d, q;
          pull_geometry(s, &d, &q);
          solve(build_contacts(s, model), d, q);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  report("5 grasp LP", worst_witness <= 1e-6 && analytic_gap <= 1e-6 && worst_rel <= 0.02 &&
                           !oracle_above && secs < 10.0,
         fmt("worst witness residual %.1e over %.0f queries; analytic gap %.1e; sampling oracle gap %.2f%%",
             worst_witness, queries, analytic_gap, 100 * worst_rel) +
             fmt(" over 100 instances; %.2f s", secs));
}

void grasp_reproduction() {
  const auto ref = load_reference_csv(kData + "/grasp_strength_reference.csv");
  CalibrationResult fit;
  try {
    fit = calibrate(ref, GraspModelParams{});
  } catch (const Error& e) {
    report("6 grasp strength", false, std::string("calibration failed: ") + e.what());
    return;
  }
  const GraspModelParams& m = fit.params;
  auto strength = [&](GraspMode mode, double offset, double angle, PullType type) {
    GraspScenario s;
    s.mode = mode;
    s.fruit_offset_mm = offset;
    s.pull_angle_deg = angle;
    s.pull_type = type;
    return predict_strength(s, m);
  };
  std::printf("calibrated: pad %.3f N, mu %.3f, cup tension %.3f N, shear share %.3f, "
              "seal arm %.2f mm; mean relative error %.3f\n",
              m.pad_force_N, m.mu_pad, m.suction_axial_N, m.shear_fraction, m.cup_moment_arm_mm,
              fit.mean_relative_error);

  struct Case {
    std::string name;
    double offset, angle;
    PullType type;
  };
  std::vector<Case> cases;
  for (double o : {0.0, 5.0, 10.0, 15.0, 20.0}) cases.push_back({fmt("offset %.0f mm", o), o, 0, PullType::kAxial});
  for (double a : {15.0, 30.0, 45.0}) cases.push_back({fmt("angle %.0f deg", a), 0, a, PullType::kAxial});
  cases.push_back({"rotational", 0, 0, PullType::kRotational});

  std::string order_fail;
  for (const auto& c : cases) {
    const double s = strength(GraspMode::kSuction, c.offset, c.angle, c.type);
    const double f = strength(GraspMode::kFingers, c.offset, c.angle, c.type);
    const double d = strength(GraspMode::kDual, c.offset, c.angle, c.type);
    std::printf("  %-14s suction %6.2f  fingers %6.2f  dual %6.2f N\n", c.name.c_str(), s, f, d);
    if (!(d >= f - 1e-9 && f >= s - 1e-9)) {
      order_fail += (order_fail.empty() ? "" : ", ") + c.name + fmt(" (S %.2f, F %.2f, D %.2f)", s, f, d);
    }
  }
  report("6a mode ordering", order_fail.empty(),
         order_fail.empty() ? "Dual >= Fingers >= Suction in every scenario"
                            : "ordering broken at " + order_fail);

  bool decreasing = true;
  double prev = 1e300;
  std::string fingers;
  for (double o : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const double f = strength(GraspMode::kFingers, o, 0, PullType::kAxial);
    if (!(f < prev)) decreasing = false;
    prev = f;
    fingers += fmt("%.2f ", f);
  }
  report("6b fingers vs offset", decreasing, "fingers-only over 0..20 mm: " + fingers);

  const double d0 = strength(GraspMode::kDual, 0, 0, PullType::kAxial);
  const double d45 = strength(GraspMode::kDual, 0, 45, PullType::kAxial);
  report("6c dual axial", std::abs(d0 - 34.3) <= 0.2 * 34.3 && std::abs(d45 - 39.1) <= 0.2 * 39.1,
         fmt("dual %.2f N at 0 deg (34.3 +-20%%), %.2f N at 45 deg (39.1 +-20%%)", d0, d45));

  const double sa = strength(GraspMode::kSuction, 0, 0, PullType::kAxial);
  const double sr = strength(GraspMode::kSuction, 0, 0, PullType::kRotational);
  report("6d suction", std::abs(sa - 12.0) <= 0.2 * 12.0 && std::abs(sr - 5.25) <= 0.2 * 5.25,
         fmt("suction axial %.2f N (12 +-20%%), rotational %.2f N (5.25 +-20%%)", sa, sr));

  double min_dual = 1e300;
  for (double o : {0.0, 5.0, 10.0, 15.0, 20.0}) min_dual = std::min(min_dual, strength(GraspMode::kDual, o, 0, PullType::kAxial));
  report("6e dual vs detachment", min_dual > 16.0, fmt("weakest dual over 0..20 mm %.2f N (> 16 N)", min_dual));
}

void campaign() {
  const GripperConfig cfg = load_config(kData + "/gripper_config.json");
  const FingerSweep sweep(build_default_tracks(cfg.pick.sweep_fruit_radius_mm, cfg.pick.sweep_clearance_mm,
                                               cfg.cam.envelope),
                          cfg.pick.sweep_samples);
  CampaignOptions opt;
  opt.trials = 1000;
  opt.seed = 1;
  opt.sweep = &sweep;
  opt.retries = 2;  // up to three attempts per fruit, as in the field protocol

  const auto suction = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kSuction, opt);
  const auto dual = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  bool stable = true;
  for (int threads : {1, 4, 8}) {
    opt.threads = threads;
    for (GraspMode mode : {GraspMode::kSuction, GraspMode::kDual}) {
      const auto again = run_campaign(cfg.field_stats, cfg.grasp_model, mode, opt);
      const auto& base = mode == GraspMode::kDual ? dual : suction;
      for (std::size_t i = 0; i < base.log.size(); ++i) {
        const auto& a = base.log[i];
        const auto& b = again.log[i];
        if (a.fdf_N != b.fdf_N || a.strength_N != b.strength_N || a.outcome != b.outcome ||
            a.attempts != b.attempts)
          stable = false;
      }
    }
  }
  report("7 campaign", suction.success_rate < 0.20 && dual.success_rate >= 0.85 && stable,
         fmt("1000 fruit, up to 3 attempts: suction %.1f%% (< 20%%), dual %.1f%% (>= 85%%)",
             100 * suction.success_rate, 100 * dual.success_rate) +
             (stable ? "; identical across re-runs and 1/4/8 threads" : "; NOT reproducible"));

  opt.threads = 1;
  opt.retries = 0;
  const auto s1 = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kSuction, opt);
  const auto d1 = run_campaign(cfg.field_stats, cfg.grasp_model, GraspMode::kDual, opt);
  std::printf("info: single attempt only: suction %.1f%%, dual %.1f%%\n", 100 * s1.success_rate,
              100 * d1.success_rate);
}

void cam_path() {
  const auto t0 = std::chrono::steady_clock::now();
  const CamTrackSpec spec = build_default_tracks(37.5, 3.0);
  const PathReport r = validate_path(spec, 500);
  const double secs = seconds_since(t0);
  report("8 cam path", !r.interference && r.region_transitions == 1 && !r.region_reverted &&
                           r.max_pin_error < 1e-9 && secs < 1.0,
         fmt("min clearance %.3f mm, transitions %.0f, pin error %.1e mm; %.3f s", r.min_clearance,
             r.region_transitions, r.max_pin_error, secs));
}

void stats_round_trip() {
  const QuantileModel q = summarize({7, 11, 15, 28, 38});
  const bool exact = q.q == std::array<double, 5>{7, 11, 15, 28, 38};
  std::mt19937_64 rng(9);
  std::vector<double> draws(100000);
  for (auto& d : draws) d = q.sample(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  const QuantileModel back = summarize(draws);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(back.q[k] - q.q[k]) / q.q[k]);
  report("9 stats", exact && worst <= 0.02,
         fmt("summary (%.0f, %.0f, %.0f, %.0f, ...) exact; ", q.q[0], q.q[1], q.q[2], q.q[3]) +
             fmt("100k-sample round trip worst %.3f%%", 100 * worst));
}

}  // namespace

int main() {
  transmission();
  lead_screw();
  statics();
  bruise();
  lp_soundness();
  grasp_reproduction();
  campaign();
  cam_path();
  stats_round_trip();
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
