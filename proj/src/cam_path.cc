#include "gripkit/cam_path.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gripkit/error.h"
#include "gripkit/parallel.h"

namespace gripkit {
namespace {

constexpr double kPinTolerance = 1e-9;
constexpr double kNodeTolerance = 1e-12;
constexpr int kScanIntervals = 256;

Eigen::Vector2d axis_dir(double tilt) {
  return {std::sin(tilt), std::cos(tilt)};
}

double angle_of(const Eigen::Vector2d& v) { return std::atan2(v.y(), v.x()); }

double distance_to_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                           const Eigen::Vector2d& b, Eigen::Vector2d* closest) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Eigen::Vector2d q = a + t * ab;
  if (closest) *closest = q;
  return (p - q).norm();
}

struct Paths {
  CompositePath outer;
  CompositePath inner;
};

Paths make_paths(const CamTrackSpec& spec) {
  return {CompositePath(spec.outer_path), CompositePath(spec.inner_path)};
}

FingerPose solve_pose(const CamTrackSpec& spec, const Paths& paths, double u) {
  const double s = spec.pin_separation_mm;
  const double stop = spec.inner_hard_stop;
  const Eigen::Vector2d outer = paths.outer.eval(u);
  auto gap = [&](double tau) { return (paths.inner.eval(tau) - outer).norm() - s; };

  FingerPose pose;
  pose.outer_pin = outer;

  double tau = stop;
  const double at_stop = gap(stop);
  if (std::abs(at_stop) <= kPinTolerance) {
    pose.region = Region::kClamping;
  } else {
    // Scan for sign changes and keep the bracket nearest the hard stop.
    double lo = -1.0;
    double hi = -1.0;
    double prev_t = 0.0;
    double prev_f = gap(0.0);
    if (std::abs(prev_f) <= kNodeTolerance) lo = hi = 0.0;
    for (int k = 1; k <= kScanIntervals; ++k) {
      const double t = stop * k / kScanIntervals;
      const double f = t == stop ? at_stop : gap(t);
      if (std::abs(f) <= kNodeTolerance) {
        lo = hi = t;
      } else if ((prev_f < 0.0) != (f < 0.0)) {
        lo = prev_t;
        hi = t;
      }
      prev_t = t;
      prev_f = f;
    }
    if (lo < 0.0) {
      std::ostringstream msg;
      msg << "no inner-path point at pin separation " << s << " mm for u=" << u;
      throw Error(ErrorCode::kPoseUnsolvable, msg.str());
    }
    if (lo != hi) {
      double f_lo = gap(lo);
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = gap(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
    }
    tau = std::abs(gap(lo)) <= std::abs(gap(hi)) ? lo : hi;
    pose.region = Region::kSweeping;
  }

  pose.inner_param = tau;
  pose.inner_pin = paths.inner.eval(tau);
  const double err = std::abs((pose.inner_pin - outer).norm() - s);
  if (!(err < kPinTolerance)) {
    std::ostringstream msg;
    msg << "pin separation residual " << err << " mm at u=" << u;
    throw Error(ErrorCode::kPoseUnsolvable, msg.str());
  }
  const Eigen::Vector2d d = (pose.inner_pin - outer) / s;
  pose.pad_tip = pose.inner_pin + spec.finger_length_mm * d;
  pose.rotation = std::atan2(d.x(), d.y());
  return pose;
}

}  // namespace

const char* to_string(Region region) {
  return region == Region::kClamping ? "Clamping" : "Sweeping";
}

void CamTrackSpec::validate() const {
  if (outer_path.empty() || inner_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cam paths must not be empty");
  }
  if (!(pin_separation_mm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "pin separation must be positive");
  }
  if (!(inner_hard_stop > 0.0 && inner_hard_stop <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inner hard stop must lie in (0, 1]");
  }
  if (!(fruit_radius_mm > 0.0) || !(finger_length_mm > 0.0) ||
      !(pad_half_width_mm >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fruit radius and finger length must be positive");
  }
}

double finger_clearance(const CamTrackSpec& spec, const FingerPose& pose) {
  return distance_to_segment(spec.fruit_center_mm, pose.inner_pin, pose.pad_tip,
                             nullptr) -
         spec.pad_half_width_mm - spec.fruit_radius_mm;
}

FingerPose solve_finger_pose(const CamTrackSpec& spec, double u) {
  spec.validate();
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "u must lie in [0, 1]");
  }
  return solve_pose(spec, make_paths(spec), u);
}

PathReport validate_path(const CamTrackSpec& spec, int samples, int threads,
                         std::vector<FingerPose>* poses) {
  spec.validate();
  if (samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "validate_path needs at least 2 samples");
  }
  const Paths paths = make_paths(spec);
  std::vector<FingerPose> sampled(static_cast<std::size_t>(samples));
  parallel_for(sampled.size(), threads, [&](std::size_t i) {
    const double u = static_cast<double>(i) / (samples - 1);
    sampled[i] = solve_pose(spec, paths, u);
  });

  PathReport report;
  report.samples = samples;
  report.min_clearance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const FingerPose& p = sampled[i];
    if (p.region == Region::kSweeping) {
      report.min_clearance = std::min(report.min_clearance, finger_clearance(spec, p));
    }
    report.max_sweep_radius = std::max(report.max_sweep_radius, p.pad_tip.x());
    report.max_pin_error = std::max(
        report.max_pin_error,
        std::abs((p.inner_pin - p.outer_pin).norm() - spec.pin_separation_mm));
    if (i > 0 && sampled[i - 1].region != p.region) {
      ++report.region_transitions;
      if (p.region == Region::kSweeping) report.region_reverted = true;
    }
  }

  Eigen::Vector2d contact;
  const FingerPose& last = sampled.back();
  distance_to_segment(spec.fruit_center_mm, last.inner_pin, last.pad_tip, &contact);
  const Eigen::Vector2d rel = contact - spec.fruit_center_mm;
  report.clamp_contact_latitude =
      rel.norm() > 0.0 ? std::asin(std::clamp(-rel.y() / rel.norm(), -1.0, 1.0)) : 0.0;
  report.latitude_in_band =
      std::abs(report.clamp_contact_latitude) <= spec.contact_latitude_band_rad + 1e-12;
  report.interference = report.min_clearance < 0.0;
  if (poses) *poses = std::move(sampled);
  return report;
}

CamTrackSpec build_default_tracks(double fruit_radius_mm, double clearance_mm,
                                  const PalmEnvelope& env) {
  if (!(fruit_radius_mm > 0.0) || !(clearance_mm >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fruit radius must be positive and clearance non-negative");
  }
  const double r = fruit_radius_mm;
  const double w = env.pad_half_width_mm;
  const double s = env.pin_separation_mm;
  const Eigen::Vector2d center(0.0, env.palm_plane_z_mm + r);
  const double rho = r + w + clearance_mm + env.sweep_margin_mm;
  const Eigen::Vector2d tip_final = center + Eigen::Vector2d(r + w, 0.0);

  std::string last_failure = "no final tilt tried";
  for (double tilt_deg : {-10.0, -5.0, -15.0, -20.0, 0.0}) {
    const double tilt_f = deg_to_rad(tilt_deg);
    const Eigen::Vector2d d_f = axis_dir(tilt_f);
    const double length =
        (tip_final.y() - (env.palm_plane_z_mm - env.hard_stop_depth_mm)) / d_f.y();
    if (length > env.max_finger_length_mm) {
      std::ostringstream msg;
      msg << "finger length " << length << " mm exceeds envelope maximum "
          << env.max_finger_length_mm << " mm";
      last_failure = msg.str();
      continue;
    }
    const Eigen::Vector2d hinge = tip_final - length * d_f;

    // First tilt above the final one where the tip leaves the sweep circle.
    auto tip_gap = [&](double tilt) {
      return (hinge + length * axis_dir(tilt) - center).norm() - rho;
    };
    double lo = tilt_f;
    double hi = -1.0;
    const double step = deg_to_rad(0.1);
    for (double b = tilt_f + step; b <= tilt_f + deg_to_rad(90.0); b += step) {
      if (tip_gap(b) >= 0.0) {
        hi = b;
        break;
      }
      lo = b;
    }
    if (hi < 0.0) {
      last_failure = "clamp rotation never reaches the sweep radius";
      continue;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tip_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    const double tilt_0 = hi;
    const Eigen::Vector2d d0 = axis_dir(tilt_0);
    const Eigen::Vector2d tip_sweep_end = hinge + length * d0;

    const double start_z = env.palm_plane_z_mm - env.retract_depth_mm;
    const double sin_start = (start_z - center.y()) / rho;
    if (std::abs(sin_start) >= 1.0) {
      last_failure = "retracted start lies outside the sweep circle";
      continue;
    }
    const double phi_0 = std::asin(sin_start);
    const double phi_1 = angle_of(tip_sweep_end - center);
    const double sweep_span = phi_1 - phi_0;
    if (!(sweep_span > 0.0) || sweep_span > deg_to_rad(100.0)) {
      std::ostringstream msg;
      msg << "sweep arc span " << rad_to_deg(sweep_span) << " deg outside (0, 100]";
      last_failure = msg.str();
      continue;
    }

    const CubicBezier tip_arc = CubicBezier::circular_arc(center, rho, phi_0, phi_1);
    CamTrackSpec spec;
    spec.inner_path = {tip_arc.translated(-length * d0)};
    spec.outer_path = {
        tip_arc.translated(-(length + s) * d0),
        CubicBezier::circular_arc(hinge, s, angle_of(-d0), angle_of(-d_f))};
    spec.pin_separation_mm = s;
    spec.inner_hard_stop = 1.0;
    spec.fruit_radius_mm = r;
    spec.fruit_center_mm = center;
    spec.palm_plane_z_mm = env.palm_plane_z_mm;
    spec.finger_length_mm = length;
    spec.pad_half_width_mm = w;
    spec.contact_latitude_band_rad = env.contact_latitude_band_rad;

    // Envelope: tracks stay behind the palm and inside the housing radius.
    bool inside = true;
    const Paths paths = make_paths(spec);
    for (int k = 0; k <= 200 && inside; ++k) {
      const double t = k / 200.0;
      for (const auto& p : {paths.outer.eval(t), paths.inner.eval(t)}) {
        if (p.y() > env.palm_plane_z_mm + 1e-9 || std::abs(p.x()) > env.max_radius_mm) {
          inside = false;
        }
      }
    }
    if (!inside || rho + center.x() > env.max_radius_mm) {
      last_failure = "tracks leave the palm envelope";
      continue;
    }

    const PathReport report = validate_path(spec, 400);
    if (report.min_clearance < clearance_mm) {
      std::ostringstream msg;
      msg << "sweep clearance " << report.min_clearance << " mm below " << clearance_mm;
      last_failure = msg.str();
      continue;
    }
    if (report.region_transitions != 1 || report.region_reverted) {
      last_failure = "region sequence is not a single sweep-to-clamp transition";
      continue;
    }
    if (!report.latitude_in_band) {
      last_failure = "final contact latitude outside the configured band";
      continue;
    }
    return spec;
  }
  throw Error(ErrorCode::kSynthesisFailed, last_failure);
}

}  // namespace gripkit
