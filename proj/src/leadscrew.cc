#include "gripkit/leadscrew.h"

#include <cmath>
#include <string>

#include "gripkit/error.h"
#include "gripkit/units.h"

namespace gripkit {
namespace {

// Raising-torque factor (N m per N of thrust) and its pieces.
struct RaiseTerms {
  double numerator;
  double denominator;
  double d_mean;
};

RaiseTerms raise_terms(const ScrewParams& screw) {
  screw.validate();
  const ScrewDerived d = derive(screw);
  const double sec_phi = 1.0 / std::cos(screw.thread_angle_rad);
  RaiseTerms t{d.lead_mm + kPi * d.d_mean_mm * screw.mu * sec_phi,
               kPi * d.d_mean_mm - screw.mu * d.lead_mm * sec_phi, d.d_mean_mm};
  if (!(t.denominator > 0.0)) {
    throw Error(ErrorCode::kDenominatorNonpositive,
                "pi*d_m - mu*l*sec(phi) = " + std::to_string(t.denominator));
  }
  return t;
}

}  // namespace

ScrewParams ScrewParams::tr8x8() {
  return ScrewParams{2.0, 4, deg_to_rad(14.5), 8.0, 0.2};
}

void ScrewParams::validate() const {
  if (!(pitch_mm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "screw pitch must be > 0");
  }
  if (n_starts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "screw n_starts must be >= 1");
  }
  if (!(thread_angle_rad >= 0.0 && thread_angle_rad < kPi / 2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thread angle must lie in [0, 90) deg");
  }
  if (!(d_outer_mm > pitch_mm / 2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "outer diameter must exceed pitch / 2");
  }
  if (!(mu >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "screw friction must be >= 0");
  }
}

ScrewDerived derive(const ScrewParams& screw) {
  return ScrewDerived{screw.pitch_mm * screw.n_starts,
                      screw.d_outer_mm - screw.pitch_mm / 2};
}

// Inputs are N and mm, so the raw product is N mm; report N m.
double torque_for_thrust(const ScrewParams& screw, double f_nut) {
  if (!(f_nut >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "f_nut must be >= 0");
  }
  const RaiseTerms t = raise_terms(screw);
  return f_nut * t.d_mean / 2.0 * (t.numerator / t.denominator) / 1000.0;
}

double thrust_for_torque(const ScrewParams& screw, double t_motor) {
  if (!(t_motor >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t_motor must be >= 0");
  }
  const RaiseTerms t = raise_terms(screw);
  return t_motor * 1000.0 * 2.0 / t.d_mean * (t.denominator / t.numerator);
}

double back_drive_torque(const ScrewParams& screw, double f_nut) {
  if (!(f_nut >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "f_nut must be >= 0");
  }
  screw.validate();
  const ScrewDerived d = derive(screw);
  const double sec_phi = 1.0 / std::cos(screw.thread_angle_rad);
  const double num = kPi * d.d_mean_mm * screw.mu * sec_phi - d.lead_mm;
  const double den = kPi * d.d_mean_mm + screw.mu * d.lead_mm * sec_phi;
  return f_nut * d.d_mean_mm / 2.0 * (num / den) / 1000.0;
}

bool is_self_locking(const ScrewParams& screw) {
  screw.validate();
  const ScrewDerived d = derive(screw);
  const double sec_phi = 1.0 / std::cos(screw.thread_angle_rad);
  return kPi * d.d_mean_mm * screw.mu * sec_phi - d.lead_mm >= 0.0;
}

}  // namespace gripkit
