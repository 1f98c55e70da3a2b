#pragma once

#include <string>
#include <vector>

#include "gripkit/grasp_wrench.h"

namespace gripkit {

struct ReferenceRow {
  GraspScenario scenario;
  double strength_N = 0.0;
  double stdev_N = 0.0;  // 0 when the source gives none
};

using ReferenceMeasurements = std::vector<ReferenceRow>;

/// Reads `mode,offset_mm,angle_deg,pull_type,strength_N,stdev_N`.
ReferenceMeasurements parse_reference_csv(const std::string& text,
                                          const std::string& source = "<csv>");
ReferenceMeasurements load_reference_csv(const std::string& path);

struct RowResidual {
  double measured_N = 0.0;
  double predicted_N = 0.0;
  double relative_error = 0.0;  // (predicted - measured) / measured
};

struct CalibrationResult {
  GraspModelParams params;
  std::vector<RowResidual> residuals;
  double loss = 0.0;  // mean squared relative error
  double mean_relative_error = 0.0;
  int iterations = 0;
};

struct CalibrationOptions {
  int max_iterations = 3000;
  double simplex_tolerance = 1e-6;  // simplex size, log-parameter units
  double initial_step = 0.3;
  int restarts = 8;  // fresh simplex rounds from the best point so far
  int threads = 1;
};

/// Residuals of a parameter set against the reference rows.
CalibrationResult evaluate_fit(const ReferenceMeasurements& reference,
                               const GraspModelParams& params, int threads = 1);

/// Nelder-Mead over log(pad_force, mu_pad, suction_axial, shear_fraction,
/// cup_moment_arm). Throws kInvalidArgument on an empty reference and
/// kCalibrationDiverged when the fit stays at >= 50 % mean relative error.
CalibrationResult calibrate(const ReferenceMeasurements& reference,
                            const GraspModelParams& initial,
                            const CalibrationOptions& options = {});

}  // namespace gripkit
