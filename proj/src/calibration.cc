#include "gripkit/calibration.h"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "gripkit/csv.h"
#include "gripkit/error.h"
#include "gripkit/parallel.h"

namespace gripkit {
namespace {

constexpr int kFitDims = 5;
constexpr double kPenalty = 1e6;

std::array<double, kFitDims> pack(const GraspModelParams& p) {
  return {p.pad_force_N, p.mu_pad, p.suction_axial_N, p.shear_fraction,
          p.cup_moment_arm_mm};
}

GraspModelParams unpack(const GraspModelParams& base, const double* logs) {
  GraspModelParams p = base;
  p.pad_force_N = std::exp(logs[0]);
  p.mu_pad = std::exp(logs[1]);
  p.suction_axial_N = std::exp(logs[2]);
  p.shear_fraction = std::exp(logs[3]);
  p.cup_moment_arm_mm = std::exp(logs[4]);
  return p;
}

struct FitContext {
  const ReferenceMeasurements* reference;
  GraspModelParams base;
  int threads;
};

double loss_of(const ReferenceMeasurements& reference, const GraspModelParams& p,
               int threads) {
  std::vector<double> sq(reference.size());
  parallel_for(reference.size(), threads, [&](std::size_t i) {
    const double pred = predict_strength(reference[i].scenario, p);
    const double rel = (pred - reference[i].strength_N) / reference[i].strength_N;
    sq[i] = rel * rel;
  });
  double sum = 0.0;
  for (double v : sq) sum += v;
  return sum / static_cast<double>(sq.size());
}

double gsl_loss(const gsl_vector* x, void* raw) {
  const auto* ctx = static_cast<const FitContext*>(raw);
  double logs[kFitDims];
  for (int i = 0; i < kFitDims; ++i) logs[i] = gsl_vector_get(x, i);
  // Shear fraction is capped at 1: anything above costs a steep wall.
  if (logs[3] > 0.0) return kPenalty * (1.0 + logs[3]);
  try {
    return loss_of(*ctx->reference, unpack(ctx->base, logs), ctx->threads);
  } catch (const Error&) {
    return kPenalty;
  }
}

void check_reference(const ReferenceMeasurements& reference) {
  if (reference.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "reference measurements are empty");
  }
  for (const auto& row : reference) {
    if (!(row.strength_N > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "reference strengths must be positive");
    }
  }
}

}  // namespace

ReferenceMeasurements parse_reference_csv(const std::string& text, const std::string& source) {
  const CsvTable t = parse_csv(text, source);
  const auto c_mode = t.column("mode");
  const auto c_off = t.column("offset_mm");
  const auto c_ang = t.column("angle_deg");
  const auto c_type = t.column("pull_type");
  const auto c_str = t.column("strength_N");
  const auto c_sd = t.column("stdev_N");
  ReferenceMeasurements out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ReferenceRow row;
    try {
      row.scenario.mode = parse_grasp_mode(t.rows[r][c_mode]);
      row.scenario.pull_type = parse_pull_type(t.rows[r][c_type]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << source << " line " << t.line_numbers[r] << ": " << e.what();
      throw Error(ErrorCode::kParseError, msg.str());
    }
    auto required = [&](std::size_t c) {
      const auto v = csv_number(t, r, c, source);
      if (!v) {
        std::ostringstream msg;
        msg << source << " line " << t.line_numbers[r] << ": empty '" << t.header[c] << "'";
        throw Error(ErrorCode::kParseError, msg.str());
      }
      return *v;
    };
    row.scenario.fruit_offset_mm = required(c_off);
    row.scenario.pull_angle_deg = required(c_ang);
    row.strength_N = required(c_str);
    row.stdev_N = csv_number(t, r, c_sd, source).value_or(0.0);
    if (!(row.strength_N > 0.0)) {
      std::ostringstream msg;
      msg << source << " line " << t.line_numbers[r] << ": strength must be positive";
      throw Error(ErrorCode::kParseError, msg.str());
    }
    out.push_back(row);
  }
  return out;
}

ReferenceMeasurements load_reference_csv(const std::string& path) {
  return parse_reference_csv(read_text_file(path), path);
}

CalibrationResult evaluate_fit(const ReferenceMeasurements& reference,
                               const GraspModelParams& params, int threads) {
  check_reference(reference);
  CalibrationResult out;
  out.params = params;
  out.residuals.resize(reference.size());
  parallel_for(reference.size(), threads, [&](std::size_t i) {
    RowResidual& r = out.residuals[i];
    r.measured_N = reference[i].strength_N;
    r.predicted_N = predict_strength(reference[i].scenario, params);
    r.relative_error = (r.predicted_N - r.measured_N) / r.measured_N;
  });
  double sq = 0.0;
  double abs_sum = 0.0;
  for (const auto& r : out.residuals) {
    sq += r.relative_error * r.relative_error;
    abs_sum += std::abs(r.relative_error);
  }
  out.loss = sq / reference.size();
  out.mean_relative_error = abs_sum / reference.size();
  return out;
}

CalibrationResult calibrate(const ReferenceMeasurements& reference,
                            const GraspModelParams& initial,
                            const CalibrationOptions& options) {
  check_reference(reference);
  initial.validate();
  const auto start = pack(initial);
  for (double v : start) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "fitted parameters must start positive");
    }
  }

  CalibrationResult first = evaluate_fit(reference, initial, options.threads);
  if (first.loss < 1e-20) return first;

  FitContext ctx{&reference, initial, options.threads};
  gsl_multimin_function fn{&gsl_loss, kFitDims, &ctx};
  using VecPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  VecPtr x(gsl_vector_alloc(kFitDims), &gsl_vector_free);
  VecPtr step(gsl_vector_alloc(kFitDims), &gsl_vector_free);
  for (int i = 0; i < kFitDims; ++i) {
    gsl_vector_set(x.get(), i, std::log(start[i]));
    gsl_vector_set(step.get(), i, options.initial_step);
  }
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kFitDims),
      &gsl_multimin_fminimizer_free);
  gsl_error_handler_t* old_handler = gsl_set_error_handler_off();

  // A collapsed simplex can stall away from the minimum; restart from the best
  // vertex with a fresh simplex until a restart stops paying off.
  int iter = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round <= options.restarts; ++round) {
    gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && iter < options.max_iterations) {
      ++iter;
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()),
                                      options.simplex_tolerance);
    }
    gsl_vector_memcpy(x.get(), solver->x);
    const double value = solver->fval;
    const bool stalled = best - value < 1e-10 * std::max(1.0, value);
    best = std::min(best, value);
    if (stalled || iter >= options.max_iterations) break;
  }
  gsl_set_error_handler(old_handler);

  double logs[kFitDims];
  for (int i = 0; i < kFitDims; ++i) logs[i] = gsl_vector_get(solver->x, i);
  logs[3] = std::min(logs[3], 0.0);
  CalibrationResult out = evaluate_fit(reference, unpack(initial, logs), options.threads);
  out.iterations = iter;
  if (!(out.mean_relative_error < 0.5)) {
    std::ostringstream msg;
    msg << "best fit leaves mean relative error " << out.mean_relative_error;
    throw Error(ErrorCode::kCalibrationDiverged, msg.str());
  }
  return out;
}

}  // namespace gripkit
