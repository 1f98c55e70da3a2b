#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace gripkit {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

/// maximize c'x  subject to  A x (sense) b,  x >= 0.
struct LinearProgram {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<RowSense> sense;

  int rows() const { return static_cast<int>(a.rows()); }
  int cols() const { return static_cast<int>(a.cols()); }
  void add_row(const Eigen::RowVectorXd& coeffs, RowSense s, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  std::vector<int> basis;  // basic column per tableau row, final phase
};

/// Dense two-phase tableau simplex using Bland's rule. Throws
/// kLpNumericalFailure when the iteration limit is hit, with the basis in the
/// message.
LpResult solve_lp(const LinearProgram& lp, int max_iterations = 20000);

/// Largest violation of lp's constraints (including x >= 0) at x.
double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x);

}  // namespace gripkit
