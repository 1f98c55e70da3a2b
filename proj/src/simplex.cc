#include "gripkit/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gripkit/error.h"

namespace gripkit {
namespace {

constexpr double kEps = 1e-10;

class Tableau {
 public:
  // Columns: structural | slack/surplus | artificial | rhs.
  Tableau(const LinearProgram& lp) : m_(lp.rows()), n_(lp.cols()) {
    int slacks = 0;
    int artificials = 0;
    for (int i = 0; i < m_; ++i) {
      RowSense s = lp.sense[i];
      if (lp.b(i) < 0.0) s = flip(s);
      if (s != RowSense::kEqual) ++slacks;
      if (s != RowSense::kLessEqual) ++artificials;
    }
    slack0_ = n_;
    art0_ = n_ + slacks;
    width_ = art0_ + artificials;
    t_ = Eigen::MatrixXd::Zero(m_ + 1, width_ + 1);
    basis_.assign(m_, -1);

    int next_slack = slack0_;
    int next_art = art0_;
    for (int i = 0; i < m_; ++i) {
      double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
      RowSense s = sign < 0.0 ? flip(lp.sense[i]) : lp.sense[i];
      t_.row(i).head(n_) = sign * lp.a.row(i);
      t_(i, width_) = sign * lp.b(i);
      if (s == RowSense::kLessEqual) {
        t_(i, next_slack) = 1.0;
        basis_[i] = next_slack++;
      } else {
        if (s == RowSense::kGreaterEqual) t_(i, next_slack++) = -1.0;
        t_(i, next_art) = 1.0;
        basis_[i] = next_art++;
      }
    }
  }

  // Phase 1: minimize the artificial sum. Returns false if infeasible.
  bool phase_one(int& iterations, int max_iterations) {
    if (art0_ == width_) return true;
    // Objective row holds reduced costs of "maximize -sum(artificials)".
    t_.row(m_).setZero();
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= art0_) t_.row(m_) -= t_.row(i);
    }
    for (int j = art0_; j < width_; ++j) t_(m_, j) = 0.0;
    run(width_, iterations, max_iterations);
    if (-t_(m_, width_) > 1e-8 * std::max(1.0, rhs_scale())) return false;

    // Pivot remaining zero-level artificials out, or drop their rows.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art0_) continue;
      int col = -1;
      for (int j = 0; j < art0_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        t_.row(i).setZero();
        basis_[i] = -1;
      }
    }
    return true;
  }

  // Phase 2 on the original objective; artificial columns are barred.
  bool phase_two(const Eigen::VectorXd& c, int& iterations, int max_iterations) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = -c.transpose();
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (b >= 0 && b < n_ && c(b) != 0.0) t_.row(m_) += c(b) * t_.row(i);
    }
    return run(art0_, iterations, max_iterations);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < n_) x(basis_[i]) = std::max(0.0, t_(i, width_));
    }
    return x;
  }

  const std::vector<int>& basis() const { return basis_; }

 private:
  static RowSense flip(RowSense s) {
    if (s == RowSense::kLessEqual) return RowSense::kGreaterEqual;
    if (s == RowSense::kGreaterEqual) return RowSense::kLessEqual;
    return s;
  }

  double rhs_scale() const {
    return m_ > 0 ? t_.col(width_).head(m_).cwiseAbs().maxCoeff() : 1.0;
  }

  // Returns false on unboundedness.
  bool run(int allowed_cols, int& iterations, int max_iterations) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(m_, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < 0 || t_(i, enter) <= kEps) continue;
        const double ratio = t_(i, width_) / t_(i, enter);
        if (ratio < best - kEps ||
            (ratio <= best + kEps && leave >= 0 && basis_[i] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      if (++iterations > max_iterations) {
        std::ostringstream msg;
        msg << "simplex hit " << max_iterations << " iterations; basis [";
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          msg << (i ? " " : "") << basis_[i];
        }
        msg << "]";
        throw Error(ErrorCode::kLpNumericalFailure, msg.str());
      }
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  int m_;
  int n_;
  int slack0_ = 0;
  int art0_ = 0;
  int width_ = 0;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

void LinearProgram::add_row(const Eigen::RowVectorXd& coeffs, RowSense s, double rhs) {
  if (a.cols() == 0 && a.rows() == 0) a.resize(0, coeffs.size());
  if (coeffs.size() != a.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "LP row width mismatch");
  }
  a.conservativeResize(a.rows() + 1, Eigen::NoChange);
  a.row(a.rows() - 1) = coeffs;
  b.conservativeResize(b.size() + 1);
  b(b.size() - 1) = rhs;
  sense.push_back(s);
}

LpResult solve_lp(const LinearProgram& lp, int max_iterations) {
  if (lp.b.size() != lp.rows() || static_cast<int>(lp.sense.size()) != lp.rows() ||
      lp.c.size() != lp.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "LP dimensions are inconsistent");
  }
  if (!lp.a.allFinite() || !lp.b.allFinite() || !lp.c.allFinite()) {
    throw Error(ErrorCode::kLpNumericalFailure, "LP data contain non-finite values");
  }
  Tableau tab(lp);
  LpResult result;
  if (!tab.phase_one(result.iterations, max_iterations)) {
    result.status = LpStatus::kInfeasible;
    result.basis = tab.basis();
    return result;
  }
  const bool bounded = tab.phase_two(lp.c, result.iterations, max_iterations);
  result.basis = tab.basis();
  result.x = tab.solution();
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    result.objective = std::numeric_limits<double>::infinity();
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = lp.c.dot(result.x);
  return result;
}

double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double worst = std::max(0.0, -x.minCoeff());
  const Eigen::VectorXd ax = lp.a * x;
  for (int i = 0; i < lp.rows(); ++i) {
    const double r = ax(i) - lp.b(i);
    switch (lp.sense[i]) {
      case RowSense::kLessEqual: worst = std::max(worst, r); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, -r); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(r)); break;
    }
  }
  return worst;
}

}  // namespace gripkit
