#include "gripkit/bezier.h"

#include <algorithm>
#include <cmath>

#include "gripkit/error.h"

namespace gripkit {
namespace {

std::array<double, 4> bernstein(double t) {
  const double s = 1.0 - t;
  return {s * s * s, 3.0 * s * s * t, 3.0 * s * t * t, t * t * t};
}

std::array<double, 4> bernstein_derivative(double t) {
  const double s = 1.0 - t;
  return {-3.0 * s * s, 3.0 * s * s - 6.0 * s * t, 6.0 * s * t - 3.0 * t * t,
          3.0 * t * t};
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGaussNodes{
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights{
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

}  // namespace

Eigen::Vector2d CubicBezier::eval(double t) const {
  const auto b = bernstein(t);
  Eigen::Vector2d num = Eigen::Vector2d::Zero();
  double den = 0.0;
  for (int i = 0; i < 4; ++i) {
    num += b[i] * weights[i] * points[i];
    den += b[i] * weights[i];
  }
  return num / den;
}

Eigen::Vector2d CubicBezier::derivative(double t) const {
  const auto b = bernstein(t);
  const auto db = bernstein_derivative(t);
  Eigen::Vector2d num = Eigen::Vector2d::Zero();
  Eigen::Vector2d dnum = Eigen::Vector2d::Zero();
  double den = 0.0;
  double dden = 0.0;
  for (int i = 0; i < 4; ++i) {
    num += b[i] * weights[i] * points[i];
    dnum += db[i] * weights[i] * points[i];
    den += b[i] * weights[i];
    dden += db[i] * weights[i];
  }
  return (dnum * den - num * dden) / (den * den);
}

double CubicBezier::length() const {
  constexpr int kPieces = 8;
  double total = 0.0;
  for (int p = 0; p < kPieces; ++p) {
    const double a = static_cast<double>(p) / kPieces;
    const double half = 0.5 / kPieces;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double t = a + half * (1.0 + kGaussNodes[k]);
      total += half * kGaussWeights[k] * derivative(t).norm();
    }
  }
  return total;
}

CubicBezier CubicBezier::translated(const Eigen::Vector2d& offset) const {
  CubicBezier out = *this;
  for (auto& p : out.points) p += offset;
  return out;
}

// Rational quadratic arc (middle weight cos(span/2)) degree-elevated to cubic.
CubicBezier CubicBezier::circular_arc(const Eigen::Vector2d& center,
                                      double radius, double a0, double a1) {
  const double span = a1 - a0;
  if (!(std::abs(span) < M_PI) || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "arc span must be below 180 deg with positive radius");
  }
  const double half = 0.5 * span;
  const double mid = a0 + half;
  const Eigen::Vector2d p0 = center + radius * Eigen::Vector2d(std::cos(a0), std::sin(a0));
  const Eigen::Vector2d p2 = center + radius * Eigen::Vector2d(std::cos(a1), std::sin(a1));
  const Eigen::Vector2d p1 =
      center + (radius / std::cos(half)) * Eigen::Vector2d(std::cos(mid), std::sin(mid));
  const double w1 = std::cos(half);

  CubicBezier arc;
  arc.weights = {1.0, (1.0 + 2.0 * w1) / 3.0, (2.0 * w1 + 1.0) / 3.0, 1.0};
  arc.points[0] = p0;
  arc.points[1] = (p0 + 2.0 * w1 * p1) / (3.0 * arc.weights[1]);
  arc.points[2] = (2.0 * w1 * p1 + p2) / (3.0 * arc.weights[2]);
  arc.points[3] = p2;
  return arc;
}

CompositePath::CompositePath(std::vector<CubicBezier> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "path needs at least one segment");
  }
  std::vector<double> lengths;
  lengths.reserve(segments_.size());
  for (const auto& seg : segments_) {
    lengths.push_back(seg.length());
    total_length_ += lengths.back();
  }
  if (!(total_length_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "path has zero length");
  }
  breaks_.push_back(0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    acc += lengths[i];
    breaks_.push_back(i + 1 == lengths.size() ? 1.0 : acc / total_length_);
  }
}

std::pair<std::size_t, double> CompositePath::locate(double s) const {
  s = std::clamp(s, 0.0, 1.0);
  std::size_t i = 0;
  while (i + 1 < segments_.size() && s >= breaks_[i + 1]) ++i;
  const double width = breaks_[i + 1] - breaks_[i];
  const double t = width > 0.0 ? (s - breaks_[i]) / width : 0.0;
  return {i, std::clamp(t, 0.0, 1.0)};
}

Eigen::Vector2d CompositePath::eval(double s) const {
  const auto [i, t] = locate(s);
  return segments_[i].eval(t);
}

Eigen::Vector2d CompositePath::derivative(double s) const {
  const auto [i, t] = locate(s);
  return segments_[i].derivative(t) / (breaks_[i + 1] - breaks_[i]);
}

}  // namespace gripkit
