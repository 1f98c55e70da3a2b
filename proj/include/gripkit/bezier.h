#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace gripkit {

/// Planar cubic Bezier segment, optionally rational. With unit weights it is
/// the ordinary polynomial curve; non-unit weights let a segment carry an
/// exact circular arc.
struct CubicBezier {
  std::array<Eigen::Vector2d, 4> points;
  std::array<double, 4> weights{1.0, 1.0, 1.0, 1.0};

  Eigen::Vector2d eval(double t) const;
  Eigen::Vector2d derivative(double t) const;
  double length() const;
  CubicBezier translated(const Eigen::Vector2d& offset) const;

  /// Exact arc of the circle (center, radius) from angle a0 to a1, angles
  /// measured in the plane from +x toward +z. Requires |a1 - a0| < pi.
  static CubicBezier circular_arc(const Eigen::Vector2d& center, double radius,
                                  double a0, double a1);
};

/// Chain of segments parameterized on [0, 1], with each segment owning a share
/// of the parameter proportional to its arc length.
class CompositePath {
 public:
  explicit CompositePath(std::vector<CubicBezier> segments);

  Eigen::Vector2d eval(double s) const;
  Eigen::Vector2d derivative(double s) const;
  double length() const { return total_length_; }
  std::size_t segment_count() const { return segments_.size(); }
  /// Parameter where segment i begins.
  double segment_start(std::size_t i) const { return breaks_.at(i); }
  const std::vector<CubicBezier>& segments() const { return segments_; }

 private:
  std::pair<std::size_t, double> locate(double s) const;

  std::vector<CubicBezier> segments_;
  std::vector<double> breaks_;  // size() == segments_.size() + 1
  double total_length_ = 0.0;
};

}  // namespace gripkit
