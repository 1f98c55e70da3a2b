#pragma once

#include <string>
#include <vector>

namespace gripkit {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "black";
  bool dashed = false;
};

struct Panel {
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> h_lines;  // horizontal reference lines, drawn dotted
};

/// Panels stacked vertically over one shared x axis. With equal_aspect a
/// single panel keeps x and y at the same scale (used for track drawings).
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<Panel>& panels, bool equal_aspect = false);

}  // namespace gripkit
