#include "gripkit/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gripkit {
namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 220.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kGap = 30.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<Panel>& panels, bool equal_aspect) {
  Range xr;
  std::vector<Range> yr(panels.size());
  for (std::size_t p = 0; p < panels.size(); ++p) {
    for (const auto& s : panels[p].series) {
      for (double v : s.x) xr.add(v);
      for (double v : s.y) yr[p].add(v);
    }
    for (double h : panels[p].h_lines) yr[p].add(h);
    yr[p].finish();
  }
  xr.finish();

  const double plot_w = kWidth - kLeft - kRight;
  double panel_h = kPanelHeight;
  if (equal_aspect && panels.size() == 1) {
    panel_h = plot_w * (yr[0].hi - yr[0].lo) / (xr.hi - xr.lo);
  }
  const double height = kTop + panels.size() * (panel_h + kGap) + 30.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double top = kTop + p * (panel_h + kGap);
    const Range& y = yr[p];
    auto px = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double v) { return top + panel_h - (v - y.lo) / (y.hi - y.lo) * panel_h; };

    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(panel_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double v = y.lo + k * (y.hi - y.lo) / 4;
      svg << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(py(v) + 4)
          << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }
    svg << "<text transform=\"translate(14," << num(top + panel_h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(panels[p].y_label) << "</text>\n";
    for (double h : panels[p].h_lines) {
      svg << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + plot_w) << "\" y1=\""
          << num(py(h)) << "\" y2=\"" << num(py(h))
          << "\" stroke=\"red\" stroke-dasharray=\"2,3\"/>\n";
    }
    double legend_y = top + 14;
    for (const auto& s : panels[p].series) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\""
          << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      const std::size_t n = std::min(s.x.size(), s.y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      svg << "\"/>\n";
      if (!s.label.empty()) {
        svg << "<text x=\"" << num(kLeft + plot_w - 6) << "\" y=\"" << num(legend_y)
            << "\" text-anchor=\"end\" fill=\"" << s.color << "\">" << escape(s.label)
            << "</text>\n";
        legend_y += 14;
      }
    }
    if (p + 1 == panels.size()) {
      for (int k = 0; k <= 5; ++k) {
        const double v = xr.lo + k * (xr.hi - xr.lo) / 5;
        svg << "<text x=\"" << num(px(v)) << "\" y=\"" << num(top + panel_h + 14)
            << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
      }
      svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(top + panel_h + 28)
          << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gripkit
