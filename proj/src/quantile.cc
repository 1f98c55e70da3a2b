#include "gripkit/quantile.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gripkit/csv.h"
#include "gripkit/error.h"

namespace gripkit {

void QuantileModel::validate() const {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i]) || (i > 0 && q[i] < q[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "quantiles must be finite and nondecreasing");
    }
  }
}

double QuantileModel::sample(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const double pos = u * 4.0;
  const int i = std::min(static_cast<int>(pos), 3);
  const double frac = pos - i;
  return std::clamp(q[i] + frac * (q[i + 1] - q[i]), q[0], q[4]);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kInvalidArgument, "quantile of empty data");
  const double h = std::clamp(p, 0.0, 1.0) * (sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

QuantileModel summarize(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "no values to summarize");
  std::sort(values.begin(), values.end());
  QuantileModel m;
  const double ps[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i) m.q[i] = quantile_sorted(values, ps[i]);
  m.count = static_cast<int>(values.size());
  return m;
}

const std::array<StatsColumn, 8>& stats_columns() {
  static const std::array<StatsColumn, 8> cols{{
      {"diameter_mm", &TrialStats::diameter_mm},
      {"height_mm", &TrialStats::height_mm},
      {"weight_g", &TrialStats::weight_g},
      {"net_fdf_N", &TrialStats::net_fdf_N},
      {"tangential_fdf_N", &TrialStats::tangential_fdf_N},
      {"normal_fdf_N", &TrialStats::normal_fdf_N},
      {"stiffness_Npm", &TrialStats::stiffness_Npm},
      {"offset_mm", &TrialStats::offset_mm},
  }};
  return cols;
}

void TrialStats::validate() const {
  for (const auto& c : stats_columns()) {
    try {
      (this->*c.field).validate();
    } catch (const Error& e) {
      throw Error(e.code(), std::string(c.name) + ": " + e.what());
    }
  }
}

TrialStats summarize_csv_text(const std::string& text, const std::string& source) {
  const CsvTable t = parse_csv(text, source);
  TrialStats stats;
  bool any = false;
  for (const auto& c : stats_columns()) {
    const auto it = std::find(t.header.begin(), t.header.end(), c.name);
    if (it == t.header.end()) continue;
    any = true;
    const auto col = static_cast<std::size_t>(it - t.header.begin());
    std::vector<double> values;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (const auto v = csv_number(t, r, col, source)) values.push_back(*v);
    }
    if (!values.empty()) stats.*c.field = summarize(std::move(values));
  }
  if (!any) {
    throw Error(ErrorCode::kParseError, source + ": no recognised numeric columns");
  }
  return stats;
}

TrialStats summarize_csv(const std::string& path) {
  return summarize_csv_text(read_text_file(path), path);
}

}  // namespace gripkit
