#pragma once

#include <array>
#include <string>
#include <vector>

namespace gripkit {

/// Five-number summary (min, Q1, median, Q3, max) plus the sample count.
struct QuantileModel {
  std::array<double, 5> q{0.0, 0.0, 0.0, 0.0, 0.0};
  int count = 0;

  double min() const { return q[0]; }
  double median() const { return q[2]; }
  double max() const { return q[4]; }
  /// Throws kInvalidArgument unless the quantiles are finite and nondecreasing.
  void validate() const;
  /// Inverse CDF: linear between (0, min), (.25, Q1), (.5, median), (.75, Q3),
  /// (1, max). u is clamped to [0, 1].
  double sample(double u) const;
};

/// Linear-interpolation quantile of sorted data: position p * (n - 1).
double quantile_sorted(const std::vector<double>& sorted, double p);

/// Five-number summary of the values (any order). Throws kInvalidArgument on
/// an empty input.
QuantileModel summarize(std::vector<double> values);

/// Field-trial variables as summarized per column.
struct TrialStats {
  QuantileModel diameter_mm;
  QuantileModel height_mm;
  QuantileModel weight_g;
  QuantileModel net_fdf_N;
  QuantileModel tangential_fdf_N;
  QuantileModel normal_fdf_N;
  QuantileModel stiffness_Npm;
  QuantileModel offset_mm;

  void validate() const;
};

struct StatsColumn {
  const char* name;
  QuantileModel TrialStats::*field;
};

/// Column names in CSV/JSON order, with the member each maps to.
const std::array<StatsColumn, 8>& stats_columns();

/// Five-number summary per column of a field-trial CSV. Blank cells are
/// missing values. Columns absent from the CSV stay zeroed with count 0.
/// Throws kParseError naming row and column on malformed cells.
TrialStats summarize_csv_text(const std::string& text, const std::string& source = "<csv>");
TrialStats summarize_csv(const std::string& path);

}  // namespace gripkit
