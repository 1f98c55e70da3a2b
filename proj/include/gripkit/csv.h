#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gripkit {

/// Plain comma-separated table: no quoting, '#' starts a comment line, blank
/// lines are skipped. Cells may be empty.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // source line of each row, for messages

  /// Column index by name; throws kParseError if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source = "<csv>");
CsvTable read_csv(const std::string& path);

/// Numeric cell; empty cells yield nullopt. Throws kParseError naming the
/// source row and column on malformed numbers.
std::optional<double> csv_number(const CsvTable& table, std::size_t row,
                                 std::size_t col, const std::string& source = "<csv>");

/// printf-style "%.9g".
std::string format_number(double v);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

std::string read_text_file(const std::string& path);

}  // namespace gripkit
