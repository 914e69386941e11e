#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/observables.hpp"

namespace qwalk::harness {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that reads back to the same double: 17 significant digits.
/// NaN is written as an empty cell.
std::string format_double(double value);

/// Comma-separated rows with LF endings; cells containing a comma, quote or
/// newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  void end_row();
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  bool first_ = true;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws CsvError if absent.
  std::size_t column_index(std::string_view name) const;
  /// Numeric column; empty cells read as NaN.
  std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Builds a dense TimeSeries from the `t` column and a value column.
TimeSeries series_from_table(const CsvTable& table, std::string_view column);

}  // namespace qwalk::harness
