#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace symquot::cli {

/// Bad input data; maps to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  ///< 1-based source line of each row
};

/// Comma-separated text with a header row. Fields are trimmed; blank lines
/// are skipped; quoting is not supported. Throws DataError when a row's
/// field count differs from the header's.
CsvTable read_csv(std::istream& in);

/// 17 significant digits ("%.17g"), enough to round-trip every double.
std::string format_double(double v);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Strict decimal parse of a whole field; DataError names line and column.
double parse_double(const std::string& field, std::size_t line, const std::string& column);

}  // namespace symquot::cli
