#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pikl/types.hpp"

namespace pikl::csv {

/// RFC-4180 table: mandatory header row, quoted fields with "" escapes,
/// embedded commas/newlines inside quotes, LF or CRLF line endings.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line of each row, for diagnostics.
  std::vector<std::size_t> line_of_row;

  [[nodiscard]] std::size_t cols() const { return header.size(); }
  /// Index of a named column; throws ConfigError naming the column if absent.
  [[nodiscard]] int col(const std::string& name) const;
  /// Numeric cell with a line-numbered error on failure.
  [[nodiscard]] double num(std::size_t row, int col) const;
};

Table read(std::istream& in, const std::string& origin);
Table read_file(const std::string& path);

void write(std::ostream& out, const Table& table);
void write_file(const std::string& path, const Table& table);

/// Quotes a field only when RFC 4180 requires it.
std::string escape(const std::string& field);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double v);

}  // namespace pikl::csv
