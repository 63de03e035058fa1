#include "pikl/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pikl::csv {
namespace {

// Splits the whole stream into records, honoring quoted fields. Tracks the
// 1-based line number where each record starts.
struct RawParse {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;
};

RawParse parse_records(std::istream& in, const std::string& origin) {
  RawParse out;
  std::string field;
  std::vector<std::string> record;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool any_char = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    out.records.push_back(std::move(record));
    out.lines.push_back(record_line);
    record.clear();
    record_line = line;
  };

  char c;
  while (in.get(c)) {
    any_char = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw ConfigError(origin + ":" + std::to_string(line) +
                            ": quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) {
    throw ConfigError(origin + ":" + std::to_string(line) +
                      ": unterminated quoted field");
  }
  if (!field.empty() || !record.empty() || field_was_quoted) end_record();
  if (!any_char) throw ConfigError(origin + ": empty input, header row required");
  return out;
}

}  // namespace

int Table::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  throw ConfigError("missing CSV column '" + name + "'");
}

double Table::num(std::size_t row, int c) const {
  const std::string& cell = rows.at(row).at(static_cast<std::size_t>(c));
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw ConfigError("line " + std::to_string(line_of_row.at(row)) +
                      ": not a number: '" + cell + "'");
  }
  return v;
}

Table read(std::istream& in, const std::string& origin) {
  RawParse raw = parse_records(in, origin);
  Table t;
  t.header = raw.records.front();
  for (std::size_t r = 1; r < raw.records.size(); ++r) {
    if (raw.records[r].size() != t.header.size()) {
      throw ConfigError(origin + ":" + std::to_string(raw.lines[r]) + ": expected " +
                        std::to_string(t.header.size()) + " fields, got " +
                        std::to_string(raw.records[r].size()));
    }
    t.rows.push_back(std::move(raw.records[r]));
    t.line_of_row.push_back(raw.lines[r]);
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  return read(in, path);
}

std::string escape(const std::string& field) {
  bool needs = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs = true;
      break;
    }
  }
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

void write(std::ostream& out, const Table& table) {
  auto put_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << escape(row[i]);
    }
    out << '\n';
  };
  put_row(table.header);
  for (const auto& row : table.rows) put_row(row);
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV file: " + path);
  write(out, table);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace pikl::csv
