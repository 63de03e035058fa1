#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pikl/types.hpp"

namespace pikl::toml {

/// Minimal TOML subset used by the experiment configs:
///   - `[table]` and `[dotted.table]` headers
///   - `key = value` with bare or dotted keys
///   - values: basic "strings", integers, floats, booleans, and single-line
///     arrays of those scalars
///   - `#` comments
/// Multiline strings, datetimes, inline tables, and arrays-of-tables are
/// rejected with a file:line diagnostic.
struct Value {
  enum class Kind { Str, Int, Float, Bool, Array };
  Kind kind = Kind::Str;
  std::string str;
  std::int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::vector<Value> array;

  [[nodiscard]] double as_number() const;
};

class Doc {
 public:
  static Doc parse(const std::string& text, const std::string& origin);
  static Doc parse_file(const std::string& path);

  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] const Value& at(const std::string& key) const;

  [[nodiscard]] std::string get_str(const std::string& key) const;
  [[nodiscard]] std::string get_str(const std::string& key, const std::string& dflt) const;
  [[nodiscard]] std::int64_t get_int(const std::string& key) const;
  [[nodiscard]] std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
  [[nodiscard]] double get_float(const std::string& key) const;
  [[nodiscard]] double get_float(const std::string& key, double dflt) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool dflt) const;
  [[nodiscard]] std::vector<double> get_float_array(const std::string& key) const;
  [[nodiscard]] std::vector<std::string> get_str_array(const std::string& key) const;

  /// All keys, sorted (deterministic iteration for manifests).
  [[nodiscard]] std::vector<std::string> keys() const;
  [[nodiscard]] std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  /// Rejects any key not listed (typo guard); keys under an allowed entry
  /// ending in '.' are accepted as a group.
  void require_only(const std::vector<std::string>& allowed) const;

  [[nodiscard]] const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, Value> entries_;
  std::string origin_;
};

}  // namespace pikl::toml
