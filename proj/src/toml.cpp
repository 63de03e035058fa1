#include "pikl/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pikl::toml {
namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  std::size_t line;
  const std::string& origin;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  }
  [[nodiscard]] bool done() const { return i >= s.size(); }
  [[nodiscard]] char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
};

bool bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& c) {
  c.skip_ws();
  std::string key;
  while (!c.done() && (bare_key_char(c.peek()) || c.peek() == '.')) {
    key.push_back(c.s[c.i++]);
  }
  if (key.empty()) c.fail("expected key");
  if (key.front() == '.' || key.back() == '.' || key.find("..") != std::string::npos) {
    c.fail("malformed key '" + key + "'");
  }
  return key;
}

std::string parse_basic_string(Cursor& c) {
  ++c.i;  // opening quote
  std::string out;
  while (true) {
    if (c.done() || c.peek() == '\n') c.fail("unterminated string");
    char ch = c.s[c.i++];
    if (ch == '"') return out;
    if (ch == '\\') {
      if (c.done()) c.fail("unterminated escape");
      char e = c.s[c.i++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        default: c.fail(std::string("unsupported escape \\") + e);
      }
    } else {
      out.push_back(ch);
    }
  }
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
  ++c.i;  // '['
  Value v;
  v.kind = Value::Kind::Array;
  c.skip_ws();
  if (!c.done() && c.peek() == ']') {
    ++c.i;
    return v;
  }
  while (true) {
    c.skip_ws();
    v.array.push_back(parse_value(c));
    c.skip_ws();
    if (c.done() || c.peek() == '\n') c.fail("unterminated array");
    char ch = c.s[c.i++];
    if (ch == ']') return v;
    if (ch != ',') c.fail("expected ',' or ']' in array");
  }
}

Value parse_scalar(Cursor& c) {
  std::size_t start = c.i;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '\n' &&
         c.peek() != '#' && c.peek() != ' ' && c.peek() != '\t') {
    ++c.i;
  }
  std::string tok = c.s.substr(start, c.i - start);
  if (tok.empty()) c.fail("expected value");
  Value v;
  if (tok == "true" || tok == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = (tok == "true");
    return v;
  }
  std::string digits;
  for (char ch : tok) {
    if (ch != '_') digits.push_back(ch);
  }
  bool looks_float = digits.find('.') != std::string::npos ||
                     digits.find('e') != std::string::npos ||
                     digits.find('E') != std::string::npos ||
                     digits.find("inf") != std::string::npos ||
                     digits.find("nan") != std::string::npos;
  char* end = nullptr;
  if (!looks_float) {
    const long long iv = std::strtoll(digits.c_str(), &end, 10);
    if (end && *end == '\0' && end != digits.c_str()) {
      v.kind = Value::Kind::Int;
      v.integer = iv;
      return v;
    }
  }
  end = nullptr;
  const double dv = std::strtod(digits.c_str(), &end);
  if (end && *end == '\0' && end != digits.c_str()) {
    v.kind = Value::Kind::Float;
    v.real = dv;
    return v;
  }
  c.fail("cannot parse value '" + tok + "'");
}

Value parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done() || c.peek() == '\n') c.fail("expected value");
  if (c.peek() == '"') {
    Value v;
    v.kind = Value::Kind::Str;
    v.str = parse_basic_string(c);
    return v;
  }
  if (c.peek() == '[') return parse_array(c);
  if (c.peek() == '{') c.fail("inline tables are not supported");
  if (c.peek() == '\'') c.fail("literal strings are not supported");
  return parse_scalar(c);
}

}  // namespace

double Value::as_number() const {
  if (kind == Kind::Int) return static_cast<double>(integer);
  if (kind == Kind::Float) return real;
  throw ConfigError("value is not numeric");
}

Doc Doc::parse(const std::string& text, const std::string& origin) {
  Doc doc;
  doc.origin_ = origin;
  Cursor c{text, 0, 1, origin};
  std::string table;

  while (!c.done()) {
    c.skip_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '\n') {
      ++c.i;
      ++c.line;
      continue;
    }
    if (ch == '#') {
      while (!c.done() && c.peek() != '\n') ++c.i;
      continue;
    }
    if (ch == '[') {
      ++c.i;
      if (!c.done() && c.peek() == '[') c.fail("arrays of tables are not supported");
      table = parse_key(c);
      c.skip_ws();
      if (c.done() || c.peek() != ']') c.fail("expected ']'");
      ++c.i;
      c.skip_ws();
      if (!c.done() && c.peek() != '\n' && c.peek() != '#') c.fail("junk after table header");
      continue;
    }
    std::string key = parse_key(c);
    c.skip_ws();
    if (c.done() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
    ++c.i;
    Value value = parse_value(c);
    c.skip_ws();
    if (!c.done() && c.peek() != '\n' && c.peek() != '#') c.fail("junk after value for '" + key + "'");
    std::string full = table.empty() ? key : table + "." + key;
    if (doc.entries_.count(full) != 0) c.fail("duplicate key '" + full + "'");
    doc.entries_.emplace(std::move(full), std::move(value));
  }
  return doc;
}

Doc Doc::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Doc::has(const std::string& key) const { return entries_.count(key) != 0; }

const Value& Doc::at(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(origin_ + ": missing required field '" + key + "'");
  }
  return it->second;
}

std::string Doc::get_str(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::Str) throw ConfigError(origin_ + ": field '" + key + "' must be a string");
  return v.str;
}

std::string Doc::get_str(const std::string& key, const std::string& dflt) const {
  return has(key) ? get_str(key) : dflt;
}

std::int64_t Doc::get_int(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::Int) throw ConfigError(origin_ + ": field '" + key + "' must be an integer");
  return v.integer;
}

std::int64_t Doc::get_int(const std::string& key, std::int64_t dflt) const {
  return has(key) ? get_int(key) : dflt;
}

double Doc::get_float(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::Int && v.kind != Value::Kind::Float) {
    throw ConfigError(origin_ + ": field '" + key + "' must be a number");
  }
  return v.as_number();
}

double Doc::get_float(const std::string& key, double dflt) const {
  return has(key) ? get_float(key) : dflt;
}

bool Doc::get_bool(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const Value& v = at(key);
  if (v.kind != Value::Kind::Bool) throw ConfigError(origin_ + ": field '" + key + "' must be a boolean");
  return v.boolean;
}

std::vector<double> Doc::get_float_array(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::Array) throw ConfigError(origin_ + ": field '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.array.size());
  for (const Value& e : v.array) out.push_back(e.as_number());
  return out;
}

std::vector<std::string> Doc::get_str_array(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::Array) throw ConfigError(origin_ + ": field '" + key + "' must be an array");
  std::vector<std::string> out;
  out.reserve(v.array.size());
  for (const Value& e : v.array) {
    if (e.kind != Value::Kind::Str) throw ConfigError(origin_ + ": field '" + key + "' must contain strings");
    out.push_back(e.str);
  }
  return out;
}

std::vector<std::string> Doc::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

std::vector<std::string> Doc::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) {
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  }
  return out;
}

void Doc::require_only(const std::vector<std::string>& allowed) const {
  for (const auto& [k, _] : entries_) {
    bool ok = false;
    for (const std::string& a : allowed) {
      if (a == k || (!a.empty() && a.back() == '.' && k.rfind(a, 0) == 0)) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError(origin_ + ": unknown field '" + k + "'");
  }
}

}  // namespace pikl::toml
