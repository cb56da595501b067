#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freqval/game_spec.hpp"

namespace freqval {

// Raised on malformed game-spec files; the message cites file and line.
class spec_parse_error : public std::runtime_error {
 public:
  explicit spec_parse_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] inline void parse_fail(const std::string& name, int line,
                                    const std::string& msg) {
  throw spec_parse_error(name + ":" + std::to_string(line) + ": " + msg);
}

inline std::vector<double> parse_list(const std::string& name, int line,
                                      const std::string& field,
                                      const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    parse_fail(name, line, "field '" + field + "' expects a bracketed list");
  std::string body = t.substr(1, t.size() - 2);
  for (char& ch : body)
    if (ch == ',') ch = ' ';
  std::istringstream in(body);
  std::vector<double> out;
  double x;
  while (in >> x) out.push_back(x);
  std::string rest;
  if (in.fail() && !in.eof()) {
    in.clear();
    in >> rest;
    parse_fail(name, line, "field '" + field + "' has a non-numeric entry '" + rest + "'");
  }
  if (out.empty())
    parse_fail(name, line, "field '" + field + "' is empty");
  return out;
}

inline long long parse_int(const std::string& name, int line,
                           const std::string& field, const std::string& text) {
  std::istringstream in(trim(text));
  long long v;
  if (!(in >> v) || !(in >> std::ws).eof())
    parse_fail(name, line, "field '" + field + "' expects an integer");
  return v;
}

}  // namespace detail

// Game-spec file format: `rows = <int>`, `cols = <int>`, and `A`, `H` as
// row-major flat lists in brackets. `#` starts a comment. Dimension
// mismatches are rejected with a file:line diagnostic naming the field.
inline GameSpec parse_game_spec(std::istream& in, const std::string& name) {
  std::optional<long long> rows, cols;
  std::optional<std::vector<double>> a_vals, h_vals;
  int a_line = 0, h_line = 0, rows_line = 0, cols_line = 0;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      detail::parse_fail(name, lineno, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    if (key == "rows") {
      rows = detail::parse_int(name, lineno, key, value);
      rows_line = lineno;
    } else if (key == "cols") {
      cols = detail::parse_int(name, lineno, key, value);
      cols_line = lineno;
    } else if (key == "A") {
      a_vals = detail::parse_list(name, lineno, key, value);
      a_line = lineno;
    } else if (key == "H") {
      h_vals = detail::parse_list(name, lineno, key, value);
      h_line = lineno;
    } else {
      detail::parse_fail(name, lineno, "unknown field '" + key + "'");
    }
  }

  if (!rows) detail::parse_fail(name, lineno, "missing field 'rows'");
  if (!cols) detail::parse_fail(name, lineno, "missing field 'cols'");
  if (!a_vals) detail::parse_fail(name, lineno, "missing field 'A'");
  if (!h_vals) detail::parse_fail(name, lineno, "missing field 'H'");
  if (*rows < 1) detail::parse_fail(name, rows_line, "field 'rows' must be >= 1");
  if (*cols < 1) detail::parse_fail(name, cols_line, "field 'cols' must be >= 1");
  const std::size_t want = static_cast<std::size_t>(*rows * *cols);
  if (a_vals->size() != want)
    detail::parse_fail(name, a_line,
                       "field 'A' has " + std::to_string(a_vals->size()) +
                           " entries, expected rows*cols = " + std::to_string(want));
  if (h_vals->size() != want)
    detail::parse_fail(name, h_line,
                       "field 'H' has " + std::to_string(h_vals->size()) +
                           " entries, expected rows*cols = " + std::to_string(want));
  return GameSpec(Matrix(static_cast<int>(*rows), static_cast<int>(*cols), *a_vals),
                  Matrix(static_cast<int>(*rows), static_cast<int>(*cols), *h_vals));
}

inline GameSpec load_game_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_parse_error(path + ": cannot open file");
  return parse_game_spec(in, path);
}

}  // namespace freqval
