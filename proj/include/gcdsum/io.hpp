#pragma once

// Set files, construction export, and CSV/JSON report formatting.

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gcdsum/errors.hpp"
#include "gcdsum/extremal.hpp"
#include "gcdsum/integer.hpp"
#include "gcdsum/integer_set.hpp"

namespace gcdsum {

/// Malformed input file; carries the 1-based line number.
class SetFileError : public DomainError {
 public:
  SetFileError(const std::string& source, std::size_t line, const std::string& what)
      : DomainError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One decimal integer per line; `#` lines and blank lines are skipped.
inline IntegerSet parse_set_stream(std::istream& in, const std::string& source = "<input>") {
  std::vector<std::pair<Nat, std::size_t>> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    while (!v.empty() && (v.back() == '\r' || v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    if (v.empty() || v.front() == '#') continue;
    if (v.front() == '-') throw SetFileError(source, lineno, "negative value '" + std::string(v) + "'");
    const auto parsed = parse_nat(v);
    if (!parsed) throw SetFileError(source, lineno, "not a decimal integer: '" + std::string(v) + "'");
    if (*parsed == 0) throw SetFileError(source, lineno, "zero is not a positive integer");
    values.emplace_back(*parsed, lineno);
  }
  std::map<Nat, std::size_t> seen;
  for (const auto& [v, ln] : values) {
    if (!seen.emplace(v, ln).second) {
      throw SetFileError(source, ln, "duplicate value " + to_string(v) + " (first seen on line " +
                                         std::to_string(seen[v]) + ")");
    }
  }
  std::vector<Nat> out;
  out.reserve(seen.size());
  for (const auto& [v, ln] : seen) out.push_back(v);
  return IntegerSet::from_sorted(std::move(out));
}

inline IntegerSet parse_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open set file '" + path + "'");
  return parse_set_stream(in, path);
}

inline void write_set(std::ostream& out, const IntegerSet& set) {
  for (Nat v : set) out << to_string(v) << '\n';
}

/// 17 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_construction_file(std::ostream& out, const ConstructionOutput& c, const ConstructionParams& p) {
  out << "# N=" << p.n_target << " delta=" << format_double(p.delta) << " alpha=" << format_double(p.alpha.value())
      << " M=" << format_double(c.smoothness_bound) << " k=" << to_string(c.k.value()) << '\n';
  write_set(out, c.M_set);
}

/// Header plus rows, written RFC 4180 style.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  static std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
    return out;
  }

  void write(std::ostream& out) const {
    auto line = [&out](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << quote(fields[i]);
      }
      out << "\r\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

}  // namespace gcdsum
