#pragma once

/// \file result.hpp
/// \brief Result rows and their CSV form.
///
/// Every experiment writes the same columns:
///
///     version,experiment,claim,check,params,value,target,tolerance,pass,seed
///
///  - check is one of equal (|value - target| <= tolerance), at_most
///    (value <= target + tolerance), at_least (value >= target - tolerance) or
///    report (always passes; target may be nan).
///  - params is a `;`-separated list of key=value pairs, e.g. `n=4;t=0.3`.
///  - numbers use the shortest round-trip decimal form.
/// Runtime is not part of the rows, so identical configs give identical bytes.

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcube/harness/config.hpp"

namespace hcube::harness {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader = "version,experiment,claim,check,params,value,target,tolerance,pass,seed";

enum class Check { equal, at_most, at_least, report };

inline const char* to_string(Check c) {
  switch (c) {
    case Check::equal: return "equal";
    case Check::at_most: return "at_most";
    case Check::at_least: return "at_least";
    default: return "report";
  }
}

inline bool evaluate(Check c, double value, double target, double tolerance) {
  switch (c) {
    case Check::equal: return std::abs(value - target) <= tolerance;
    case Check::at_most: return value <= target + tolerance;
    case Check::at_least: return value >= target - tolerance;
    default: return true;
  }
}

struct Row {
  int version = kSchemaVersion;
  std::string experiment;
  std::string claim;
  Check check = Check::report;
  std::string params;
  double value = 0;
  double target = 0;
  double tolerance = 0;
  bool pass = true;
  std::uint64_t seed = 0;
};

/// key=value;key=value builder for the params column.
class Params {
public:
  Params& add(const std::string& key, double v) { return put(key, format_number(v)); }
  Params& add(const std::string& key, int v) { return put(key, std::to_string(v)); }
  Params& add(const std::string& key, long v) { return put(key, std::to_string(v)); }
  Params& add(const std::string& key, std::size_t v) { return put(key, std::to_string(v)); }
  Params& add(const std::string& key, const std::string& v) { return put(key, v); }
  Params& add(const std::string& key, const char* v) { return put(key, v); }
  [[nodiscard]] const std::string& str() const noexcept { return text_; }
  operator const std::string&() const noexcept { return text_; }  // NOLINT

private:
  Params& put(const std::string& key, const std::string& v) {
    if (!text_.empty()) text_ += ';';
    text_ += key + '=' + v;
    return *this;
  }
  std::string text_;
};

/// Collects the rows of one experiment run.
class Sink {
public:
  Sink(std::string experiment, std::uint64_t seed) : experiment_(std::move(experiment)), seed_(seed) {}

  void equal(const std::string& claim, const std::string& params, double value, double target, double tol) {
    push(claim, Check::equal, params, value, target, tol);
  }
  void at_most(const std::string& claim, const std::string& params, double value, double bound, double tol = 0) {
    push(claim, Check::at_most, params, value, bound, tol);
  }
  void at_least(const std::string& claim, const std::string& params, double value, double bound, double tol = 0) {
    push(claim, Check::at_least, params, value, bound, tol);
  }
  void report(const std::string& claim, const std::string& params, double value, double target = NAN) {
    push(claim, Check::report, params, value, target, 0);
  }

  [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }
  [[nodiscard]] std::vector<Row> take() { return std::move(rows_); }
  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += !r.pass;
    return n;
  }

private:
  void push(const std::string& claim, Check check, const std::string& params, double value, double target, double tol) {
    Row r;
    r.experiment = experiment_;
    r.claim = claim;
    r.check = check;
    r.params = params;
    r.value = value;
    r.target = target;
    r.tolerance = tol;
    // NaN never passes a hard check.
    r.pass = check == Check::report || (!std::isnan(value) && evaluate(check, value, target, tol));
    r.seed = seed_;
    rows_.push_back(std::move(r));
  }

  std::string experiment_;
  std::uint64_t seed_;
  std::vector<Row> rows_;
};

inline void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.version << ',' << r.experiment << ',' << r.claim << ',' << to_string(r.check) << ',' << r.params << ','
        << format_number(r.value) << ',' << format_number(r.target) << ',' << format_number(r.tolerance) << ','
        << (r.pass ? 1 : 0) << ',' << r.seed << '\n';
}

inline std::string to_csv(const std::vector<Row>& rows) {
  std::ostringstream ss;
  write_csv(ss, rows);
  return ss.str();
}

class ReportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Check parse_check(std::string_view s) {
  if (s == "equal") return Check::equal;
  if (s == "at_most") return Check::at_most;
  if (s == "at_least") return Check::at_least;
  if (s == "report") return Check::report;
  throw ReportError("unknown check '" + std::string(s) + "'");
}

inline double parse_number(std::string_view s) {
  if (s == "nan") return NAN;
  double v = 0;
  if (!parse_double(s, v)) throw ReportError("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Reads rows written by write_csv; `source` names the input in error messages.
inline std::vector<Row> read_csv(std::istream& in, const std::string& source = "input") {
  std::vector<Row> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ReportError(source + ": unexpected header '" + line + "'");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = detail::split(line, ',');
    const std::string where = source + ":" + std::to_string(lineno);
    if (f.size() != 10) throw ReportError(where + ": expected 10 fields");
    Row r;
    try {
      std::uint64_t v = 0;
      if (!detail::parse_u64(f[0], v)) throw ReportError("bad version");
      r.version = static_cast<int>(v);
      r.experiment = std::string(f[1]);
      r.claim = std::string(f[2]);
      r.check = detail::parse_check(f[3]);
      r.params = std::string(f[4]);
      r.value = detail::parse_number(f[5]);
      r.target = detail::parse_number(f[6]);
      r.tolerance = detail::parse_number(f[7]);
      if (f[8] != "0" && f[8] != "1") throw ReportError("bad pass flag");
      r.pass = f[8] == "1";
      if (!detail::parse_u64(f[9], r.seed)) throw ReportError("bad seed");
    } catch (const ReportError& e) {
      throw ReportError(where + ": " + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hcube::harness
