#pragma once

/// \file report.hpp
/// \brief Per-claim summary of stored result rows.
///
/// Rows are grouped by (experiment, claim) in order of first appearance. Each
/// group keeps its worst row, judged by the margin to the check boundary:
///   equal     tolerance - |value - target|
///   at_most   target + tolerance - value
///   at_least  value - target + tolerance
/// Report-only groups keep their value range instead. The rendered text
/// depends only on the rows, so regenerating it gives identical bytes.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hcube/harness/registry.hpp"
#include "hcube/harness/result.hpp"

namespace hcube::harness {

struct ClaimSummary {
  std::string experiment;
  std::string claim;
  Check check = Check::report;
  std::size_t rows = 0;
  std::size_t failures = 0;
  Row worst;                 ///< smallest margin (hard checks) or largest value (reports)
  double margin = NAN;       ///< margin of `worst`; nan for reports
  double value_min = INFINITY;
  double value_max = -INFINITY;
  bool missing = false;      ///< a registered claim without rows
  [[nodiscard]] bool passed() const { return !missing && failures == 0; }
};

struct ReportSummary {
  std::vector<ClaimSummary> claims;
  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : claims) n += !c.passed();
    return n;
  }
  [[nodiscard]] bool passed() const { return failures() == 0; }
};

inline double margin(const Row& r) {
  switch (r.check) {
    case Check::equal: return r.tolerance - std::abs(r.value - r.target);
    case Check::at_most: return r.target + r.tolerance - r.value;
    case Check::at_least: return r.value - r.target + r.tolerance;
    default: return NAN;
  }
}

/// Groups rows by claim and checks them against the registry: every row must
/// carry the current schema version and a registered experiment and claim, and
/// every registered claim of an experiment that appears must have rows.
inline ReportSummary summarize(const std::vector<Row>& rows, const Registry& registry) {
  ReportSummary out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::string> seen;
  for (const auto& r : rows) {
    if (r.version != kSchemaVersion)
      throw ReportError("version mismatch: row of " + r.experiment + " has version " + std::to_string(r.version) +
                        ", expected " + std::to_string(kSchemaVersion));
    const Experiment* e = registry.find(r.experiment);
    if (!e) throw ReportError("unknown experiment '" + r.experiment + "'");
    if (std::find(e->claims.begin(), e->claims.end(), r.claim) == e->claims.end())
      throw ReportError("experiment " + r.experiment + " has no claim '" + r.claim + "'");
    if (std::find(seen.begin(), seen.end(), r.experiment) == seen.end()) seen.push_back(r.experiment);

    auto [it, fresh] = index.try_emplace({r.experiment, r.claim}, out.claims.size());
    if (fresh) {
      ClaimSummary c;
      c.experiment = r.experiment;
      c.claim = r.claim;
      c.check = r.check;
      c.worst = r;
      c.margin = margin(r);
      out.claims.push_back(std::move(c));
    }
    auto& c = out.claims[it->second];
    if (c.check != r.check)
      throw ReportError("claim " + r.experiment + "/" + r.claim + " mixes check kinds");
    ++c.rows;
    c.failures += !r.pass;
    if (!std::isnan(r.value)) {
      c.value_min = std::min(c.value_min, r.value);
      c.value_max = std::max(c.value_max, r.value);
    }
    if (r.check == Check::report) {
      if (r.value > c.worst.value) c.worst = r;
    } else {
      const double m = margin(r);
      // A failing row always outranks a passing one; NaN margins count as failing.
      const bool worse = (!r.pass && c.worst.pass) || (r.pass == c.worst.pass && (std::isnan(m) || m < c.margin));
      if (worse) {
        c.worst = r;
        c.margin = m;
      }
    }
  }
  for (const auto& id : seen)
    for (const auto& claim : registry.at(id).claims)
      if (!index.count({id, claim})) {
        ClaimSummary c;
        c.experiment = id;
        c.claim = claim;
        c.missing = true;
        out.claims.push_back(std::move(c));
      }
  return out;
}

/// Markdown table, one line per claim.
inline std::string render_markdown(const ReportSummary& s) {
  std::ostringstream out;
  if (s.claims.empty()) return "";
  out << "| experiment | claim | check | rows | failures | worst params | value | target | tolerance | margin | status |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& c : s.claims) {
    out << "| " << c.experiment << " | " << c.claim << " | ";
    if (c.missing) {
      out << "- | 0 | 0 | - | - | - | - | - | MISSING |\n";
      continue;
    }
    out << to_string(c.check) << " | " << c.rows << " | " << c.failures << " | `" << c.worst.params << "` | ";
    if (c.check == Check::report)
      out << format_number(c.value_min) << " .. " << format_number(c.value_max);
    else
      out << format_number(c.worst.value);
    out << " | " << format_number(c.worst.target) << " | " << format_number(c.worst.tolerance) << " | "
        << format_number(c.margin) << " | " << (c.check == Check::report ? "REPORT" : c.passed() ? "PASS" : "FAIL")
        << " |\n";
  }
  out << "\n" << s.claims.size() << " claims, " << s.failures() << " failing\n";
  return out.str();
}

/// Reads and concatenates CSV files in the given order.
inline std::vector<Row> read_result_files(const std::vector<std::string>& paths) {
  std::vector<Row> rows;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ReportError("cannot read " + p);
    auto part = read_csv(in, p);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

}  // namespace hcube::harness
