// Acceptance run: each criterion names the experiments that decide it and the
// parameters it is judged at. A criterion passes when every one of its
// experiments passes (no failing row, no missing claim, no error) within the
// time limit. The remaining registered experiments run afterwards so the whole
// default suite is timed and its report checked for coverage as well.

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "hcube/harness.hpp"

using namespace hcube::harness;

namespace {

struct Job {
  const char* id;
  const char* config;  // pinned parameters, on top of the defaults
};

struct Criterion {
  int number;
  const char* name;
  std::vector<Job> jobs;
  double time_limit = 0;  // seconds, 0 for none
};

const std::vector<Criterion> kCriteria = {
    {1, "gradient representation", {{"gradient-representation", "n_max = 8\ntrials = 20\nt = 0.05, 0.3, 1, 3"}}, 10},
    {2, "delta moments", {{"delta-moments", "m_max = 8"}}},
    {3,
     "semigroup contraction",
     {{"contraction-large-p", "p = 2, 3, 4, 8\nn_max = 6\nd_max = 5\npoints = 41\ntrials = 50"},
      {"contraction-small-p", "spread = 10"}}},
    {4, "L1 kernel with reciprocal tail", {{"kernel-l1-sweep", "k_min = 2\nk_max = 128\nk_step = 2\nband = 4"}}, 60},
    {5,
     "lens and two-gone coefficients",
     {{"lens-coefficients", "alpha = 1/3, 1/2, 2/3\nN = 4096\nfit_lo = 64\nslope_tolerance = 0.05\nm_min = 8\nm_max = 2048"},
      {"twogone-map", "alpha = 1/3, 1/2, 2/3\nslope_tolerance = 0.1\noracle_tolerance = 1e-4"}}},
    {6, "paraproduct tail bound", {{"paraproduct-bound", "alpha = 1/3, 1/2, 2/3\nd_min = 2\nd_max = 2048\nspread = 5"}}},
    {7,
     "Green's functions",
     {{"green-segment", "d_asymptotic = 512"},
      {"green-lens", "slope_tolerance = 0.02\nbalance_min = 4\nbalance_max = 512"}}},
    {8,
     "Pauli operator identities",
     {{"clifford-identities", "n_max = 5"},
      {"derivative-identity", "n_max = 5"},
      {"fejer-bernstein", ""},
      {"ncbm-table", "p = 2, 3, 4, inf"}}},
    {9,
     "extremal oracles",
     {{"extremal-p2", "n = 6, 10\nd_max = 6\ntolerance = 1e-3"},
      {"flp-interpolation", ""},
      {"exponent-consistency", ""}}},
    {10, "spiral inside the circle", {{"spiral-inclusion", "alpha = 1/3, 1/2, 2/3\ncubic_tolerance = 0.05"}}},
};

constexpr double kSuiteLimit = 600;

}  // namespace

int main() {
  const Registry reg = default_registry();
  std::set<std::string> done;
  std::vector<Row> rows;
  double total = 0;
  int failed = 0;

  for (const auto& c : kCriteria) {
    bool ok = true;
    double seconds = 0;
    std::string detail;
    for (const auto& job : c.jobs) {
      const auto& e = reg.at(job.id);
      const auto r = run_experiment(e, Config::parse(e.params, job.config));
      done.insert(job.id);
      seconds += r.seconds;
      rows.insert(rows.end(), r.rows.begin(), r.rows.end());
      if (!r.passed()) {
        ok = false;
        detail += " " + r.id + ":";
        if (!r.error.empty()) detail += " error(" + r.error + ")";
        for (const auto& m : r.missing) detail += " missing(" + m + ")";
        for (const auto& row : r.rows)
          if (!row.pass) {
            detail += " " + row.claim + "[" + row.params + "]=" + format_number(row.value);
            break;
          }
      }
    }
    if (c.time_limit > 0 && seconds >= c.time_limit) {
      ok = false;
      detail += " over time limit " + format_number(c.time_limit) + "s";
    }
    total += seconds;
    failed += !ok;
    std::printf("criterion %2d  %-32s %s  (%.2fs)%s\n", c.number, c.name, ok ? "PASS" : "FAIL", seconds,
                detail.c_str());
    std::fflush(stdout);
  }

  bool rest_ok = true;
  for (const auto& e : reg.experiments()) {
    if (done.count(e.id)) continue;
    const auto r = run_experiment(e, e.default_config());
    total += r.seconds;
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    if (!r.passed()) {
      rest_ok = false;
      std::printf("  other experiment %s FAIL\n", e.id.c_str());
    }
  }
  // The stored rows must also summarize cleanly with every registered claim present.
  bool report_ok = false;
  try {
    const auto summary = summarize(rows, reg);
    std::size_t claims = 0;
    for (const auto& e : reg.experiments()) claims += e.claims.size();
    report_ok = summary.passed() && summary.claims.size() == claims;
  } catch (const ReportError& e) {
    std::printf("  report error: %s\n", e.what());
  }
  if (!report_ok) std::printf("  report over all rows FAIL\n");
  const bool suite_ok = rest_ok && report_ok && total < kSuiteLimit;
  std::printf("full suite    %-32s %s  (%.1fs of %.0fs)\n", "all registered experiments", suite_ok ? "PASS" : "FAIL",
              total, kSuiteLimit);
  return failed == 0 && suite_ok ? 0 : 1;
}
