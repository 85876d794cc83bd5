// hcube: run, list and summarize the registered experiments.
//
//   hcube list
//   hcube run <id> [--config file] [--seed u64] [--out dir]
//   hcube report <files...>
//   hcube verify-all [--out dir] [--jobs n]
//
// Exit status: 0 pass, 1 claim failure, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcube/harness.hpp"

namespace {

using namespace hcube::harness;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

void print_status(const RunResult& r) {
  std::printf("%-26s %s  rows %zu  failures %zu", r.id.c_str(), r.passed() ? "PASS" : "FAIL", r.rows.size(),
              r.failures());
  for (const auto& m : r.missing) std::printf("  missing:%s", m.c_str());
  if (!r.error.empty()) std::printf("  error: %s", r.error.c_str());
  std::printf("  (%.2fs)\n", r.seconds);
  for (const auto& row : r.rows)
    if (!row.pass)
      std::printf("    %s [%s] value %s target %s tol %s\n", row.claim.c_str(), row.params.c_str(),
                  format_number(row.value).c_str(), format_number(row.target).c_str(),
                  format_number(row.tolerance).c_str());
}

int cmd_list(const Registry& reg) {
  for (const auto& e : reg.experiments()) {
    std::printf("%s  [%s]\n  %s\n  claims:", e.id.c_str(), e.module.c_str(), e.anchor.c_str());
    for (const auto& c : e.claims) std::printf(" %s", c.c_str());
    std::printf("\n");
    const auto text = e.default_config().render();
    for (const auto& line : detail::split(text, '\n'))
      if (!line.empty()) std::printf("    %.*s\n", static_cast<int>(line.size()), line.data());
    std::printf("\n");
  }
  return kPass;
}

int cmd_run(const Registry& reg, const std::string& id, const std::string& config_path,
            std::optional<std::uint64_t> seed, const std::string& out) {
  const auto& e = reg.at(id);
  Config cfg = config_path.empty() ? e.default_config() : Config::load(e.params, config_path);
  if (seed) cfg.set_seed(*seed);
  const auto r = run_experiment(e, cfg);
  const auto csv = write_outputs(e, r, out);
  print_status(r);
  std::printf("wrote %s\n", csv.string().c_str());
  return r.passed() ? kPass : kFail;
}

int cmd_report(const Registry& reg, const std::vector<std::string>& files) {
  const auto summary = summarize(read_result_files(files), reg);
  std::cout << render_markdown(summary);
  return summary.passed() ? kPass : kFail;
}

int cmd_verify_all(const Registry& reg, const std::string& out, unsigned jobs) {
  std::vector<std::pair<const Experiment*, Config>> work;
  for (const auto& e : reg.experiments()) work.emplace_back(&e, e.default_config());
  const auto results = run_many(work, jobs);
  std::vector<Row> rows;
  double seconds = 0;
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    print_status(r);
    ok = ok && r.passed();
    seconds += r.seconds;
    if (!out.empty()) write_outputs(*work[i].first, r, out);
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  }
  const auto summary = summarize(rows, reg);
  // Every registered claim must appear, including those of experiments that produced no rows.
  std::size_t claims = 0;
  for (const auto& e : reg.experiments()) claims += e.claims.size();
  const bool covered = summary.claims.size() == claims;
  if (!out.empty()) {
    std::ofstream md(std::filesystem::path(out) / "report.md", std::ios::binary);
    md << render_markdown(summary);
  }
  std::printf("\n%zu experiments, %zu claims, %zu failing claims%s, %.1fs\n", results.size(), summary.claims.size(),
              summary.failures(), covered ? "" : ", coverage incomplete", seconds);
  return ok && covered && summary.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run and summarize the hypercube analysis experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print every experiment with its statement and default parameters");

  std::string id, config_path, out = "results";
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run one experiment and write <out>/<id>.csv and <out>/<id>.json");
  run->add_option("id", id, "Experiment id")->required();
  run->add_option("--config", config_path, "key = value parameter file");
  run->add_option("--seed", seed, "Master seed (overrides the config)");
  run->add_option("--out", out, "Output directory")->capture_default_str();

  std::vector<std::string> files;
  auto* report = app.add_subcommand("report", "Summarize result CSV files as a markdown table");
  report->add_option("files", files, "Result CSV files");

  std::string verify_out;
  unsigned jobs = 1;
  auto* verify = app.add_subcommand("verify-all", "Run every experiment with default parameters");
  verify->add_option("--out", verify_out, "Also write CSV, JSON and report.md here");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 256U))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Registry reg = default_registry();
    if (*list) return cmd_list(reg);
    if (*run) return cmd_run(reg, id, config_path, seed, out);
    if (*report) return cmd_report(reg, files);
    if (*verify) return cmd_verify_all(reg, verify_out, jobs);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const ReportError& e) {
    std::fprintf(stderr, "report error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
