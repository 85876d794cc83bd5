#pragma once

/// \file registry.hpp
/// \brief Named experiments, running them, and writing their outputs.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hcube/harness/config.hpp"
#include "hcube/harness/result.hpp"

namespace hcube::harness {

struct Experiment {
  std::string id;
  std::string module;  ///< cube, heat, extremal, interp, planar or clifford
  std::string anchor;  ///< the statement the experiment checks
  std::vector<ParamSpec> params;
  std::vector<std::string> claims;  ///< every claim must produce at least one row
  std::function<void(const Config&, Sink&)> body;

  [[nodiscard]] Config default_config() const { return Config::defaults(params); }
};

class Registry {
public:
  void add(Experiment e) {
    if (e.id.empty() || e.anchor.empty() || e.claims.empty() || !e.body)
      throw std::invalid_argument("Registry: experiment needs id, anchor, claims and body");
    if (find(e.id)) throw std::invalid_argument("Registry: duplicate id " + e.id);
    list_.push_back(std::move(e));
  }

  [[nodiscard]] const Experiment* find(const std::string& id) const {
    for (const auto& e : list_)
      if (e.id == id) return &e;
    return nullptr;
  }

  [[nodiscard]] const Experiment& at(const std::string& id) const {
    if (const auto* e = find(id)) return *e;
    throw ConfigError("unknown experiment '" + id + "'");
  }

  [[nodiscard]] const std::vector<Experiment>& experiments() const noexcept { return list_; }
  [[nodiscard]] std::size_t size() const noexcept { return list_.size(); }

private:
  std::vector<Experiment> list_;
};

struct RunResult {
  std::string id;
  std::string config_text;
  std::uint64_t seed = 0;
  std::vector<Row> rows;
  double seconds = 0;
  std::string error;                 ///< exception text if the body threw
  std::vector<std::string> missing;  ///< declared claims without rows

  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += !r.pass;
    return n;
  }
  [[nodiscard]] bool passed() const { return error.empty() && missing.empty() && failures() == 0; }
};

/// Runs one experiment. Exceptions from the body are recorded, not rethrown,
/// except ConfigError which signals a usage problem.
inline RunResult run_experiment(const Experiment& e, const Config& cfg) {
  RunResult out;
  out.id = e.id;
  out.config_text = cfg.render();
  out.seed = cfg.seed();
  Sink sink(e.id, cfg.seed());
  const auto t0 = std::chrono::steady_clock::now();
  try {
    e.body(cfg, sink);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.rows = sink.take();
  if (out.error.empty())
    for (const auto& c : e.claims)
      if (std::none_of(out.rows.begin(), out.rows.end(), [&](const Row& r) { return r.claim == c; }))
        out.missing.push_back(c);
  return out;
}

/// Runs jobs[i] = (experiment, config) on `workers` threads; results keep the input order.
inline std::vector<RunResult> run_many(const std::vector<std::pair<const Experiment*, Config>>& jobs,
                                       unsigned workers = 1) {
  std::vector<RunResult> out(jobs.size());
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        out[i] = run_experiment(*jobs[i].first, jobs[i].second);
      } catch (...) {
        std::lock_guard lk(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline nlohmann::json summary_json(const Experiment& e, const RunResult& r) {
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : e.claims) {
    std::size_t rows = 0, fails = 0;
    for (const auto& row : r.rows)
      if (row.claim == c) {
        ++rows;
        fails += !row.pass;
      }
    claims.push_back({{"claim", c}, {"rows", rows}, {"failures", fails}, {"pass", rows > 0 && fails == 0}});
  }
  return {{"version", kSchemaVersion},
          {"experiment", e.id},
          {"module", e.module},
          {"anchor", e.anchor},
          {"seed", r.seed},
          {"config", r.config_text},
          {"rows", r.rows.size()},
          {"failures", r.failures()},
          {"missing_claims", r.missing},
          {"error", r.error},
          {"runtime_seconds", r.seconds},
          {"pass", r.passed()},
          {"claims", claims}};
}

/// Writes <dir>/<id>.csv and <dir>/<id>.json; returns the CSV path.
inline std::filesystem::path write_outputs(const Experiment& e, const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (e.id + ".csv");
  {
    std::ofstream out(csv, std::ios::binary);
    write_csv(out, r.rows);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
  }
  std::ofstream js(dir / (e.id + ".json"), std::ios::binary);
  js << summary_json(e, r).dump(2) << '\n';
  return csv;
}

}  // namespace hcube::harness
