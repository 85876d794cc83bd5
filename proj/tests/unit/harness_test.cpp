#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hcube/harness.hpp"
#include "hcube/random.hpp"

using namespace hcube;
using namespace hcube::harness;

namespace {

const Registry& registry() {
  static const Registry reg = default_registry();
  return reg;
}

std::vector<ParamSpec> toy_schema() {
  return {{"n", ParamType::integer, "4", 1, 10, "dimension"},
          {"t", ParamType::real, "0.5", 0, 10, "time"},
          {"p", ParamType::real_list, "1.5, 2, inf", 1, INFINITY, "exponents"},
          {"d", ParamType::integer_list, "1, 2", 0, 8, "degrees"}};
}

std::string run_csv(const std::string& id, const std::string& text) {
  const auto& e = registry().at(id);
  return to_csv(run_experiment(e, Config::parse(e.params, text)).rows);
}

Row make_row(const std::string& experiment, const std::string& claim, Check check, double value, double target,
             double tol) {
  Sink sink(experiment, 7);
  switch (check) {
    case Check::equal: sink.equal(claim, "x=1", value, target, tol); break;
    case Check::at_most: sink.at_most(claim, "x=1", value, target, tol); break;
    case Check::at_least: sink.at_least(claim, "x=1", value, target, tol); break;
    default: sink.report(claim, "x=1", value, target); break;
  }
  return sink.rows().front();
}

// Rows for every claim of one experiment, all passing.
std::vector<Row> complete_rows(const std::string& id) {
  std::vector<Row> rows;
  for (const auto& c : registry().at(id).claims) rows.push_back(make_row(id, c, Check::at_most, 0.5, 1, 0));
  return rows;
}

std::string render(const std::vector<Row>& rows) { return render_markdown(summarize(rows, registry())); }

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const auto c = Config::parse(toy_schema(), "# comment\n n = 6\nt=1/4  # trailing\np = 1, 3/2, inf\nseed = 11\n");
  EXPECT_EQ(c.integer("n"), 6);
  EXPECT_EQ(c.real("t"), 0.25);
  EXPECT_EQ(c.reals("p"), (std::vector<double>{1, 1.5, INFINITY}));
  EXPECT_EQ(c.integers("d"), (std::vector<int>{1, 2}));
  EXPECT_EQ(c.seed(), 11U);
  EXPECT_EQ(Config::defaults(toy_schema()).seed(), kDefaultSeed);
}

TEST(Config, SchemaViolationsThrow) {
  const auto s = toy_schema();
  for (const char* bad : {"n = 11", "n = 2.5", "n = inf", "m = 1", "n", "n = 1, 2", "t = x", "t = 1/0", "p = 0.5",
                          "seed = -1", "n = 2\nn = 3", "d = 9", "t = "})
    EXPECT_THROW(Config::parse(s, bad), ConfigError) << bad;
  EXPECT_THROW(Config::load(s, "/nonexistent/config.toml"), ConfigError);
}

TEST(Config, RenderParsesBackToTheSameConfig) {
  Xoshiro256 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Config c = Config::defaults(toy_schema());
    c.set("n", std::to_string(1 + rng.below(10)));
    c.set("t", format_number(10 * rng.uniform()));
    std::string p = format_number(1 + 5 * rng.uniform());
    for (auto k = rng.below(4); k > 0; --k) p += ", " + (rng.below(3) ? format_number(1 + 5 * rng.uniform()) : "inf");
    c.set("p", p);
    c.set_seed(rng());
    const auto text = c.render();
    const auto back = Config::parse(toy_schema(), text);
    EXPECT_EQ(back.render(), text);
    EXPECT_EQ(back.reals("p"), c.reals("p"));
    EXPECT_EQ(back.seed(), c.seed());
  }
}

TEST(Results, CsvRoundTripOfRandomRows) {
  Xoshiro256 rng(5);
  const Check kinds[] = {Check::equal, Check::at_most, Check::at_least, Check::report};
  std::vector<Row> rows;
  for (int i = 0; i < 300; ++i) {
    const double v = rng.below(20) == 0 ? NAN : std::ldexp(rng.normal(), static_cast<int>(rng.below(80)) - 40);
    rows.push_back(make_row("exp", "claim" + std::to_string(i % 3), kinds[rng.below(4)], v, rng.normal(),
                            std::abs(rng.normal())));
  }
  std::istringstream in(to_csv(rows));
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].check, rows[i].check);
    EXPECT_EQ(back[i].pass, rows[i].pass);
    if (std::isnan(rows[i].value))
      EXPECT_TRUE(std::isnan(back[i].value));
    else
      EXPECT_EQ(back[i].value, rows[i].value);
    EXPECT_EQ(back[i].target, rows[i].target);
    EXPECT_EQ(back[i].tolerance, rows[i].tolerance);
  }
  EXPECT_EQ(to_csv(back), to_csv(rows));
}

TEST(Results, MalformedCsvIsRejected) {
  const std::string header(kCsvHeader);
  for (const std::string& bad : std::vector<std::string>{"a,b\n", header + "\n1,e,c,equal,x,1,1,0,1\n", header + "\n1,e,c,close,x,1,1,0,1,0\n",
                                header + "\n1,e,c,equal,x,one,1,0,1,0\n", header + "\n1,e,c,equal,x,1,1,0,2,0\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_csv(in), ReportError) << bad;
  }
}

TEST(Results, NanFailsEveryHardCheck) {
  for (Check c : {Check::equal, Check::at_most, Check::at_least})
    EXPECT_FALSE(make_row("e", "c", c, NAN, 0, INFINITY).pass);
  EXPECT_TRUE(make_row("e", "c", Check::report, NAN, 0, 0).pass);
}

TEST(Results, MarginSignMatchesPassFlag) {
  Xoshiro256 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const Check c = std::array{Check::equal, Check::at_most, Check::at_least}[rng.below(3)];
    const auto r = make_row("e", "c", c, rng.normal(), rng.normal(), std::abs(rng.normal()));
    EXPECT_EQ(margin(r) >= 0, r.pass);
  }
}

TEST(Registry, CoversAllModulesWithUniqueAnchoredIds) {
  const auto& reg = registry();
  EXPECT_GE(reg.size(), 18U);
  std::set<std::string> ids, modules;
  for (const auto& e : reg.experiments()) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_FALSE(e.anchor.empty()) << e.id;
    EXPECT_FALSE(e.claims.empty()) << e.id;
    EXPECT_EQ(std::set<std::string>(e.claims.begin(), e.claims.end()).size(), e.claims.size()) << e.id;
    modules.insert(e.module);
    EXPECT_NO_THROW(e.default_config()) << e.id;
  }
  EXPECT_EQ(modules, (std::set<std::string>{"cube", "heat", "extremal", "interp", "planar", "clifford"}));
  EXPECT_THROW((void)reg.at("no-such-experiment"), ConfigError);
}

TEST(Registry, RejectsDuplicatesAndIncompleteEntries) {
  Registry reg;
  Experiment e{.id = "x", .module = "cube", .anchor = "a", .params = {}, .claims = {"c"},
               .body = [](const Config&, Sink& s) { s.report("c", "", 1); }};
  reg.add(e);
  EXPECT_THROW(reg.add(e), std::invalid_argument);
  e.id = "y";
  e.anchor.clear();
  EXPECT_THROW(reg.add(e), std::invalid_argument);
}

TEST(Run, GradientRepresentationPassesWithDefaults) {
  const auto& e = registry().at("gradient-representation");
  const auto r = run_experiment(e, e.default_config());
  EXPECT_TRUE(r.passed()) << r.error;
  EXPECT_GT(r.rows.size(), 0U);
  for (const auto& row : r.rows) EXPECT_EQ(row.seed, kDefaultSeed);
}

TEST(Run, IdenticalConfigAndSeedGiveIdenticalBytes) {
  for (const char* id : {"delta-moments", "contraction-small-p", "flp-interpolation", "ncbm-table"}) {
    const std::string text = std::string(id) == "ncbm-table" ? "trials = 20\nseed = 42\n" : "seed = 42\n";
    EXPECT_EQ(run_csv(id, text), run_csv(id, text)) << id;
  }
  EXPECT_NE(run_csv("flp-interpolation", "seed = 1"), run_csv("flp-interpolation", "seed = 2"));
}

TEST(Run, PoolSizeDoesNotChangeResults) {
  std::vector<std::pair<const Experiment*, Config>> jobs;
  for (const char* id : {"cube-parseval", "delta-moments", "mp-integral", "green-segment", "clifford-identities"}) {
    const auto& e = registry().at(id);
    jobs.emplace_back(&e, e.default_config());
  }
  const auto one = run_many(jobs, 1), three = run_many(jobs, 3);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].id, jobs[i].first->id);
    EXPECT_EQ(to_csv(one[i].rows), to_csv(three[i].rows));
  }
}

TEST(Run, BodyExceptionsAreRecordedAndMissingClaimsListed) {
  Experiment throws{.id = "t", .module = "cube", .anchor = "a", .params = {}, .claims = {"c"},
                    .body = [](const Config&, Sink&) { throw std::runtime_error("boom"); }};
  const auto r = run_experiment(throws, Config{});
  EXPECT_EQ(r.error, "boom");
  EXPECT_FALSE(r.passed());

  Experiment partial{.id = "p", .module = "cube", .anchor = "a", .params = {}, .claims = {"c", "d"},
                     .body = [](const Config&, Sink& s) { s.equal("c", "", 1, 1, 0); }};
  const auto q = run_experiment(partial, Config{});
  EXPECT_EQ(q.missing, std::vector<std::string>{"d"});
  EXPECT_FALSE(q.passed());

  Experiment usage{.id = "u", .module = "cube", .anchor = "a", .params = {}, .claims = {"c"},
                   .body = [](const Config&, Sink&) { throw ConfigError("bad"); }};
  EXPECT_THROW(run_experiment(usage, Config{}), ConfigError);
}

TEST(Run, OutputsAreWrittenAndReadBack) {
  const auto dir = std::filesystem::temp_directory_path() / "hcube_harness_test";
  std::filesystem::remove_all(dir);
  const auto& e = registry().at("green-segment");
  const auto r = run_experiment(e, e.default_config());
  const auto csv = write_outputs(e, r, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "green-segment.json"));
  const auto rows = read_result_files({csv.string()});
  EXPECT_EQ(to_csv(rows), to_csv(r.rows));
  std::ifstream js(dir / "green-segment.json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["experiment"], "green-segment");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["seed"], kDefaultSeed);
  EXPECT_TRUE(j.contains("runtime_seconds"));
  std::filesystem::remove_all(dir);
}

TEST(Report, EmptyInputGivesEmptyReport) {
  const auto s = summarize({}, registry());
  EXPECT_TRUE(s.passed());
  EXPECT_EQ(render_markdown(s), "");
  std::istringstream in("");
  EXPECT_TRUE(read_csv(in).empty());
}

TEST(Report, VersionMismatchIsAnError) {
  auto rows = complete_rows("green-segment");
  rows[1].version = kSchemaVersion + 1;
  EXPECT_THROW(summarize(rows, registry()), ReportError);
}

TEST(Report, UnknownExperimentOrClaimOrMixedKindsAreErrors) {
  EXPECT_THROW(summarize({make_row("nope", "c", Check::equal, 0, 0, 0)}, registry()), ReportError);
  EXPECT_THROW(summarize({make_row("green-segment", "nope", Check::equal, 0, 0, 0)}, registry()), ReportError);
  auto rows = complete_rows("green-segment");
  rows.push_back(make_row("green-segment", rows[0].claim, Check::equal, 0, 0, 0));
  EXPECT_THROW(summarize(rows, registry()), ReportError);
}

TEST(Report, MissingClaimFailsCoverage) {
  auto rows = complete_rows("green-segment");
  EXPECT_TRUE(summarize(rows, registry()).passed());
  const std::string dropped = rows.back().claim;
  rows.pop_back();
  const auto s = summarize(rows, registry());
  EXPECT_FALSE(s.passed());
  EXPECT_EQ(s.failures(), 1U);
  EXPECT_TRUE(s.claims.back().missing);
  EXPECT_EQ(s.claims.back().claim, dropped);
  EXPECT_NE(render_markdown(s).find("MISSING"), std::string::npos);
}

TEST(Report, WorstRowIsTheSmallestMargin) {
  std::vector<Row> rows = complete_rows("green-segment");
  const std::string claim = rows[0].claim;
  rows.push_back(make_row("green-segment", claim, Check::at_most, 0.9, 1, 0));
  rows.push_back(make_row("green-segment", claim, Check::at_most, 0.7, 1, 0));
  const auto s = summarize(rows, registry());
  EXPECT_EQ(s.claims[0].rows, 3U);
  EXPECT_EQ(s.claims[0].worst.value, 0.9);
  EXPECT_NEAR(s.claims[0].margin, 0.1, 1e-15);

  rows.push_back(make_row("green-segment", claim, Check::at_most, 1.5, 1, 0));
  const auto f = summarize(rows, registry());
  EXPECT_EQ(f.claims[0].failures, 1U);
  EXPECT_EQ(f.claims[0].worst.value, 1.5);
  EXPECT_FALSE(f.passed());
}

TEST(Report, RegeneratedFromStoredRowsIsByteIdentical) {
  std::vector<Row> rows;
  for (const char* id : {"delta-moments", "green-segment", "spiral-inclusion"}) {
    const auto& e = registry().at(id);
    auto r = run_experiment(e, e.default_config()).rows;
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const auto direct = render(rows);
  std::istringstream in(to_csv(rows));
  const auto stored = read_csv(in);
  EXPECT_EQ(render(stored), direct);
  EXPECT_EQ(render(stored), render(stored));
  const auto s = summarize(stored, registry());
  EXPECT_TRUE(s.passed());
  std::size_t claims = 0;
  for (const char* id : {"delta-moments", "green-segment", "spiral-inclusion"}) claims += registry().at(id).claims.size();
  EXPECT_EQ(s.claims.size(), claims);
}
