#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qperc/errors.hpp"
#include "qperc/harness.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/rng.hpp"

using namespace qperc;

namespace {

double metric_of(const ExperimentRecord& r, const std::string& name) {
  for (const auto& m : r.metrics)
    if (m.metric == name) return m.value;
  FAIL("metric not found: " << name);
  return 0.0;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("experiment kinds round-trip through their names") {
  const ExperimentKind kinds[] = {
      ExperimentKind::kCensus,    ExperimentKind::kExpansion,
      ExperimentKind::kMixing,    ExperimentKind::kDiameter,
      ExperimentKind::kCycles,    ExperimentKind::kMinors,
      ExperimentKind::kDecompose, ExperimentKind::kSprinkle,
      ExperimentKind::kSweep};
  for (ExperimentKind k : kinds)
    CHECK(kind_from_name(kind_name(k)) == k);
  CHECK_THROWS_AS(kind_from_name("waffles"), ConfigError);
}

TEST_CASE("edge probability resolution") {
  ExperimentConfig cfg;
  CHECK(cfg.probability_for(10) == doctest::Approx(0.2));  // default eps = 1
  cfg.epsilon = 0.5;
  CHECK(cfg.probability_for(10) == doctest::Approx(0.15));
  cfg.epsilon.reset();
  cfg.p = 0.3;
  CHECK(cfg.probability_for(10) == doctest::Approx(0.3));
  CHECK(cfg.probability_for(24) == doctest::Approx(0.3));  // p ignores d
  cfg.epsilon = 0.5;
  CHECK_THROWS_AS(cfg.probability_for(10), ConfigError);  // both set
  cfg.p.reset();
  cfg.epsilon = 29.0;
  CHECK_THROWS_AS(cfg.probability_for(4), ConfigError);  // 30/4 > 1
}

TEST_CASE("config validation catches each field") {
  ExperimentConfig good;
  good.dims = {6};
  CHECK_NOTHROW(good.validate());

  ExperimentConfig c = good;
  c.dims = {};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.dims = {1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.dims = {31};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.p = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.q2 = -0.25;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = good;
  c.cap_exact = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  // sprinkling: q2 mandatory and below p
  c = good;
  c.kind = ExperimentKind::kSprinkle;
  c.p = 0.3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.q2 = 0.4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.q2 = 0.1;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("worker resolution: explicit beats the environment") {
  ExperimentConfig cfg;
  cfg.workers = 3;
  CHECK(cfg.resolve_workers() == 3);
  cfg.workers = 0;
  setenv("QPERC_WORKERS", "2", 1);
  CHECK(cfg.resolve_workers() == 2);
  unsetenv("QPERC_WORKERS");
  CHECK(cfg.resolve_workers() >= 1);
}

TEST_CASE("census run: ordering, seeds, metrics, CSV bytes") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kCensus;
  cfg.dims = {4, 5};
  cfg.trials = 2;
  cfg.seed = 7;
  cfg.workers = 1;
  const auto records = run(cfg);
  REQUIRE(records.size() == 4);

  // (d, trial) order with derive_seed(seed, global index) sub-streams
  const uint32_t want_d[] = {4, 4, 5, 5};
  const uint32_t want_trial[] = {0, 1, 0, 1};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(records[i].d == want_d[i]);
    CHECK(records[i].trial == want_trial[i]);
    CHECK(records[i].trial_seed == derive_seed(7, static_cast<uint64_t>(i)));
    CHECK(records[i].p == doctest::Approx(2.0 / want_d[i]));
    CHECK_FALSE(records[i].q2.has_value());
    CHECK(records[i].wall_ms == 0.0);  // timing is opt-in
    CHECK(records[i].workers == 1);
  }

  std::vector<std::string> names;
  for (const auto& m : records[0].metrics) names.push_back(m.metric);
  CHECK(names == std::vector<std::string>{"components", "giant_order",
                                          "giant_fraction", "second_order",
                                          "edges"});
  for (const auto& r : records)
    CHECK(metric_of(r, "giant_fraction") * std::exp2(r.d) ==
          doctest::Approx(metric_of(r, "giant_order")));

  const std::string csv = to_csv(cfg.kind, records);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 1 + 4 * 5);
  CHECK(lines[0] == "experiment,d,p,q2,trial,seed,metric,value,wall_ms,workers");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 9);
    CHECK(lines[i].rfind("census,", 0) == 0);
  }

  // identical config => identical bytes; more workers => identical metrics
  CHECK(to_csv(cfg.kind, run(cfg)) == csv);
  ExperimentConfig two = cfg;
  two.workers = 2;
  const auto r2 = run(two);
  REQUIRE(r2.size() == records.size());
  for (size_t i = 0; i < r2.size(); ++i) {
    CHECK(r2[i].workers == 2);
    REQUIRE(r2[i].metrics.size() == records[i].metrics.size());
    for (size_t m = 0; m < r2[i].metrics.size(); ++m)
      CHECK(r2[i].metrics[m].value == records[i].metrics[m].value);
  }
}

TEST_CASE("sprinkle run carries q2 and the solved first-round probability") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kSprinkle;
  cfg.dims = {6};
  cfg.p = 0.3;
  cfg.q2 = 0.1;
  cfg.seed = 11;
  cfg.workers = 1;
  const auto records = run(cfg);
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].q2.has_value());
  CHECK(*records[0].q2 == 0.1);
  CHECK(metric_of(records[0], "q1_prob") ==
        doctest::Approx(sprinkle_split(0.3, 0.1)));
  CHECK(metric_of(records[0], "nested") == 1.0);
  // the q2 column is populated
  const auto lines = split_lines(to_csv(cfg.kind, records));
  CHECK(lines[1].find(",0.1") != std::string::npos);
}

TEST_CASE("summaries: hand-checked moments and t-based interval") {
  std::vector<ExperimentRecord> records;
  for (int x = 1; x <= 10; ++x) {
    ExperimentRecord r;
    r.metrics.push_back({"x", static_cast<double>(x)});
    records.push_back(std::move(r));
  }
  ExperimentRecord single;
  single.metrics.push_back({"y", 42.0});
  records.push_back(std::move(single));

  const auto stats = summarize(records);
  REQUIRE(stats.size() == 2);
  const SummaryStat& x = stats[0];
  CHECK(x.metric == "x");
  CHECK(x.count == 10);
  CHECK(x.mean == doctest::Approx(5.5));
  CHECK(x.min == 1.0);
  CHECK(x.max == 10.0);
  CHECK(x.stddev_defined);
  CHECK(x.stddev == doctest::Approx(3.0276503540974917).epsilon(1e-12));
  // 95% t quantile at 9 degrees of freedom is 2.262
  const double half = 2.262 * 3.0276503540974917 / std::sqrt(10.0);
  CHECK(x.ci_low == doctest::Approx(5.5 - half).epsilon(1e-12));
  CHECK(x.ci_high == doctest::Approx(5.5 + half).epsilon(1e-12));

  const SummaryStat& y = stats[1];
  CHECK(y.count == 1);
  CHECK_FALSE(y.stddev_defined);

  const std::string json = summary_json(stats);
  CHECK(json.find("\"x\"") != std::string::npos);
  CHECK(json.find("\"stddev\": null") != std::string::npos);
  CHECK(json.find("\"ci95\": null") != std::string::npos);
  CHECK(summary_table(stats).find("x") != std::string::npos);

  CHECK_THROWS(summarize({}));
}

TEST_CASE("file output: CSV, plot script, summary JSON, certificates") {
  const std::string base = "/tmp/qperc_harness_test.csv";
  const std::string cert = "/tmp/qperc_harness_test.certs";
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kMinors;
  cfg.dims = {4};
  cfg.p = 1.0;  // full cube: the giant is everything, a minor always exists
  cfg.trials = 1;
  cfg.seed = 5;
  cfg.workers = 1;
  cfg.out = base;
  cfg.cert_out = cert;

  const auto records = run(cfg);
  write_output(cfg, records);

  CHECK(slurp(base) == to_csv(cfg.kind, records));
  const std::string gp = slurp(base + ".gp");
  CHECK(gp.find("set datafile separator ','") != std::string::npos);
  CHECK(gp.find(base) != std::string::npos);
  CHECK(gp.find("minor_order") != std::string::npos);
  const std::string json = slurp(base + ".summary.json");
  CHECK(json.find("\"minor_order\"") != std::string::npos);
  const std::string certs = slurp(cert);
  CHECK(certs.find("branch_set d=4 trial=0 set=0") != std::string::npos);

  std::remove(base.c_str());
  std::remove((base + ".gp").c_str());
  std::remove((base + ".summary.json").c_str());
  std::remove(cert.c_str());
}
