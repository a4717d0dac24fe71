#pragma once
// Experiment orchestration: validated configs, deterministic Monte-Carlo
// trials over a worker pool, long-format CSV with a gnuplot companion
// script, and per-metric summaries. The CSV byte stream is a determinism
// contract: same config + worker count => identical bytes (wall-clock timing
// is opt-in because it breaks that contract).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qperc {

enum class ExperimentKind {
  kCensus,
  kExpansion,
  kMixing,
  kDiameter,
  kCycles,
  kMinors,
  kDecompose,
  kSprinkle,
  kSweep,
};

const char* kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kCensus;
  std::vector<uint32_t> dims = {10};  // >1 entry = sweep over d
  std::optional<double> epsilon;      // p = (1 + epsilon)/d
  std::optional<double> p;            // explicit p; exclusive with epsilon
  std::optional<double> q2;           // second sprinkling round
  uint32_t trials = 1;
  uint64_t seed = 1;
  uint32_t workers = 0;  // 0 = QPERC_WORKERS env, else hardware threads
  uint64_t cap_exact = uint64_t{1} << 16;
  double tol = 1e-10;
  bool timing = false;   // fill wall_ms with real times
  std::string out;       // CSV path; empty = CSV to stdout
  std::string cert_out;  // optional certificate dump (cycles/minors)

  // Edge probability for dimension d, from p or epsilon (exactly one must be
  // set; kSweep/kCensus default epsilon=1 if neither). Throws ConfigError.
  double probability_for(uint32_t d) const;
  void validate() const;  // throws ConfigError with field diagnostics
  uint32_t resolve_workers() const;
};

struct MetricRow {
  std::string metric;
  double value = 0.0;
};

struct ExperimentRecord {
  uint32_t d = 0;
  double p = 0.0;
  std::optional<double> q2;
  uint32_t trial = 0;       // trial index within this d
  uint64_t trial_seed = 0;  // derive_seed(config.seed, global trial index)
  std::vector<MetricRow> metrics;
  double wall_ms = 0.0;
  uint32_t workers = 1;
  std::vector<std::string> certificates;  // serialized vertex-id lists
};

// Runs trials x dims on a worker pool; records are returned in (d, trial)
// order regardless of scheduling, so output bytes never depend on timing.
std::vector<ExperimentRecord> run(const ExperimentConfig& config);

// Long format, one metric per row:
// experiment,d,p,q2,trial,seed,metric,value,wall_ms,workers
std::string to_csv(ExperimentKind kind,
                   const std::vector<ExperimentRecord>& records);

// Writes the CSV to config.out (stdout if empty). With a file target, also
// emits <out>.gp (gnuplot script referencing only that CSV), a summary JSON
// next to it, and certificate dumps when requested.
void write_output(const ExperimentConfig& config,
                  const std::vector<ExperimentRecord>& records);

struct SummaryStat {
  std::string metric;
  uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample std; undefined when count == 1
  bool stddev_defined = false;
  double min = 0.0;
  double max = 0.0;
  double ci_low = 0.0;  // 95% CI, t-quantile below 30 samples
  double ci_high = 0.0;
};

std::vector<SummaryStat> summarize(const std::vector<ExperimentRecord>& records);
std::string summary_json(const std::vector<SummaryStat>& stats);
std::string summary_table(const std::vector<SummaryStat>& stats);

}  // namespace qperc
