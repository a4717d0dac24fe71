#include "qperc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "qperc/components.hpp"
#include "qperc/decomposition.hpp"
#include "qperc/errors.hpp"
#include "qperc/expansion.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/long_structures.hpp"
#include "qperc/rng.hpp"
#include "qperc/walks.hpp"

namespace qperc {

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {
    {ExperimentKind::kCensus, "census"},
    {ExperimentKind::kExpansion, "expansion"},
    {ExperimentKind::kMixing, "mixing"},
    {ExperimentKind::kDiameter, "diameter"},
    {ExperimentKind::kCycles, "cycles"},
    {ExperimentKind::kMinors, "minors"},
    {ExperimentKind::kDecompose, "decompose"},
    {ExperimentKind::kSprinkle, "sprinkle"},
    {ExperimentKind::kSweep, "sweep"},
};

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void push(ExperimentRecord& rec, const char* metric, double value) {
  rec.metrics.push_back({metric, value});
}

std::string ids_line(const std::string& tag,
                     const std::vector<uint32_t>& ids) {
  std::string line = tag;
  for (uint32_t v : ids) {
    line += ' ';
    line += std::to_string(v);
  }
  return line;
}

// Heuristic knobs that are deliberately not CLI flags; fixed so that runs
// stay comparable across configs.
constexpr uint64_t kCycleBudget = 200000;
constexpr uint64_t kSampledWalkers = 4000;

}  // namespace

const char* kind_name(ExperimentKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

ExperimentKind kind_from_name(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw ConfigError("unknown experiment kind: " + name);
}

double ExperimentConfig::probability_for(uint32_t d) const {
  if (p && epsilon)
    throw ConfigError("config: give either p or epsilon, not both");
  const double prob = p ? *p : (1.0 + epsilon.value_or(1.0)) / d;
  if (!(prob >= 0.0 && prob <= 1.0))
    throw ConfigError("config: edge probability " + fmt_double(prob) +
                      " outside [0,1] at d=" + std::to_string(d));
  return prob;
}

void ExperimentConfig::validate() const {
  if (dims.empty()) throw ConfigError("config: empty d list");
  for (uint32_t d : dims)
    if (d < HypercubeSubgraph::kMinDim || d > HypercubeSubgraph::kMaxDim)
      throw ConfigError("config: d=" + std::to_string(d) + " outside [" +
                        std::to_string(HypercubeSubgraph::kMinDim) + "," +
                        std::to_string(HypercubeSubgraph::kMaxDim) + "]");
  if (trials < 1) throw ConfigError("config: trials must be >= 1");
  if (p && !(*p >= 0.0 && *p <= 1.0))
    throw ConfigError("config: p outside [0,1]");
  if (q2 && !(*q2 >= 0.0 && *q2 <= 1.0))
    throw ConfigError("config: q2 outside [0,1]");
  if (!(tol > 0.0)) throw ConfigError("config: tol must be positive");
  if (cap_exact < 1) throw ConfigError("config: cap-exact must be >= 1");
  for (uint32_t d : dims) {
    const double prob = probability_for(d);
    if (kind == ExperimentKind::kSprinkle) {
      if (!q2) throw ConfigError("config: sprinkle needs q2");
      if (*q2 > prob)
        throw ConfigError("config: q2 > p at d=" + std::to_string(d));
      if (prob >= 1.0 && *q2 < 1.0)
        throw ConfigError("config: p=1 requires q2=1");
    }
  }
}

uint32_t ExperimentConfig::resolve_workers() const {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("QPERC_WORKERS")) {
    const long w = std::strtol(env, nullptr, 10);
    if (w > 0) return static_cast<uint32_t>(w);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

// The giant component as a Graph, or n = 0 when the giant is a singleton.
Graph giant_graph(const HypercubeSubgraph& g, const ComponentCensus& c) {
  if (c.sizes[0] < 2) return Graph{};
  return induced_graph(g, c.component_vertices(0));
}

ExperimentRecord run_one(const ExperimentConfig& cfg, uint32_t d,
                         uint32_t trial, uint64_t trial_seed) {
  ExperimentRecord rec;
  rec.d = d;
  rec.trial = trial;
  rec.trial_seed = trial_seed;
  rec.p = cfg.probability_for(d);
  GenerationParams params{d, rec.p, -1.0, trial_seed};

  switch (cfg.kind) {
    case ExperimentKind::kCensus:
    case ExperimentKind::kSweep: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "components", static_cast<double>(c.sizes.size()));
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      push(rec, "giant_fraction", giant_fraction(c, d));
      push(rec, "second_order",
           static_cast<double>(second_largest_order(c)));
      push(rec, "edges", static_cast<double>(g.edge_count()));
      break;
    }

    case ExperimentKind::kExpansion: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      push(rec, "thick_vertices", static_cast<double>(degree_census(g)));
      const Graph giant = giant_graph(g, c);
      if (giant.n >= 2 && giant.num_edges() >= 1) {
        const SpectralSummary ss = spectral_summary(giant, cfg.tol);
        push(rec, "lambda2", ss.lambda2);
        push(rec, "gap", ss.gap);
        push(rec, "sweep_phi", ss.sweep_phi);
        push(rec, "cheeger_lower", ss.cheeger_lower);
        push(rec, "cheeger_upper", ss.cheeger_upper);
        push(rec, "lanczos_iterations", static_cast<double>(ss.iterations));
        push(rec, "residual", ss.residual);
      }
      break;
    }

    case ExperimentKind::kMixing: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      const Graph giant = giant_graph(g, c);
      if (giant.n < 2 || giant.num_edges() < 1) break;
      if (giant.n <= 4096) {
        const MixingReport rep = mixing_time_exact(giant);
        push(rec, "t_mix", static_cast<double>(rep.t_mix));
        push(rec, "sampled", 0.0);
        push(rec, "heuristic_starts", rep.lower_bound_only ? 1.0 : 0.0);
      } else {
        const uint64_t horizon = 64ull * d * d;
        const MixingReport rep = sampled_mixing(
            giant, kSampledWalkers, horizon, derive_seed(trial_seed, 11));
        push(rec, "t_mix", static_cast<double>(rep.t_mix));
        push(rec, "sampled", 1.0);
        push(rec, "mixed", rep.mixed ? 1.0 : 0.0);
      }
      const SpectralSummary ss = spectral_summary(giant, cfg.tol);
      const double phi_cert =
          giant.n <= 22 ? cheeger_exact(giant).phi : ss.cheeger_lower;
      push(rec, "gap", ss.gap);
      if (phi_cert > 0.0 && phi_cert <= 0.5)
        push(rec, "mixing_bound",
             mixing_bound_cheeger(phi_cert, pi_min_exact(giant)));
      break;
    }

    case ExperimentKind::kDiameter: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      const Graph giant = giant_graph(g, c);
      if (giant.n < 1) break;
      const DiameterResult exact =
          diameter(giant, DiameterMode::kIfub, cfg.cap_exact);
      const DiameterResult lower =
          diameter(giant, DiameterMode::kDoubleSweepLower);
      push(rec, "diameter", static_cast<double>(exact.value));
      push(rec, "diameter_lb", static_cast<double>(lower.value));
      push(rec, "bfs_rounds", static_cast<double>(exact.bfs_count));
      break;
    }

    case ExperimentKind::kCycles: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      const Graph giant = giant_graph(g, c);
      if (giant.n < 3) {
        push(rec, "cycle_len", 0.0);
        break;
      }
      const CycleCertificate cyc = longest_cycle_heuristic(
          giant, kCycleBudget, derive_seed(trial_seed, 13));
      push(rec, "cycle_len", static_cast<double>(cyc.length()));
      push(rec, "cycle_frac",
           std::ldexp(static_cast<double>(cyc.length()), -static_cast<int>(d)));
      if (!cfg.cert_out.empty() && !cyc.empty())
        rec.certificates.push_back(ids_line(
            "cycle d=" + std::to_string(d) + " trial=" + std::to_string(trial),
            cyc.vertices));
      break;
    }

    case ExperimentKind::kMinors: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      const Graph giant = giant_graph(g, c);
      if (giant.n < 2) break;
      const uint32_t target = std::min<uint32_t>(2 * d, 48);
      const MinorCertificate cert =
          greedy_minor(giant, target, derive_seed(trial_seed, 17));
      push(rec, "minor_order", static_cast<double>(cert.order()));
      if (!cfg.cert_out.empty())
        for (size_t i = 0; i < cert.branch_sets.size(); ++i)
          rec.certificates.push_back(
              ids_line("branch_set d=" + std::to_string(d) +
                           " trial=" + std::to_string(trial) + " set=" +
                           std::to_string(i),
                       cert.branch_sets[i]));
      break;
    }

    case ExperimentKind::kDecompose: {
      const auto g = generate(params);
      const auto c = census(g);
      push(rec, "giant_order", static_cast<double>(c.sizes[0]));
      try {
        const auto giant_vertices = c.component_vertices(0);
        const double s = std::max(1.0, static_cast<double>(c.sizes[0]) / 2.0);
        const PieceFamily fam = piece_family(g, giant_vertices, s, 1.0);
        push(rec, "ell", static_cast<double>(fam.ell));
        push(rec, "pieces", static_cast<double>(fam.deco.pieces.size()));
        push(rec, "max_piece",
             static_cast<double>(fam.deco.pieces.front().size()));
        push(rec, "min_piece",
             static_cast<double>(fam.deco.pieces.back().size()));
        push(rec, "oversized_vs_dim",
             static_cast<double>(fam.oversized_vs_dim));
      } catch (const std::invalid_argument&) {
        push(rec, "skipped", 1.0);  // giant too small for the requested ell
      }
      break;
    }

    case ExperimentKind::kSprinkle: {
      params.q2 = *cfg.q2;
      rec.q2 = cfg.q2;
      const SprinkledPair sp = generate_sprinkled(params);
      const auto c1 = census(sp.q1);
      const auto c2 = census(sp.q2);
      push(rec, "q1_prob", sp.q1_prob);
      push(rec, "edges_q1", static_cast<double>(sp.q1.edge_count()));
      push(rec, "edges_sprinkle",
           static_cast<double>(sp.sprinkle.edge_count()));
      push(rec, "edges_q2", static_cast<double>(sp.q2.edge_count()));
      push(rec, "nested", sp.q1.subgraph_of(sp.q2) ? 1.0 : 0.0);
      push(rec, "giant1_order", static_cast<double>(c1.sizes[0]));
      push(rec, "giant2_order", static_cast<double>(c2.sizes[0]));
      const AttachmentReport ar = attachment_report(sp.q1, sp.q2);
      push(rec, "giant_nested", ar.giant_nested ? 1.0 : 0.0);
      push(rec, "max_attachment", static_cast<double>(ar.max_attachment));
      push(rec, "two_hop_min",
           static_cast<double>(two_hop_density(sp.q1, c1)));
      break;
    }
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run(const ExperimentConfig& config) {
  config.validate();
  const uint64_t total =
      static_cast<uint64_t>(config.dims.size()) * config.trials;
  uint32_t workers = config.resolve_workers();
  if (static_cast<uint64_t>(workers) > total)
    workers = static_cast<uint32_t>(total);
  std::vector<ExperimentRecord> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<uint64_t> next{0};

  auto work = [&]() {
    for (;;) {
      const uint64_t gi = next.fetch_add(1);
      if (gi >= total) return;
      const uint32_t d = config.dims[gi / config.trials];
      const uint32_t trial = static_cast<uint32_t>(gi % config.trials);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        results[gi] = run_one(config, d, trial, derive_seed(config.seed, gi));
      } catch (...) {
        errors[gi] = std::current_exception();
        continue;
      }
      if (config.timing) {
        const auto t1 = std::chrono::steady_clock::now();
        results[gi].wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      results[gi].workers = workers;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);  // earliest trial wins
  return results;
}

std::string to_csv(ExperimentKind kind,
                   const std::vector<ExperimentRecord>& records) {
  std::string out = "experiment,d,p,q2,trial,seed,metric,value,wall_ms,workers\n";
  const std::string name = kind_name(kind);
  for (const auto& r : records) {
    const std::string prefix =
        name + "," + std::to_string(r.d) + "," + fmt_double(r.p) + "," +
        (r.q2 ? fmt_double(*r.q2) : std::string()) + "," +
        std::to_string(r.trial) + "," + std::to_string(r.trial_seed) + ",";
    const std::string suffix = "," + fmt_double(r.wall_ms) + "," +
                               std::to_string(r.workers) + "\n";
    for (const auto& m : r.metrics)
      out += prefix + m.metric + "," + fmt_double(m.value) + suffix;
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& contents) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const size_t n = std::fwrite(contents.data(), 1, contents.size(), f);
  const int rc = std::fclose(f);
  if (n != contents.size() || rc != 0)
    throw std::runtime_error("short write: " + path);
}

std::vector<std::string> metric_names_in_order(
    const std::vector<ExperimentRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records)
    for (const auto& m : r.metrics)
      if (std::find(names.begin(), names.end(), m.metric) == names.end())
        names.push_back(m.metric);
  return names;
}

std::string gnuplot_script(const std::string& csv_path,
                           const std::vector<ExperimentRecord>& records) {
  const auto names = metric_names_in_order(records);
  std::string s;
  s += "# companion plot script; run: gnuplot " + csv_path + ".gp\n";
  s += "set datafile separator ','\n";
  s += "set key outside\n";
  s += "set xlabel 'd'\n";
  s += "set ylabel 'value'\n";
  s += "set term pngcairo size 1100,700\n";
  s += "set output '" + csv_path + ".png'\n";
  s += "plot \\\n";
  for (size_t i = 0; i < names.size(); ++i) {
    s += "  '" + csv_path + "' using 2:(strcol(7) eq '" + names[i] +
         "' ? column(8) : 1/0) with points title '" + names[i] + "'";
    s += (i + 1 < names.size()) ? ", \\\n" : "\n";
  }
  return s;
}

// two-sided 95% t quantiles for 1..29 degrees of freedom, then the normal
double t_quantile_975(uint64_t df) {
  static constexpr double kTable[29] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045};
  if (df == 0) return 0.0;
  if (df <= 29) return kTable[df - 1];
  return 1.959964;
}

}  // namespace

std::vector<SummaryStat> summarize(
    const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  const auto names = metric_names_in_order(records);
  std::vector<SummaryStat> stats;
  for (const auto& name : names) {
    std::vector<double> xs;
    for (const auto& r : records)
      for (const auto& m : r.metrics)
        if (m.metric == name) xs.push_back(m.value);
    SummaryStat st;
    st.metric = name;
    st.count = xs.size();
    st.min = *std::min_element(xs.begin(), xs.end());
    st.max = *std::max_element(xs.begin(), xs.end());
    double sum = 0.0;
    for (double x : xs) sum += x;
    st.mean = sum / static_cast<double>(xs.size());
    if (xs.size() >= 2) {
      double ss = 0.0;
      for (double x : xs) ss += (x - st.mean) * (x - st.mean);
      st.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
      st.stddev_defined = true;
      const double half = t_quantile_975(xs.size() - 1) * st.stddev /
                          std::sqrt(static_cast<double>(xs.size()));
      st.ci_low = st.mean - half;
      st.ci_high = st.mean + half;
    }
    stats.push_back(std::move(st));
  }
  return stats;
}

std::string summary_json(const std::vector<SummaryStat>& stats) {
  std::string s = "{\n  \"metrics\": {\n";
  for (size_t i = 0; i < stats.size(); ++i) {
    const auto& st = stats[i];
    s += "    \"" + st.metric + "\": {\"count\": " + std::to_string(st.count) +
         ", \"mean\": " + fmt_double(st.mean);
    if (st.stddev_defined) {
      s += ", \"stddev\": " + fmt_double(st.stddev) + ", \"ci95\": [" +
           fmt_double(st.ci_low) + ", " + fmt_double(st.ci_high) + "]";
    } else {
      s += ", \"stddev\": null, \"ci95\": null";
    }
    s += ", \"min\": " + fmt_double(st.min) +
         ", \"max\": " + fmt_double(st.max) + "}";
    s += (i + 1 < stats.size()) ? ",\n" : "\n";
  }
  s += "  }\n}\n";
  return s;
}

std::string summary_table(const std::vector<SummaryStat>& stats) {
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %7s %14s %14s %14s %14s\n", "metric",
                "count", "mean", "stddev", "min", "max");
  s += buf;
  for (const auto& st : stats) {
    std::snprintf(buf, sizeof buf, "%-20s %7llu %14.6g %14s %14.6g %14.6g\n",
                  st.metric.c_str(),
                  static_cast<unsigned long long>(st.count), st.mean,
                  st.stddev_defined ? fmt_double(st.stddev).substr(0, 13).c_str()
                                    : "n/a",
                  st.min, st.max);
    s += buf;
  }
  return s;
}

void write_output(const ExperimentConfig& config,
                  const std::vector<ExperimentRecord>& records) {
  const std::string csv = to_csv(config.kind, records);
  if (config.out.empty()) {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  } else {
    write_file(config.out, csv);
    write_file(config.out + ".gp", gnuplot_script(config.out, records));
    const auto stats = summarize(records);
    write_file(config.out + ".summary.json", summary_json(stats));
    std::fputs(summary_table(stats).c_str(), stdout);
  }
  if (!config.cert_out.empty()) {
    std::string lines;
    for (const auto& r : records)
      for (const auto& cert : r.certificates) lines += cert + "\n";
    write_file(config.cert_out, lines);
  }
}

}  // namespace qperc
