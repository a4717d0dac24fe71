// Command-line front end: one subcommand per experiment kind plus `verify`
// (the self-check suite). All knobs work both as flags and as key=value lines
// in a --config file; flags win. Exit codes: 0 ok, 2 bad config, 3 self-check
// failure, 4 exact-computation cap exceeded, 1 anything else.

#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qperc/acceptance.hpp"
#include "qperc/components.hpp"
#include "qperc/errors.hpp"
#include "qperc/harness.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/rng.hpp"

using namespace qperc;

int main(int argc, char** argv) {
  CLI::App app{"percolation laboratory for the d-dimensional hypercube"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "flat key=value config file; command-line flags win");

  std::vector<uint32_t> dims{10};
  double epsilon = 1.0, p = 0.0, q2 = 0.0, tol = 1e-10;
  uint32_t trials = 1, workers = 0;
  uint64_t seed = 1, cap_exact = uint64_t{1} << 16;
  std::string out, cert_out, snap_in, snap_out;
  bool timing = false;

  app.add_option("--d", dims, "dimension or comma-separated dimensions")
      ->delimiter(',');
  auto* oe =
      app.add_option("--epsilon", epsilon, "supercriticality: p = (1+eps)/d");
  auto* op = app.add_option("--p", p, "edge probability (instead of --epsilon)");
  auto* oq = app.add_option("--q2", q2, "second-round sprinkling probability");
  app.add_option("--trials", trials, "independent trials per dimension");
  app.add_option("--seed", seed, "master seed; trial seeds derive from it");
  app.add_option("--out", out, "CSV path (default: stdout); also emits a plot "
                               "script and a JSON summary next to it");
  app.add_option("--workers", workers,
                 "worker threads (default: QPERC_WORKERS or hardware)");
  app.add_option("--cap-exact", cap_exact,
                 "vertex cap for exact all-pairs computations");
  app.add_option("--tol", tol, "spectral residual tolerance");
  app.add_flag("--timing", timing,
               "fill the wall_ms CSV column (off keeps output byte-stable)");
  app.add_option("--cert", cert_out,
                 "write cycle / branch-set certificates to this file");
  auto* osnap_out = app.add_option(
      "--snapshot-out", snap_out, "census only: save the trial-0 graph");
  auto* osnap_in = app.add_option(
      "--snapshot-in", snap_in,
      "census only: measure a saved graph instead of generating");

  const std::pair<const char*, const char*> kinds[] = {
      {"census", "component counts, giant order and fraction"},
      {"expansion", "degree census, matchings, spectral bottleneck bounds"},
      {"mixing", "lazy-walk mixing time, exact or sampled"},
      {"diameter", "giant-component diameter (iFUB) with a BFS lower bound"},
      {"cycles", "long-cycle search with optional certificates"},
      {"minors", "greedy clique-minor order with branch-set certificates"},
      {"decompose", "tree-piece decomposition of the giant"},
      {"sprinkle", "two-round exposure: nesting and attachment statistics"},
      {"sweep", "census across dimensions at p = (1+eps)/d"},
  };
  for (const auto& [name, blurb] : kinds)
    app.add_subcommand(name, blurb)->fallthrough();
  auto* verify =
      app.add_subcommand("verify", "run the full self-check suite");
  verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; bad usage is 2
  }

  try {
    if (verify->parsed()) return all_passed(run_acceptance(true)) ? 0 : 3;

    ExperimentConfig cfg;
    cfg.kind = kind_from_name(app.get_subcommands().front()->get_name());
    cfg.dims = dims;
    if (oe->count()) cfg.epsilon = epsilon;
    if (op->count()) cfg.p = p;
    if (oq->count()) cfg.q2 = q2;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.cap_exact = cap_exact;
    cfg.tol = tol;
    cfg.timing = timing;
    cfg.out = out;
    cfg.cert_out = cert_out;

    if (osnap_in->count()) {
      if (cfg.kind != ExperimentKind::kCensus)
        throw ConfigError("--snapshot-in only applies to census");
      uint64_t snap_seed = 0;
      const HypercubeSubgraph g = load_snapshot(snap_in, &snap_seed);
      const auto c = census(g);
      ExperimentRecord rec;
      rec.d = g.dim();
      rec.p = 0.0;  // not recorded in snapshots
      rec.trial = 0;
      rec.trial_seed = snap_seed;
      rec.workers = 1;
      rec.metrics = {
          {"components", static_cast<double>(c.sizes.size())},
          {"giant_order", static_cast<double>(c.sizes[0])},
          {"giant_fraction", giant_fraction(c, g.dim())},
          {"second_order", static_cast<double>(second_largest_order(c))},
          {"edges", static_cast<double>(g.edge_count())},
      };
      write_output(cfg, {rec});
      return 0;
    }

    cfg.validate();
    if (osnap_out->count()) {
      if (cfg.kind != ExperimentKind::kCensus)
        throw ConfigError("--snapshot-out only applies to census");
      const uint64_t s0 = derive_seed(cfg.seed, 0);
      save_snapshot(
          snap_out,
          generate({cfg.dims[0], cfg.probability_for(cfg.dims[0]), -1.0, s0}),
          s0);
    }
    write_output(cfg, run(cfg));
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "cap exceeded: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
