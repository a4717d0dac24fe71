#include "qperc/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qperc/analytic.hpp"
#include "qperc/components.hpp"
#include "qperc/decomposition.hpp"
#include "qperc/expansion.hpp"
#include "qperc/graph.hpp"
#include "qperc/harness.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/long_structures.hpp"
#include "qperc/rng.hpp"
#include "qperc/walks.hpp"

namespace qperc {

namespace {

// Master seed of the suite. All criteria derive their streams from it, so a
// single constant pins every sampled quantity below.
constexpr uint64_t kSuiteSeed = 0xC0FFEE12;

// Fitted suite constants, calibrated once on kSuiteSeed and frozen. They are
// empirical scale factors, not theorems: the shape of each inequality is
// fixed, these set the constant in front at desk scale.
constexpr double kPathPackC = 1.0;    // paths >= C * t * (1 - log2(t)/d)
constexpr double kMixLowerC = 1.0;    // sampled t_mix >= C / (2 * gap)
constexpr uint64_t kCycleBudget = 200000;  // rotation steps per cycle search
constexpr uint32_t kMinorTarget = 14;      // branch sets attempted at d=12

// Frozen root of g = 1 - exp(-(1+delta) g) at delta = 0.5, from the bisection
// oracle in the unit tests.
constexpr double kGammaHalf = 0.5828116438658113;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

uint64_t suite_stream(uint64_t tag, uint64_t index) {
  return derive_seed(derive_seed(kSuiteSeed, tag), index);
}

// s distinct values from 0..n-1 by partial Fisher-Yates.
std::vector<uint32_t> sample_distinct(Xoshiro256ss& rng, uint32_t n,
                                      uint32_t s) {
  std::vector<uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<uint32_t> out(s);
  for (uint32_t i = 0; i < s; ++i) {
    const uint32_t j = i + static_cast<uint32_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
    out[i] = pool[i];
  }
  return out;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// 1: survival probability fixed point against frozen oracle values
// ---------------------------------------------------------------------------
CriterionResult c1_survival() {
  CriterionResult r{1, "survival-fixed-point"};
  const double g1 = survival_probability(1.0);
  const double gh = survival_probability(0.5);
  const double gs = survival_probability(0.01);
  const double small_ratio = gs / 0.02;
  const bool ok1 = std::abs(g1 - 0.796812) <= 1e-6;
  const bool ok2 = std::abs(gh - 0.5828) <= 1e-3;
  const bool ok3 = small_ratio >= 0.9 && small_ratio <= 1.0;
  r.pass = ok1 && ok2 && ok3;
  r.detail = fmt("gamma(1)=%.9f gamma(.5)=%.9f gamma(.01)/.02=%.5f", g1, gh,
                 small_ratio);
  return r;
}

// ---------------------------------------------------------------------------
// 2 + 3 share a census corpus: 100 trials at p = 1.5/d for d in {12,14,16}.
// ---------------------------------------------------------------------------
struct CensusCorpus {
  std::vector<double> fractions;
  uint64_t max_second = 0;
};

const CensusCorpus& corpus(uint32_t d) {
  static std::map<uint32_t, CensusCorpus> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  CensusCorpus c;
  for (uint32_t t = 0; t < 100; ++t) {
    const auto g = generate({d, 1.5 / d, -1.0, suite_stream(2, (uint64_t(d) << 32) | t)});
    const auto cs = census(g);
    c.fractions.push_back(giant_fraction(cs, d));
    c.max_second = std::max(c.max_second, second_largest_order(cs));
  }
  return cache.emplace(d, std::move(c)).first->second;
}

CriterionResult c2_giant_fraction() {
  CriterionResult r{2, "giant-fraction-mean"};
  const auto& c = corpus(16);
  const double mean =
      std::accumulate(c.fractions.begin(), c.fractions.end(), 0.0) /
      static_cast<double>(c.fractions.size());
  r.pass = std::abs(mean - kGammaHalf) <= 0.03;
  r.detail = fmt("mean=%.5f target=%.5f |diff|=%.5f (100 trials, d=16)", mean,
                 kGammaHalf, std::abs(mean - kGammaHalf));
  return r;
}

CriterionResult c3_second_component() {
  CriterionResult r{3, "second-component-scaling"};
  std::vector<double> lx, ly;
  bool size_ok = true;
  uint64_t worst = 0;
  for (uint32_t d : {12u, 14u, 16u}) {
    const uint64_t m = corpus(d).max_second;
    lx.push_back(std::log(static_cast<double>(d)));
    ly.push_back(std::log(static_cast<double>(std::max<uint64_t>(m, 1))));
    if (d == 16) {
      worst = m;
      size_ok = m <= 40ull * d;
    }
  }
  const double slope = ls_slope(lx, ly);
  r.pass = size_ok && slope < 2.0;
  r.detail = fmt("max L2 at d=16: %llu (cap 640); log-log slope %.3f",
                 static_cast<unsigned long long>(worst), slope);
  return r;
}

// ---------------------------------------------------------------------------
// 4: edge-isoperimetry verifier on random sets and all small subcubes
// ---------------------------------------------------------------------------
CriterionResult c4_isoperimetry() {
  CriterionResult r{4, "isoperimetry-verifier"};
  const uint32_t d = 12;
  const uint32_t n = 1u << d;
  Xoshiro256ss rng(suite_stream(4, 0));
  uint64_t violations = 0;
  for (uint32_t it = 0; it < 10000; ++it) {
    const uint32_t s = 1 + static_cast<uint32_t>(rng.below(n / 2));
    if (!verify_harper(d, sample_distinct(rng, n, s)).ok) ++violations;
  }

  // Every subcube (coordinate mask + base point) must meet the bound with
  // equality: |A| (d - log2|A|) boundary edges exactly.
  const auto full = HypercubeSubgraph::full(d);
  std::vector<uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  const Graph cube = induced_graph(full, all);
  uint64_t unequal = 0;
  std::vector<uint32_t> A;
  for (uint32_t mask = 0; mask < n; ++mask) {
    const int k = std::popcount(mask);
    if (k > 11) continue;
    const double bound = harper_bound(uint64_t{1} << k, d);
    for (uint32_t base = 0; base < n; ++base) {
      if (base & mask) continue;
      A.clear();
      for (uint32_t x = mask;; x = (x - 1) & mask) {
        A.push_back(base | x);
        if (x == 0) break;
      }
      const uint64_t cut = cut_stats(cube, A).boundary_edges;
      if (std::abs(static_cast<double>(cut) - bound) > 1e-6) ++unequal;
    }
  }
  r.pass = violations == 0 && unequal == 0;
  r.detail = fmt("random-set violations: %llu/10000; unequal subcubes: %llu",
                 static_cast<unsigned long long>(violations),
                 static_cast<unsigned long long>(unequal));
  return r;
}

// ---------------------------------------------------------------------------
// 5: spectral sandwich gap/2 <= Phi <= min(sweep, sqrt(2 gap)) on small graphs
// ---------------------------------------------------------------------------
Graph random_connected_gnp(Xoshiro256ss& rng) {
  for (;;) {
    const uint32_t n = 4 + static_cast<uint32_t>(rng.below(15));
    const double p = 0.25 + 0.5 * rng.uniform();
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t v = u + 1; v < n; ++v)
        if (rng.uniform() < p) edges.push_back({u, v});
    Graph g = graph_from_edges(n, edges);
    if (g.connected() && g.num_edges() >= 1) return g;
  }
}

Graph random_percolation_component(Xoshiro256ss& rng, uint64_t tag) {
  for (uint64_t attempt = 0;; ++attempt) {
    const double p = 0.22 + 0.1 * rng.uniform();
    const auto g = generate({5, p, -1.0, suite_stream(tag, attempt)});
    const auto cs = census(g);
    for (size_t id = 0; id < cs.sizes.size(); ++id)
      if (cs.sizes[id] >= 2 && cs.sizes[id] <= 18)
        return induced_graph(g, cs.component_vertices(static_cast<int32_t>(id)));
  }
}

CriterionResult c5_cheeger_sandwich() {
  CriterionResult r{5, "cheeger-sandwich"};
  Xoshiro256ss rng(suite_stream(5, 0));
  uint64_t violations = 0;
  double worst_lo = 1e300, worst_hi = 1e300;
  for (uint32_t i = 0; i < 50; ++i) {
    const Graph g = (i % 2 == 0) ? random_percolation_component(rng, 500 + i)
                                 : random_connected_gnp(rng);
    const CheegerExact ce = cheeger_exact(g);
    const SpectralSummary ss = spectral_summary(g, 1e-10);
    const double lo = ce.phi - ss.cheeger_lower;       // >= 0 expected
    const double hi = ss.cheeger_upper - ce.phi;       // >= 0 expected
    worst_lo = std::min(worst_lo, lo);
    worst_hi = std::min(worst_hi, hi);
    if (lo < -1e-9 || hi < -1e-9) ++violations;
  }
  r.pass = violations == 0;
  r.detail = fmt("violations: %llu/50; slack min (lower %.3e, upper %.3e)",
                 static_cast<unsigned long long>(violations), worst_lo,
                 worst_hi);
  return r;
}

// ---------------------------------------------------------------------------
// 6: exact mixing time vs (2/Phi^2) ln(4/pi_min) on every small component
// ---------------------------------------------------------------------------
CriterionResult c6_mixing_bound() {
  CriterionResult r{6, "mixing-vs-bottleneck-bound"};
  uint64_t violations = 0, checked = 0;
  double worst_ratio = 0.0;
  for (uint32_t trial = 0; trial < 50; ++trial) {
    const auto g = generate({9, 1.5 / 9, -1.0, suite_stream(6, trial)});
    const auto cs = census(g);
    for (size_t id = 0; id < cs.sizes.size(); ++id) {
      if (cs.sizes[id] < 2) continue;
      const Graph comp =
          induced_graph(g, cs.component_vertices(static_cast<int32_t>(id)));
      const MixingReport rep = mixing_time_exact(comp);
      const double phi = comp.n <= 22 ? cheeger_exact(comp).phi
                                      : spectral_summary(comp).cheeger_lower;
      const double bound = mixing_bound_cheeger(phi, pi_min_exact(comp));
      ++checked;
      worst_ratio =
          std::max(worst_ratio, static_cast<double>(rep.t_mix) / bound);
      if (static_cast<double>(rep.t_mix) > bound) ++violations;
    }
  }
  r.pass = violations == 0;
  r.detail = fmt("violations: %llu/%llu components; worst t_mix/bound %.4f",
                 static_cast<unsigned long long>(violations),
                 static_cast<unsigned long long>(checked), worst_ratio);
  return r;
}

// ---------------------------------------------------------------------------
// 7: tree decomposition postconditions on random recursive trees
// ---------------------------------------------------------------------------
CriterionResult c7_tree_decomposition() {
  CriterionResult r{7, "tree-decomposition-postconditions"};
  Xoshiro256ss rng(suite_stream(7, 0));
  uint64_t violations = 0, runs = 0;
  for (uint32_t t = 0; t < 1000; ++t) {
    const uint32_t n = 50 + static_cast<uint32_t>(rng.below(9951));
    std::vector<uint32_t> parent(n);
    parent[0] = 0;
    for (uint32_t i = 1; i < n; ++i)
      parent[i] = static_cast<uint32_t>(rng.below(i));
    const RootedTree tree = tree_from_parents(parent, 0);
    for (uint64_t ell : {2ull, 7ull, 23ull}) {
      const PieceDecomposition deco = tree_decompose(tree, ell);
      ++runs;
      if (!check_decomposition(tree, ell, deco, 3).all()) ++violations;
    }
  }
  r.pass = violations == 0;
  r.detail = fmt("violations: %llu/%llu decompositions",
                 static_cast<unsigned long long>(violations),
                 static_cast<unsigned long long>(runs));
  return r;
}

// ---------------------------------------------------------------------------
// 8: disjoint path packings -- exact vs brute force, greedy lower bound, and
//    the sprinkled piece-family packing inequality
// ---------------------------------------------------------------------------

// Minimum vertex set whose removal disconnects A from B (the set may include
// endpoints); brute force over all subsets, n <= 12.
uint32_t brute_min_separator(const Graph& g, const std::vector<uint32_t>& A,
                             const std::vector<uint32_t>& B) {
  const uint32_t n = g.n;
  uint32_t best = n;
  std::vector<uint32_t> stack;
  std::vector<uint8_t> seen(n);
  for (uint32_t S = 0; S < (1u << n); ++S) {
    const uint32_t size = static_cast<uint32_t>(std::popcount(S));
    if (size >= best) continue;
    // BFS from A \ S avoiding S; separated iff no B \ S vertex is reached.
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    for (uint32_t a : A)
      if (!((S >> a) & 1)) {
        seen[a] = 1;
        stack.push_back(a);
      }
    bool hit = false;
    while (!stack.empty() && !hit) {
      const uint32_t v = stack.back();
      stack.pop_back();
      for (uint32_t b : B)
        if (b == v) hit = true;
      for (uint32_t u : g.neighbors(v))
        if (!((S >> u) & 1) && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    if (!hit) best = size;
  }
  return best;
}

CriterionResult c8_disjoint_paths() {
  CriterionResult r{8, "disjoint-path-packing"};
  Xoshiro256ss rng(suite_stream(8, 0));
  uint64_t menger_bad = 0, greedy_bad = 0;
  for (uint32_t it = 0; it < 200; ++it) {
    const uint32_t n = 4 + static_cast<uint32_t>(rng.below(9));
    const double p = 0.2 + 0.6 * rng.uniform();
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t u = 0; u < n; ++u)
      for (uint32_t v = u + 1; v < n; ++v)
        if (rng.uniform() < p) edges.push_back({u, v});
    const Graph g = graph_from_edges(n, edges);
    uint32_t na, nb;
    do {
      na = 1 + static_cast<uint32_t>(rng.below(3));
      nb = 1 + static_cast<uint32_t>(rng.below(3));
    } while (na + nb > n);
    const auto pick = sample_distinct(rng, n, na + nb);
    const std::vector<uint32_t> A(pick.begin(), pick.begin() + na);
    const std::vector<uint32_t> B(pick.begin() + na, pick.end());
    const uint32_t flow =
        static_cast<uint32_t>(disjoint_paths_maxflow(g, A, B).paths.size());
    if (flow != brute_min_separator(g, A, B)) ++menger_bad;
    const uint32_t greedy = static_cast<uint32_t>(
        disjoint_short_paths_greedy(g, A, B, n).paths.size());
    if (greedy > flow) ++greedy_bad;
  }

  // Sprinkled piece-family packing: pieces of the first-round giant are split
  // at random and short paths are packed in the second-round graph alone.
  uint64_t packing_ok = 0, packing_trials = 0;
  const uint32_t d = 12;
  const uint32_t nq = 1u << d;
  std::vector<uint32_t> all(nq);
  std::iota(all.begin(), all.end(), 0u);
  double worst_ratio = 1e300;
  for (uint32_t trial = 0; trial < 100; ++trial) {
    const SprinkledPair sp =
        generate_sprinkled({d, 1.5 / d, 0.25 / d, suite_stream(88, trial)});
    const auto cs = census(sp.q1);
    const auto giant = cs.component_vertices(0);
    if (giant.size() < 64) continue;  // far subcritical; not the regime
    const PieceFamily fam =
        piece_family(sp.q1, giant, static_cast<double>(giant.size()), 1.0);
    const auto& pieces = fam.deco.pieces;
    if (pieces.size() < 2) continue;
    Xoshiro256ss part(suite_stream(89, trial));
    std::vector<uint32_t> A, B;
    uint64_t ta = 0, tb = 0;
    do {
      A.clear();
      B.clear();
      ta = tb = 0;
      for (const auto& piece : pieces) {
        if (part.next() & 1) {
          A.insert(A.end(), piece.begin(), piece.end());
          ++ta;
        } else {
          B.insert(B.end(), piece.begin(), piece.end());
          ++tb;
        }
      }
    } while (ta == 0 || tb == 0);
    const double t = static_cast<double>(std::min(ta, tb));
    const Graph spr = induced_graph(sp.sprinkle, all);
    const auto famP = disjoint_short_paths_greedy(spr, A, B, 5);
    const double need = kPathPackC * t * b_of_s(t, d);
    ++packing_trials;
    if (static_cast<double>(famP.paths.size()) >= need) ++packing_ok;
    worst_ratio = std::min(
        worst_ratio, static_cast<double>(famP.paths.size()) /
                         std::max(1e-300, t * b_of_s(t, d)));
  }
  const bool packing_pass =
      packing_trials >= 90 && packing_ok * 100 >= packing_trials * 95;
  r.pass = menger_bad == 0 && greedy_bad == 0 && packing_pass;
  r.detail =
      fmt("menger mismatches: %llu/200; greedy>max: %llu; packing %llu/%llu "
          "(worst count/(t b(t)) = %.3f)",
          static_cast<unsigned long long>(menger_bad),
          static_cast<unsigned long long>(greedy_bad),
          static_cast<unsigned long long>(packing_ok),
          static_cast<unsigned long long>(packing_trials), worst_ratio);
  return r;
}

// ---------------------------------------------------------------------------
// 9: two-round coupling -- containment and a two-sample KS edge-count test
// ---------------------------------------------------------------------------
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double dmax = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / na -
                                   static_cast<double>(j) / nb));
  }
  return dmax;
}

CriterionResult c9_sprinkling() {
  CriterionResult r{9, "sprinkling-coupling"};
  uint64_t not_nested = 0;
  std::vector<double> coupled, direct;
  for (uint32_t trial = 0; trial < 1000; ++trial) {
    const SprinkledPair sp =
        generate_sprinkled({10, 0.2, 0.05, suite_stream(9, trial)});
    if (!sp.q1.subgraph_of(sp.q2)) ++not_nested;
    coupled.push_back(static_cast<double>(sp.q2.edge_count()));
    const auto g = generate({10, 0.2, -1.0, suite_stream(99, trial)});
    direct.push_back(static_cast<double>(g.edge_count()));
  }
  const double dks = ks_statistic(coupled, direct);
  const double crit = 1.628 * std::sqrt(2.0 / 1000.0);  // alpha = 0.01
  r.pass = not_nested == 0 && dks <= crit;
  r.detail = fmt("non-nested: %llu/1000; KS D=%.4f (reject above %.4f)",
                 static_cast<unsigned long long>(not_nested), dks, crit);
  return r;
}

// ---------------------------------------------------------------------------
// 10: attachment sizes and two-hop giant density after sprinkling
// ---------------------------------------------------------------------------
CriterionResult c10_attachment_density() {
  CriterionResult r{10, "attachment-and-density"};
  const uint32_t d = 14;
  uint64_t attach_bad = 0, density_bad = 0, skipped = 0;
  uint64_t worst_attach = 0, worst_density = UINT64_MAX;
  for (uint32_t trial = 0; trial < 50; ++trial) {
    const SprinkledPair sp =
        generate_sprinkled({d, 1.5 / d, 0.2 / d, suite_stream(10, trial)});
    const AttachmentReport ar = attachment_report(sp.q1, sp.q2);
    if (!ar.giant_nested) {
      ++skipped;
      continue;
    }
    worst_attach = std::max(worst_attach, ar.max_attachment);
    if (ar.max_attachment > 60ull * d) ++attach_bad;
    const uint64_t dens = two_hop_density(sp.q1, census(sp.q1));
    worst_density = std::min(worst_density, dens);
    if (static_cast<double>(dens) < 0.01 * d * d) ++density_bad;
  }
  r.pass = attach_bad == 0 && density_bad == 0 && skipped <= 5;
  r.detail = fmt(
      "max attachment %llu (cap %llu); min two-hop density %llu (floor %.2f); "
      "skipped %llu/50",
      static_cast<unsigned long long>(worst_attach),
      static_cast<unsigned long long>(60ull * d),
      static_cast<unsigned long long>(worst_density), 0.01 * d * d,
      static_cast<unsigned long long>(skipped));
  return r;
}

// ---------------------------------------------------------------------------
// 11: mixing-time growth trend and the sampled estimate's sandwich
// ---------------------------------------------------------------------------
CriterionResult c11_mixing_trend() {
  CriterionResult r{11, "mixing-growth-trend"};
  std::vector<double> lx, ly;
  std::string per_d;
  for (uint32_t d : {8u, 9u, 10u}) {
    double sum = 0;
    for (uint32_t trial = 0; trial < 3; ++trial) {
      const auto g = generate({d, 2.0 / d, -1.0, suite_stream(11, (uint64_t(d) << 32) | trial)});
      const auto cs = census(g);
      const Graph giant = induced_graph(g, cs.component_vertices(0));
      sum += static_cast<double>(mixing_time_exact(giant).t_mix);
    }
    const double mean = sum / 3.0;
    per_d += fmt(" t(%u)=%.1f", d, mean);
    lx.push_back(std::log(static_cast<double>(d)));
    ly.push_back(std::log(std::max(mean, 1.0)));
  }
  const double slope = ls_slope(lx, ly);

  const auto g12 = generate({12, 2.0 / 12, -1.0, suite_stream(11, 1200)});
  const Graph giant12 = induced_graph(g12, census(g12).component_vertices(0));
  const SpectralSummary ss = spectral_summary(giant12);
  const MixingReport rep = sampled_mixing(giant12, 4000, 64ull * 12 * 12,
                                          suite_stream(11, 1201));
  const double lower = kMixLowerC / (2.0 * ss.gap);
  const double upper =
      mixing_bound_cheeger(ss.cheeger_lower, pi_min_exact(giant12));
  const bool sandwich = rep.mixed &&
                        static_cast<double>(rep.t_mix) >= lower &&
                        static_cast<double>(rep.t_mix) <= upper;
  r.pass = slope >= 1.0 && slope < 6.0 && sandwich;
  r.detail = fmt("slope %.3f in [1,6);%s; sampled t(12)=%llu in [%.1f, %.1f]",
                 slope, per_d.c_str(),
                 static_cast<unsigned long long>(rep.t_mix), lower, upper);
  return r;
}

// ---------------------------------------------------------------------------
// 12: giant diameter values and iFUB agreement with all-pairs BFS
// ---------------------------------------------------------------------------
CriterionResult c12_diameter() {
  CriterionResult r{12, "giant-diameter"};
  uint64_t cap_bad = 0, mismatch = 0;
  uint32_t largest = 0;
  for (uint32_t d : {10u, 12u, 14u}) {
    for (uint32_t trial = 0; trial < 3; ++trial) {
      const auto g = generate({d, 2.0 / d, -1.0, suite_stream(12, (uint64_t(d) << 32) | trial)});
      const Graph giant = induced_graph(g, census(g).component_vertices(0));
      const DiameterResult ifub = diameter(giant, DiameterMode::kIfub);
      if (ifub.value > d * d * d) ++cap_bad;
      if (d == 10) {
        const DiameterResult all =
            diameter(giant, DiameterMode::kAllPairs, uint64_t{1} << 16);
        if (all.value != ifub.value) ++mismatch;
      }
      largest = std::max(largest, ifub.value);
    }
  }
  r.pass = cap_bad == 0 && mismatch == 0;
  r.detail = fmt("cap violations: %llu/9; ifub vs all-pairs mismatches: "
                 "%llu/3; largest diameter %u",
                 static_cast<unsigned long long>(cap_bad),
                 static_cast<unsigned long long>(mismatch), largest);
  return r;
}

// ---------------------------------------------------------------------------
// 13: budgeted cycle search -- validity always, length floor usually
// ---------------------------------------------------------------------------
CriterionResult c13_cycles() {
  CriterionResult r{13, "long-cycle-certificates"};
  const uint32_t d = 12;
  uint64_t invalid = 0, long_enough = 0;
  uint64_t best = 0;
  for (uint32_t trial = 0; trial < 20; ++trial) {
    const auto g = generate({d, 2.0 / d, -1.0, suite_stream(13, trial)});
    const Graph giant = induced_graph(g, census(g).component_vertices(0));
    const CycleCertificate cyc =
        longest_cycle_heuristic(giant, kCycleBudget, suite_stream(14, trial));
    if (!cyc.empty()) {
      try {
        validate_cycle(giant, cyc);
      } catch (const std::exception&) {
        ++invalid;
        continue;
      }
    }
    best = std::max<uint64_t>(best, cyc.length());
    if (static_cast<double>(cyc.length()) >= 0.01 * (1u << d)) ++long_enough;
  }
  r.pass = invalid == 0 && long_enough >= 18;
  r.detail = fmt("invalid: %llu; length >= %.0f in %llu/20; best %llu",
                 static_cast<unsigned long long>(invalid),
                 std::ceil(0.01 * (1u << d)),
                 static_cast<unsigned long long>(long_enough),
                 static_cast<unsigned long long>(best));
  return r;
}

// ---------------------------------------------------------------------------
// 14: greedy clique-minor order with mechanical certificate validation
// ---------------------------------------------------------------------------
CriterionResult c14_minors() {
  CriterionResult r{14, "clique-minor-certificates"};
  const uint32_t d = 12;
  uint64_t invalid = 0, big_enough = 0;
  uint32_t best = 0;
  for (uint32_t trial = 0; trial < 20; ++trial) {
    const auto g = generate({d, 2.0 / d, -1.0, suite_stream(15, trial)});
    const Graph giant = induced_graph(g, census(g).component_vertices(0));
    const MinorCertificate cert =
        greedy_minor(giant, kMinorTarget, suite_stream(16, trial));
    try {
      validate_minor(giant, cert);
    } catch (const std::exception&) {
      ++invalid;
      continue;
    }
    best = std::max(best, cert.order());
    if (cert.order() >= 8) ++big_enough;
  }
  r.pass = invalid == 0 && big_enough >= 18;
  r.detail = fmt("invalid: %llu; order >= 8 in %llu/20; best %u",
                 static_cast<unsigned long long>(invalid),
                 static_cast<unsigned long long>(big_enough), best);
  return r;
}

// ---------------------------------------------------------------------------
// 15: coordinate entropy split -- the returned direction is balanced enough
// ---------------------------------------------------------------------------
CriterionResult c15_direction_split() {
  CriterionResult r{15, "coordinate-entropy-split"};
  const uint32_t d = 12;
  const uint32_t n = 1u << d;
  Xoshiro256ss rng(suite_stream(17, 0));
  uint64_t violations = 0;
  double worst = 1e300;
  for (uint32_t it = 0; it < 1000; ++it) {
    const uint32_t s = n / 4 + static_cast<uint32_t>(rng.below(3 * n / 4 + 1));
    const auto W = sample_distinct(rng, n, s);
    const DirectionSplit ds = direction_split(W, d);
    const double pv = ds.p[ds.best_dir];
    const double slack = std::min(pv, 1.0 - pv) - ds.beta;
    worst = std::min(worst, slack);
    if (slack < -1e-9) ++violations;
  }
  r.pass = violations == 0;
  r.detail = fmt("violations: %llu/1000; worst min(p,1-p)-beta = %.3e",
                 static_cast<unsigned long long>(violations), worst);
  return r;
}

// ---------------------------------------------------------------------------
// 16: Monte-Carlo tails below closed-form bounds; exact subtree counts below
//     the tree-count bound
// ---------------------------------------------------------------------------
uint64_t binomial_sample(Xoshiro256ss& rng, uint64_t N, double p) {
  uint64_t count = 0, pos = 0;
  for (;;) {
    pos += rng.geometric_skip(p) + 1;
    if (pos > N) break;
    ++count;
  }
  return count;
}

CriterionResult c16_bounds() {
  CriterionResult r{16, "tail-and-tree-count-bounds"};
  Xoshiro256ss rng(suite_stream(18, 0));
  uint64_t tail_bad = 0;
  double tightest = 1e300;
  const std::pair<uint64_t, double> grid[] = {
      {2000, 0.1}, {1000, 0.5}, {5000, 0.05}};
  for (const auto& [N, p] : grid) {
    for (double kappa : {2.0, 4.0, 6.0}) {
      const double mean = static_cast<double>(N) * p;
      const double a = kappa * std::sqrt(mean);
      uint64_t hits = 0;
      for (uint32_t s = 0; s < 100000; ++s) {
        const double x = static_cast<double>(binomial_sample(rng, N, p));
        if (std::abs(x - mean) > a) ++hits;
      }
      const double freq = static_cast<double>(hits) / 100000.0;
      const double bound = chernoff_deviation(N, p, a).value;
      tightest = std::min(tightest, bound - freq);
      if (freq > bound) ++tail_bad;
    }
  }

  uint64_t tree_bad = 0;
  auto check_counts = [&](const HypercubeSubgraph& g) {
    uint64_t max_deg = 1;
    for (uint32_t v = 0; v < g.num_vertices(); ++v)
      max_deg = std::max<uint64_t>(max_deg, g.degree(v));
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) == 0) continue;
      for (uint32_t k = 1; k <= 6; ++k) {
        const uint64_t cnt = enumerate_rooted_subtrees(g, v, k);
        if (cnt == 0) continue;
        const double logc = std::log(static_cast<double>(cnt));
        if (logc > tree_count_bound(k, max_deg).log_value + 1e-9) ++tree_bad;
      }
    }
  };
  check_counts(HypercubeSubgraph::full(4));
  for (uint32_t trial = 0; trial < 3; ++trial)
    check_counts(generate({4, 0.5, -1.0, suite_stream(19, trial)}));

  r.pass = tail_bad == 0 && tree_bad == 0;
  r.detail = fmt("tail exceedances: %llu/9 (closest margin %.3e); subtree "
                 "count exceedances: %llu",
                 static_cast<unsigned long long>(tail_bad), tightest,
                 static_cast<unsigned long long>(tree_bad));
  return r;
}

// ---------------------------------------------------------------------------
// 17: rerunning a harness config reproduces byte-identical CSV
// ---------------------------------------------------------------------------
CriterionResult c17_determinism() {
  CriterionResult r{17, "run-determinism"};
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kCensus;
  cfg.dims = {9, 10};
  cfg.p = 0.3;
  cfg.trials = 3;
  cfg.seed = 2024;
  cfg.workers = 2;
  const std::string a = to_csv(cfg.kind, run(cfg));
  const std::string b = to_csv(cfg.kind, run(cfg));

  ExperimentConfig sp;
  sp.kind = ExperimentKind::kSprinkle;
  sp.dims = {8};
  sp.p = 0.25;
  sp.q2 = 0.1;
  sp.trials = 2;
  sp.seed = 7;
  sp.workers = 2;
  const std::string c = to_csv(sp.kind, run(sp));
  const std::string d = to_csv(sp.kind, run(sp));

  // Worker count must not affect the measurements themselves (it is recorded
  // in its own CSV column, which is the only permitted difference).
  ExperimentConfig one = cfg;
  one.workers = 1;
  const auto recs1 = run(one);
  const auto recs2 = run(cfg);
  bool same_metrics = recs1.size() == recs2.size();
  if (same_metrics)
    for (size_t i = 0; i < recs1.size(); ++i) {
      same_metrics = same_metrics &&
                     recs1[i].metrics.size() == recs2[i].metrics.size() &&
                     recs1[i].trial_seed == recs2[i].trial_seed;
      if (!same_metrics) break;
      for (size_t j = 0; j < recs1[i].metrics.size(); ++j)
        same_metrics = same_metrics &&
                       recs1[i].metrics[j].metric == recs2[i].metrics[j].metric &&
                       recs1[i].metrics[j].value == recs2[i].metrics[j].value;
    }

  r.pass = a == b && c == d && same_metrics;
  r.detail = fmt("census rerun %s; sprinkle rerun %s; workers 1 vs 2 %s",
                 a == b ? "identical" : "DIFFERS",
                 c == d ? "identical" : "DIFFERS",
                 same_metrics ? "agree" : "DISAGREE");
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool verbose) {
  struct Entry {
    int id;
    const char* name;
    CriterionResult (*fn)();
  };
  const Entry criteria[] = {
      {1, "survival-fixed-point", c1_survival},
      {2, "giant-fraction-mean", c2_giant_fraction},
      {3, "second-component-scaling", c3_second_component},
      {4, "isoperimetry-verifier", c4_isoperimetry},
      {5, "cheeger-sandwich", c5_cheeger_sandwich},
      {6, "mixing-vs-bottleneck-bound", c6_mixing_bound},
      {7, "tree-decomposition-postconditions", c7_tree_decomposition},
      {8, "disjoint-path-packing", c8_disjoint_paths},
      {9, "sprinkling-coupling", c9_sprinkling},
      {10, "attachment-and-density", c10_attachment_density},
      {11, "mixing-growth-trend", c11_mixing_trend},
      {12, "giant-diameter", c12_diameter},
      {13, "long-cycle-certificates", c13_cycles},
      {14, "clique-minor-certificates", c14_minors},
      {15, "coordinate-entropy-split", c15_direction_split},
      {16, "tail-and-tree-count-bounds", c16_bounds},
      {17, "run-determinism", c17_determinism},
  };
  std::vector<CriterionResult> results;
  for (const auto& entry : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = entry.fn();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = fmt("exception: %s", e.what());
    }
    res.id = entry.id;
    res.name = entry.name;
    const auto t1 = std::chrono::steady_clock::now();
    res.seconds = std::chrono::duration<double>(t1 - t0).count();
    std::printf("[%2d] %s  %-32s (%6.2f s)%s%s\n", res.id,
                res.pass ? "PASS" : "FAIL", res.name.c_str(), res.seconds,
                verbose ? "  " : "", verbose ? res.detail.c_str() : "");
    std::fflush(stdout);
    results.push_back(std::move(res));
  }
  int passed = 0;
  for (const auto& res : results) passed += res.pass ? 1 : 0;
  std::printf("%d/%d criteria passed\n", passed,
              static_cast<int>(results.size()));
  std::fflush(stdout);
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return !results.empty() &&
         std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

}  // namespace qperc
