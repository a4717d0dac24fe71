#include "qperc/walks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qperc/errors.hpp"
#include "qperc/rng.hpp"

namespace qperc {

namespace {

double kahan_sum(const std::vector<double>& xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

DistributionVector point_mass(const Graph& g, uint32_t local_start) {
  if (local_start >= g.n)
    throw std::invalid_argument("point_mass: start out of range");
  DistributionVector mu(g.n, 0.0);
  mu[local_start] = 1.0;
  return mu;
}

DistributionVector stationary_distribution(const Graph& g) {
  const uint64_t m = g.num_edges();
  if (m == 0)
    throw std::invalid_argument("stationary_distribution: edgeless graph");
  DistributionVector pi(g.n);
  for (uint32_t v = 0; v < g.n; ++v)
    pi[v] = static_cast<double>(g.deg(v)) / (2.0 * static_cast<double>(m));
  return pi;
}

DistributionVector lazy_step(const Graph& g, const DistributionVector& mu,
                             double* drift) {
  if (mu.size() != g.n)
    throw std::invalid_argument("lazy_step: support size mismatch");
  DistributionVector rate(g.n), out(g.n);
  for (uint32_t v = 0; v < g.n; ++v) {
    if (mu[v] != 0.0 && g.deg(v) == 0)
      throw std::invalid_argument("lazy_step: mass on an isolated vertex");
    rate[v] = g.deg(v) ? mu[v] / (2.0 * g.deg(v)) : 0.0;
  }
  for (uint32_t v = 0; v < g.n; ++v) {
    double acc = 0.5 * mu[v];
    for (uint32_t u : g.neighbors(v)) acc += rate[u];
    out[v] = acc;
  }
  const double total = kahan_sum(out);
  if (drift) *drift = std::fabs(total - 1.0);
  if (total > 0.0 && total != 1.0)
    for (auto& x : out) x /= total;
  return out;
}

double tv_distance(const DistributionVector& a, const DistributionVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tv_distance: support mismatch");
  double s = 0.0, comp = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double y = std::fabs(a[i] - b[i]) - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return 0.5 * s;
}

namespace {

// Endpoints of a double BFS sweep: far vertex from local 0, then farthest
// from it. Cheap stand-ins for the slowest-mixing starts.
std::pair<uint32_t, uint32_t> double_sweep_pair(const Graph& g) {
  const auto [a, da] = bfs_farthest(g, 0);
  const auto [b, db] = bfs_farthest(g, a);
  (void)da;
  (void)db;
  return {a, b};
}

}  // namespace

MixingReport mixing_time_exact(const Graph& g, double eps, uint64_t step_cap) {
  if (!(eps > 0.0)) throw std::invalid_argument("mixing_time_exact: eps <= 0");
  if (!g.connected())
    throw std::invalid_argument("mixing_time_exact: graph not connected");
  if (g.num_edges() == 0)
    throw std::invalid_argument("mixing_time_exact: edgeless graph");
  if (g.n > 4096)
    throw CapExceeded("mixing_time_exact: component larger than 2^12");

  MixingReport rep;
  rep.method = "exact";
  std::vector<uint32_t> starts;
  if (g.n <= 512) {
    starts.resize(g.n);
    std::iota(starts.begin(), starts.end(), 0u);
  } else {
    // Heuristic worst-start set: double-sweep endpoints + 8 seeded starts.
    rep.lower_bound_only = true;
    const auto [a, b] = double_sweep_pair(g);
    starts = {a, b};
    Xoshiro256ss rng(derive_seed(0xA11CEu, g.n));
    for (int i = 0; i < 8; ++i)
      starts.push_back(static_cast<uint32_t>(rng.below(g.n)));
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  }

  const DistributionVector pi = stationary_distribution(g);
  std::vector<DistributionVector> mus;
  mus.reserve(starts.size());
  double d0 = 0.0;
  for (uint32_t s : starts) {
    mus.push_back(point_mass(g, s));
    d0 = std::max(d0, tv_distance(mus.back(), pi));
  }
  if (d0 <= eps) {
    rep.t_mix = 0;
    return rep;
  }
  for (uint64_t t = 1; t <= step_cap; ++t) {
    double dt = 0.0;
    for (auto& mu : mus) {
      mu = lazy_step(g, mu);
      dt = std::max(dt, tv_distance(mu, pi));
    }
    rep.tv_curve.push_back(dt);
    if (dt <= eps) {
      rep.t_mix = t;
      return rep;
    }
  }
  throw CapExceeded("mixing_time_exact: step cap reached before mixing");
}

double mixing_bound_cheeger(double phi, double pi_min) {
  if (!(phi > 0.0 && phi <= 0.5))
    throw std::invalid_argument("mixing_bound_cheeger: phi outside (0, 1/2]");
  if (!(pi_min > 0.0 && pi_min <= 1.0))
    throw std::invalid_argument("mixing_bound_cheeger: pi_min outside (0, 1]");
  return (2.0 / (phi * phi)) * std::log(4.0 / pi_min);
}

double pi_min_exact(const Graph& g) {
  const DistributionVector pi = stationary_distribution(g);
  double lo = 1.0;
  for (double x : pi)
    if (x > 0.0) lo = std::min(lo, x);
  return lo;
}

double pi_min_simplified(uint64_t n) {
  if (n == 0) throw std::invalid_argument("pi_min_simplified: n == 0");
  return 1.0 / (2.0 * static_cast<double>(n));
}

MixingReport sampled_mixing(const Graph& g, uint64_t walkers,
                            uint64_t horizon, uint64_t seed) {
  if (walkers < 1) throw std::invalid_argument("sampled_mixing: no walkers");
  if (!g.connected())
    throw std::invalid_argument("sampled_mixing: graph not connected");
  if (g.num_edges() == 0)
    throw std::invalid_argument("sampled_mixing: edgeless graph");

  // Projection classes: Hamming weight of the original (hypercube) ids.
  uint32_t wmax = 0;
  std::vector<uint32_t> weight(g.n);
  for (uint32_t v = 0; v < g.n; ++v) {
    weight[v] = static_cast<uint32_t>(std::popcount(g.orig[v]));
    wmax = std::max(wmax, weight[v]);
  }
  const uint32_t classes = wmax + 1;
  const DistributionVector pi = stationary_distribution(g);
  std::vector<double> pi_proj(classes, 0.0);
  for (uint32_t v = 0; v < g.n; ++v) pi_proj[weight[v]] += pi[v];

  MixingReport rep;
  rep.method = "sampled";
  rep.walkers = walkers;
  rep.margin = std::sqrt((classes * std::log(2.0) + std::log(200.0)) /
                         (2.0 * static_cast<double>(walkers)));

  const uint32_t start = double_sweep_pair(g).second;
  std::vector<uint32_t> pos(walkers, start);
  std::vector<Xoshiro256ss> rngs;
  rngs.reserve(walkers);
  for (uint64_t w = 0; w < walkers; ++w)
    rngs.emplace_back(derive_seed(seed, w));

  const double threshold = 0.25 - rep.margin;
  rep.mixed = false;
  rep.t_mix = horizon;
  std::vector<double> emp(classes);
  for (uint64_t t = 1; t <= horizon; ++t) {
    for (uint64_t w = 0; w < walkers; ++w) {
      if (rngs[w].next() & 1) continue;  // lazy hold
      const uint32_t v = pos[w];
      const auto nb = g.neighbors(v);
      pos[w] = nb[rngs[w].below(nb.size())];
    }
    std::fill(emp.begin(), emp.end(), 0.0);
    for (uint64_t w = 0; w < walkers; ++w) emp[weight[pos[w]]] += 1.0;
    for (auto& x : emp) x /= static_cast<double>(walkers);
    const double tv = tv_distance(emp, pi_proj);
    rep.tv_curve.push_back(tv);
    if (tv <= threshold) {
      rep.mixed = true;
      rep.t_mix = t;
      break;
    }
  }
  return rep;
}

}  // namespace qperc
