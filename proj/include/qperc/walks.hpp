#pragma once
// Lazy random walks on a component: exact distribution evolution, worst-start
// total-variation mixing time, the bottleneck-ratio mixing bound, and a
// sampled walker estimate for graphs too large to evolve exactly.

#include <cstdint>
#include <string>
#include <vector>

#include "qperc/graph.hpp"

namespace qperc {

// Probability mass over the local vertex ids of a Graph.
using DistributionVector = std::vector<double>;

DistributionVector point_mass(const Graph& g, uint32_t local_start);

// pi(v) = deg(v) / 2|E|. Throws on an edgeless graph.
DistributionVector stationary_distribution(const Graph& g);

// One step of the lazy walk: stay with probability 1/2, else move to a
// uniform open neighbor. Throws if mass sits on an isolated vertex. The
// result is renormalized; if drift is non-null it receives |sum - 1| before
// renormalization (should be ~1e-16 per step).
DistributionVector lazy_step(const Graph& g, const DistributionVector& mu,
                             double* drift = nullptr);

// 1/2 * sum |a - b|, Kahan-summed. Throws on support size mismatch.
double tv_distance(const DistributionVector& a, const DistributionVector& b);

struct MixingReport {
  uint64_t t_mix = 0;
  std::vector<double> tv_curve;  // worst-start d(t) for t = 1, 2, ...
  std::string method;            // "exact" | "sampled"
  bool lower_bound_only = false;  // heuristic start set, not all starts
  bool mixed = true;              // false when the horizon ran out
  double margin = 0.0;            // sampled method only
  uint64_t walkers = 0;           // sampled method only
};

// Worst-start mixing time min{t : max_v TV(P^t(v,.), pi) <= eps}. Evolves
// every start for n <= 512; for 512 < n <= 4096 uses a documented heuristic
// start set (the two double-sweep endpoints plus 8 seeded random starts) and
// flags the report lower_bound_only. Larger graphs throw CapExceeded, as
// does running past step_cap without mixing.
MixingReport mixing_time_exact(const Graph& g, double eps = 0.25,
                               uint64_t step_cap = uint64_t{1} << 20);

// (2/phi^2) * ln(4/pi_min): upper bound for the eps = 1/4 lazy mixing time.
// Requires phi in (0, 1/2] and pi_min in (0, 1].
double mixing_bound_cheeger(double phi, double pi_min);

// The two pi_min variants fed to the bound: the true minimum of the
// stationary law, and the 1/(2n) simplification valid whenever |E| <= n.
double pi_min_exact(const Graph& g);
double pi_min_simplified(uint64_t n);

// Monte-Carlo estimate: `walkers` independent lazy walks from a double-sweep
// far vertex; at each step the walker positions are projected to the Hamming
// weight of their original ids and the projected empirical law is compared
// with the projected stationary law. Projection can only shrink TV, so the
// first step where the projected TV falls below 1/4 minus a sampling margin
// is an estimate biased low; it is labeled method = "sampled". If the
// horizon ends first, mixed = false and t_mix = horizon.
MixingReport sampled_mixing(const Graph& g, uint64_t walkers,
                            uint64_t horizon, uint64_t seed);

}  // namespace qperc
