#pragma once
// Closed-form quantities used by the experiments: the branching-process
// survival probability that pins the giant component fraction, binomial tail
// bounds (kept in log space so they never overflow), the edge-isoperimetric
// lower bound for the hypercube, binary entropy and its inverse, a bound on
// rooted-subtree counts, and the logarithmic-size/growth bookkeeping used by
// the decomposition and diameter experiments.

#include <cstdint>
#include <string>

namespace qperc {

// Unique root in (0,1) of gamma = 1 - exp(-(1+delta) * gamma), by bracketed
// bisection; 0 for delta <= 0. Residual at the returned point is <= tol.
double survival_probability(double delta, double tol = 1e-9);

// A probability bound computed in log space. `value` = exp(log_value) (may
// round to 0 or overflow to inf for extreme parameters); `clipped` is value
// clamped into [0,1] for use as a probability.
struct BoundResult {
  double log_value = 0.0;
  double value = 1.0;
  double clipped = 1.0;
  std::string formula;
};

// P(|Bin(N,p) - Np| > a) < 2 exp(-a^2 / (4 N p)); requires 0 < a <= Np/2
// (out-of-domain arguments are an error, not a clamp).
BoundResult chernoff_deviation(uint64_t N, double p, double a);

// P(Bin(N,p) > b * Np) <= (e/b)^{b N p}; requires b > 0.
BoundResult chernoff_upper(uint64_t N, double p, double b);

// Edge-isoperimetry in Q^d: a set of size s (1 <= s <= 2^{d-1}) has at least
// s * (d - log2 s) boundary edges; this returns that lower bound.
double harper_bound(uint64_t s, uint32_t d);

double binary_entropy(double x);             // h(x), base-2, h(0)=h(1)=0
double inverse_binary_entropy(double y);     // root of h on [0, 1/2]

// Upper bound on the number of k-vertex subtrees rooted at a fixed vertex in
// a graph of max degree Delta: min(k^{k-2} Delta^{k-1} / (k-1)!, (e Delta)^{k-1}).
BoundResult tree_count_bound(uint64_t k, uint64_t max_degree);

// b(s) = 1 - log2(s)/d for 1 <= s <= 2^d: how far s is from the full cube on
// a log scale; the decomposition piece size and growth radius both scale as
// 1/b(s).
double b_of_s(double s, uint32_t d);

struct GrowthSchedule {
  uint64_t rounds = 0;
  double total_radius = 0.0;
};

// Iterates x <- x (1 + c7 b(x)) from `start` until x >= target, charging a
// radius of 2 d / (c8 b(x)) + 5 per round; returns the number of rounds and
// the accumulated radius (O(d^3) for any fixed target fraction of 2^d).
// target = 2^d is reachable only in the limit and reports non-convergence.
GrowthSchedule growth_schedule(uint32_t d, double c7, double c8, double start,
                               double target);

}  // namespace qperc
