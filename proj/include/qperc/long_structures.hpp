#pragma once
// Exact diameter (iFUB or all-pairs BFS), randomized long-cycle search, and
// greedy clique-minor construction. Heuristics may underperform but never
// lie: every certificate is machine-validated before it is returned. The two
// bound calculators are pure formulas meant to be composed with measured
// expansion data by the harness.

#include <cstdint>
#include <string>
#include <vector>

#include "qperc/graph.hpp"

namespace qperc {

enum class DiameterMode { kAllPairs, kIfub, kDoubleSweepLower };

struct DiameterResult {
  uint32_t value = 0;
  bool exact = true;   // false for the double-sweep lower bound
  std::string method;  // "exact-all-bfs" | "ifub" | "double-sweep-lower"
  uint32_t endpoint_u = 0;  // original ids of a pair realizing `value`
  uint32_t endpoint_v = 0;
  uint64_t bfs_count = 0;
};

// Connected graphs only. kAllPairs runs n BFS rounds and throws CapExceeded
// above `cap` vertices; kIfub is exact with usually far fewer rounds;
// kDoubleSweepLower reports a two-BFS lower bound with exact = false.
DiameterResult diameter(const Graph& g,
                        DiameterMode mode = DiameterMode::kIfub,
                        uint64_t cap = uint64_t{1} << 16);

struct CycleCertificate {
  std::vector<uint32_t> vertices;  // original ids in cycle order
  uint64_t length() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

// Throws std::logic_error unless the certificate has >= 3 distinct vertices
// and every consecutive pair (including last-first) is an edge of g.
void validate_cycle(const Graph& g, const CycleCertificate& cert);

// Randomized depth-first path growth with rotations: when the path head has
// no unused neighbor, a chord to the path interior reverses the tail to
// expose a new head. Cycles are harvested from every chord seen along the
// way and the longest one wins (first found on ties). `budget` counts head
// operations across restarts. Acyclic inputs yield an empty certificate.
CycleCertificate longest_cycle_heuristic(const Graph& g, uint64_t budget,
                                         uint64_t seed);

// Guaranteed cycle length under the expansion premise "every W with
// k/2 <= |W| <= k has |N(W)| >= t": returns t + 1. Needs k >= 1, t >= 2.
uint64_t cycle_bound_from_expansion(double k, uint64_t t);

struct MinorCertificate {
  std::vector<std::vector<uint32_t>> branch_sets;  // original ids, each sorted
  uint32_t order() const { return static_cast<uint32_t>(branch_sets.size()); }
};

// Throws std::logic_error unless branch sets are nonempty, pairwise
// disjoint, each connected in g, and every pair is joined by >= 1 edge.
void validate_minor(const Graph& g, const MinorCertificate& cert);

// Clique-minor heuristic: plants target_t branch sets at farthest-point BFS
// landmarks, grows them round-robin to a bounded size (leaving free
// vertices), routes connecting paths through free vertices for missing
// adjacencies, and returns the largest fully-adjacent subfamily (exact max
// clique on <= 64 sets). Validated; the order may fall short of target_t.
MinorCertificate greedy_minor(const Graph& g, uint32_t target_t,
                              uint64_t seed);

// boundary / (C * sqrt(N)): Hadwiger lower bound from a measured separator;
// every argument must be positive.
double minor_bound_from_separator(double n_value, double boundary, double c);

}  // namespace qperc
