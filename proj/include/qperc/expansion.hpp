#pragma once
// Expansion measurements: cut statistics and the bottleneck ratio
// Phi(S) = e(S, S^c) / (2 vol S) of the lazy walk, exact Cheeger constants by
// subset enumeration on small components, a Lanczos spectral summary with a
// sweep cut (giving the certified sandwich gap/2 <= Phi <= min(sweep,
// sqrt(2 gap))), vertex-disjoint path packings (exact by max-flow, certified
// lower bounds by a greedy shortest-first packer), and the sampling
// experiments (matchings, excess, vertex expansion profiles, coordinate
// entropy splits).

#include <cstdint>
#include <vector>

#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"

namespace qperc {

struct CutStats {
  uint64_t boundary_edges = 0;  // e(S, S^c)
  uint64_t neighborhood = 0;    // |N(S) \ S|
  uint64_t volume = 0;          // sum of degrees over S
  double ratio = 0.0;           // Phi(S) = boundary / (2 volume), in [0, 1/2]
};

// S as local ids; S must be a proper nonempty subset of g's vertices.
CutStats cut_stats(const Graph& g, const std::vector<uint32_t>& S);
// S as hypercube vertex ids, cut against the rest of the percolated cube.
CutStats cut_stats(const HypercubeSubgraph& g, const std::vector<uint32_t>& S);

// Does S meet the hypercube edge-isoperimetric bound? Checks the boundary of
// S in the FULL cube Q^d against s(d - log2 s); requires |S| <= 2^{d-1}.
struct HarperCheck {
  uint64_t actual = 0;
  double bound = 0.0;
  bool ok = false;
};
HarperCheck verify_harper(uint32_t d, const std::vector<uint32_t>& S);

struct CheegerExact {
  double phi = 0.0;
  std::vector<uint32_t> witness;  // local ids of a minimizing S
};

// Exact bottleneck constant min over nonempty S with vol(S) <= vol(V)/2 of
// Phi(S), by Gray-code enumeration. Enforced cap: n <= 22.
CheegerExact cheeger_exact(const Graph& g);

struct VertexExpansionExact {
  double alpha = 0.0;             // min |N(S)|/|S| over |S| <= n/2
  std::vector<uint32_t> witness;  // local ids
};
VertexExpansionExact min_vertex_expansion_exact(const Graph& g);

struct SpectralSummary {
  double lambda2 = 0.0;      // second-largest eigenvalue of the lazy walk
  double gap = 0.0;          // 1 - lambda2
  double sweep_phi = 0.0;    // best sweep cut over the second eigenvector
  double cheeger_lower = 0.0;  // gap/2 <= Phi(G)
  double cheeger_upper = 0.0;  // min(sweep_phi, sqrt(2 gap)) >= Phi(G)
  uint32_t iterations = 0;
  double residual = 0.0;
  std::vector<uint32_t> sweep_witness;  // local ids of the best sweep cut
};

// Lanczos with full reorthogonalization on the degree-symmetrized lazy
// operator, deflating the known top eigenvector sqrt(deg). Requires a
// connected graph with >= 2 vertices; throws on non-convergence (Krylov cap
// 300 with restarts).
SpectralSummary spectral_summary(const Graph& g, double tol = 1e-10);

struct PathFamily {
  std::vector<std::vector<uint32_t>> paths;  // original vertex ids, A to B
  uint32_t max_len = 0;                      // length cap; 0 = unconstrained
};

// Validity: pairwise vertex-disjoint (endpoints included), consecutive
// vertices adjacent in g, first in A, last in B, lengths within max_len.
// Both packers run this before returning; it throws on violation.
void validate_path_family(const Graph& g, const std::vector<uint32_t>& A,
                          const std::vector<uint32_t>& B,
                          const PathFamily& fam);

// Maximum number of fully vertex-disjoint A-B paths (Menger), via Dinic on
// the vertex-split digraph; A, B disjoint nonempty sets of original ids.
PathFamily disjoint_paths_maxflow(const Graph& g,
                                  const std::vector<uint32_t>& A,
                                  const std::vector<uint32_t>& B);

// Greedy shortest-first packing of vertex-disjoint A-B paths of length <=
// max_len; a certified lower bound for the packing number.
PathFamily disjoint_short_paths_greedy(const Graph& g,
                                       const std::vector<uint32_t>& A,
                                       const std::vector<uint32_t>& B,
                                       uint32_t max_len = 5);

// Keep each edge of F (canonical hypercube edge indices) with probability p,
// then greedily build a maximal matching scanning kept edges in canonical
// order; returns the matching size.
uint64_t greedy_matching_experiment(uint32_t d,
                                    const std::vector<uint64_t>& edge_ids,
                                    double p, uint64_t seed);

// Number of vertices of degree >= threshold (default: natural log of d).
uint64_t degree_census(const HypercubeSubgraph& g, double threshold);
uint64_t degree_census(const HypercubeSubgraph& g);

struct ExcessSample {
  double max_edges_per_vertex = 0.0;  // max over samples of e(S)/|S|
  uint32_t samples = 0;
};

// Random connected k-vertex sets grown by uniform frontier expansion inside
// components of size >= k; reports the worst induced edges-per-vertex ratio.
ExcessSample connected_excess_sample(const HypercubeSubgraph& g, uint64_t k,
                                     uint32_t samples, uint64_t seed);

struct DirectionSplit {
  uint32_t best_dir = 0;        // coordinate with maximal marginal entropy
  std::vector<double> p;        // per-coordinate one-fractions
  double beta = 0.0;            // h^{-1}(log2|W| / d)
};

// Coordinate marginals of a vertex set W: since log2|W| <= sum_i h(p_i) <=
// d max_i h(p_i), the best coordinate satisfies min(p, 1-p) >= beta.
DirectionSplit direction_split(const std::vector<uint32_t>& W, uint32_t d);

struct ExpansionPoint {
  uint64_t size = 0;
  double min_ratio = 0.0;  // min over samples of |N(S)|/|S|
};

// Sampled vertex-expansion profile of a connected graph: for each target
// size, grows `samples` random connected sets and records the worst ratio.
std::vector<ExpansionPoint> expansion_profile(
    const Graph& g, const std::vector<uint64_t>& sizes, uint32_t samples,
    uint64_t seed);

}  // namespace qperc
