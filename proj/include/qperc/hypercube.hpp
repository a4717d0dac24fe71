#pragma once
// Bit-packed random subgraphs of the d-dimensional hypercube Q^d.
//
// Conventions (shared by every module and by the snapshot format):
//   * vertices are the integers 0 .. 2^d - 1; coordinate i is bit i (LSB is
//     coordinate 0), so the neighbour of v across direction i is v ^ (1<<i);
//   * a subgraph keeps, per vertex, a d-bit mask of open incident edges:
//     bit i of open(v) is set iff edge {v, v ^ (1<<i)} is open. Masks are
//     kept symmetric (bit i of open(v) == bit i of open(v ^ (1<<i)));
//   * the canonical encoding of an edge is the pair (v, i) with bit i of v
//     zero; canonical edge index = v*d + i. Samplers draw edges in increasing
//     canonical index order, which is what makes replay deterministic.
//
// Supported dimensions are 2..30 (2^30 masks = 4 GiB; everything in the test
// suite stays at desk scale, d <= 24).

#include <cstdint>
#include <string>
#include <vector>

#include "qperc/rng.hpp"

namespace qperc {

using VertexId = uint32_t;

struct GenerationParams {
  uint32_t d = 10;
  double p = 0.0;    // retention probability per edge
  double q2 = -1.0;  // second sprinkling round; < 0 means "not a sprinkled run"
  uint64_t seed = 1;
};

class HypercubeSubgraph {
 public:
  static constexpr uint32_t kMinDim = 2;
  static constexpr uint32_t kMaxDim = 30;

  explicit HypercubeSubgraph(uint32_t d);
  static HypercubeSubgraph full(uint32_t d);

  uint32_t dim() const { return d_; }
  uint64_t num_vertices() const { return uint64_t{1} << d_; }

  uint32_t open_mask(VertexId v) const { return open_[v]; }
  bool has_edge(VertexId v, uint32_t dir) const {
    return (open_[v] >> dir) & 1u;
  }
  uint32_t degree(VertexId v) const {
    return static_cast<uint32_t>(std::popcount(open_[v]));
  }
  // Sets {v, v ^ (1<<dir)} open, maintaining mask symmetry.
  void set_edge(VertexId v, uint32_t dir);

  uint64_t edge_count() const;
  bool subgraph_of(const HypercubeSubgraph& other) const;

  // Raw mask access for I/O and the python bindings.
  const std::vector<uint32_t>& masks() const { return open_; }
  std::vector<uint32_t>& masks() { return open_; }

 private:
  uint32_t d_;
  std::vector<uint32_t> open_;
};

// Q^d_p: every hypercube edge retained independently with probability p.
// Pure function of (d, p, seed). For p < 0.1 the sampler gap-skips over the
// (vertex, direction) index space in O(p n d) expected work; for denser p it
// flips one coin per canonical edge.
HypercubeSubgraph generate(const GenerationParams& params);

// First-round retention probability q1 solving (1-q1)(1-q2) = 1-p.
double sprinkle_split(double p, double q2);

struct SprinkledPair {
  HypercubeSubgraph q1;        // first round, Q^d_{q1}
  HypercubeSubgraph sprinkle;  // second round, Q^d_{q2}, sampled independently
  HypercubeSubgraph q2;        // union; distributed as Q^d_p
  double q1_prob = 0.0;
};

// Two-round exposure of Q^d_p: Q1 ~ Q^d_{q1}, sprinkle ~ Q^d_{q2},
// Q2 = Q1 ∪ sprinkle. Sub-streams are derive_seed(seed, 1) and
// derive_seed(seed, 2), so each round is independently reproducible.
SprinkledPair generate_sprinkled(const GenerationParams& params);

HypercubeSubgraph union_graphs(const HypercubeSubgraph& a,
                               const HypercubeSubgraph& b);

// Binary snapshot ("QPRC"): 16-byte header + 2^d little-endian u32 masks.
// Layout is frozen in docs/formats.md; load validates magic, version,
// dimension range, size, and mask symmetry.
void save_snapshot(const std::string& path, const HypercubeSubgraph& g,
                   uint64_t seed);
HypercubeSubgraph load_snapshot(const std::string& path,
                                uint64_t* seed_out = nullptr);

}  // namespace qperc
