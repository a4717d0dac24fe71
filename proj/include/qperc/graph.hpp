#pragma once
// Compact CSR view of a vertex subset (usually one component of a percolated
// hypercube). Local vertex ids are 0..n-1 in increasing original-id order;
// `orig` maps back so certificates can always be reported in hypercube ids.
// Synthetic graphs built from edge lists use orig == identity.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qperc/hypercube.hpp"

namespace qperc {

struct Graph {
  uint32_t n = 0;
  std::vector<uint32_t> xadj;  // size n+1
  std::vector<uint32_t> adj;   // neighbour lists, ascending within each vertex
  std::vector<uint32_t> orig;  // local id -> original vertex id, ascending

  uint64_t num_edges() const { return adj.size() / 2; }
  uint32_t deg(uint32_t v) const { return xadj[v + 1] - xadj[v]; }
  std::span<const uint32_t> neighbors(uint32_t v) const {
    return {adj.data() + xadj[v], adj.data() + xadj[v + 1]};
  }
  // Local id of an original vertex id (binary search; orig is sorted).
  uint32_t local_of(uint32_t original) const;
  bool connected() const;
};

// Induced subgraph of `g` on `vertices` (original ids, any order; the set is
// deduplicated and sorted). Typically `vertices` is one census component, in
// which case the result is the component graph.
Graph induced_graph(const HypercubeSubgraph& g,
                    const std::vector<uint32_t>& vertices);

// Simple graph from an edge list on vertices 0..n-1 (duplicates and loops
// rejected).
Graph graph_from_edges(uint32_t n,
                       const std::vector<std::pair<uint32_t, uint32_t>>& edges);

// BFS distances from `src` (local id); unreachable = UINT32_MAX.
std::vector<uint32_t> bfs_distances(const Graph& g, uint32_t src);

// Farthest vertex from src: (vertex, distance), ties by smallest local id.
std::pair<uint32_t, uint32_t> bfs_farthest(const Graph& g, uint32_t src);

}  // namespace qperc
