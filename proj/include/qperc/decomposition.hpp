#pragma once
// Cutting a rooted tree into connected pieces of controlled size, and the
// piece families used to partition the giant component of a percolated cube.
//
// tree_decompose repeatedly takes the deepest vertex whose remaining subtree
// still holds at least ell vertices (ties: deepest first, then smallest
// vertex id), cuts that subtree off as a piece, and when the leftover around
// the root drops below ell merges it into the last piece cut. The result is
// a partition into connected pieces, each of tree-diameter at most 2*ell,
// with |piece| in [ell, deg_T(cut vertex) * ell].

#include <cstdint>
#include <vector>

#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"

namespace qperc {

// A rooted spanning tree over arbitrary (host) vertex ids. vertices[0] is the
// root; parent[] and depth[] are indexed by position in `vertices`.
struct RootedTree {
  std::vector<uint32_t> vertices;
  std::vector<int32_t> parent;  // index into vertices, -1 for the root
  std::vector<uint32_t> depth;

  uint32_t root() const { return vertices[0]; }
  uint32_t size() const { return static_cast<uint32_t>(vertices.size()); }
  uint32_t max_degree() const;  // tree degree (parent + children)
};

// BFS spanning tree of root's component in g (neighbours scanned in
// ascending direction order, so the tree is deterministic).
RootedTree bfs_spanning_tree(const HypercubeSubgraph& g, uint32_t root);
RootedTree bfs_spanning_tree(const Graph& g, uint32_t root_local);

// Build a RootedTree directly from a parent array over 0..n-1 (parent[root]
// == root); used by tests and the random-tree harness paths.
RootedTree tree_from_parents(const std::vector<uint32_t>& parent,
                             uint32_t root);

struct PieceDecomposition {
  uint64_t ell = 0;
  uint32_t c1 = 1;  // max tree degree (every piece is <= c1 * ell)
  // Pieces sorted by (size desc, smallest vertex asc); vertex ids are host
  // ids, each piece sorted ascending. cut_vertex[i] is the vertex the piece
  // was cut at (the merged remainder belongs to the last cut).
  std::vector<std::vector<uint32_t>> pieces;
  std::vector<uint32_t> cut_vertex;
};

// Requires 1 <= ell <= |tree|.
PieceDecomposition tree_decompose(const RootedTree& tree, uint64_t ell);

struct DecompositionCheck {
  bool partition = false;       // pieces tile the tree's vertex set
  bool connected = false;       // each piece induces a subtree
  bool diameter_ok = false;     // tree-diameter of each piece <= 2*ell
  bool sizes_ok = false;        // ell <= |piece| <= c1*ell everywhere, and at
                                // most r pieces exceed degree_bound*ell where
                                // r = #tree vertices of degree > degree_bound
  bool all() const { return partition && connected && diameter_ok && sizes_ok; }
};

DecompositionCheck check_decomposition(const RootedTree& tree, uint64_t ell,
                                       const PieceDecomposition& deco,
                                       uint32_t degree_bound);

struct PieceFamily {
  PieceDecomposition deco;
  uint64_t ell = 0;
  uint64_t oversized_vs_dim = 0;  // pieces larger than d * ell (0 in Q^d,
                                  // where BFS-tree degrees are <= d)
};

// Piece family over the component containing the smallest vertex of
// `component`: BFS spanning tree + tree_decompose with
// ell = max(1, ceil(d / (c8 * b(s)))). Requires s < 2^d and |component| >= ell.
PieceFamily piece_family(const HypercubeSubgraph& g,
                         const std::vector<uint32_t>& component, double s,
                         double c8);

// Exact number of k-vertex subtrees of g rooted at v (trees counted as edge
// sets; two spanning trees of the same vertex set are distinct). Reverse
// search: a tree's canonical parent removes its largest-index removable leaf
// edge, so every tree is generated exactly once. Enforced caps k <= 7, d <= 5.
uint64_t enumerate_rooted_subtrees(const HypercubeSubgraph& g, uint32_t v,
                                   uint32_t k);

}  // namespace qperc
