#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qperc/components.hpp"
#include "qperc/decomposition.hpp"
#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/rng.hpp"

using namespace qperc;

namespace {

// Brute-force oracle for rooted subtree counts: pick k-1 edges out of the
// edge list, keep the selections that form a tree containing the root. Trees
// are edge sets, exactly the convention the reverse-search enumerator uses.
uint64_t subtrees_by_edge_subsets(const HypercubeSubgraph& g, uint32_t root,
                                  uint32_t k) {
  if (k == 1) return 1;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = 0; v < g.num_vertices(); ++v)
    for (uint32_t dir = 0; dir < g.dim(); ++dir)
      if (!(v >> dir & 1u) && g.has_edge(v, dir))
        edges.emplace_back(v, v ^ (1u << dir));

  const uint32_t m = static_cast<uint32_t>(edges.size());
  const uint32_t need = k - 1;
  if (m < need) return 0;
  std::vector<uint32_t> idx(need);
  for (uint32_t i = 0; i < need; ++i) idx[i] = i;

  uint64_t count = 0;
  std::vector<uint32_t> verts;
  std::vector<std::pair<uint32_t, uint32_t>> chosen;
  while (true) {
    verts.clear();
    chosen.clear();
    for (uint32_t i : idx) {
      chosen.push_back(edges[i]);
      verts.push_back(edges[i].first);
      verts.push_back(edges[i].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    // k-1 edges on k vertices are a tree iff connected; grow from the root
    if (verts.size() == k &&
        std::binary_search(verts.begin(), verts.end(), root)) {
      std::vector<uint32_t> reach{root};
      std::vector<uint8_t> used(chosen.size(), 0);
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t e = 0; e < chosen.size(); ++e) {
          if (used[e]) continue;
          const bool ha = std::find(reach.begin(), reach.end(),
                                    chosen[e].first) != reach.end();
          const bool hb = std::find(reach.begin(), reach.end(),
                                    chosen[e].second) != reach.end();
          if (ha != hb) {
            reach.push_back(ha ? chosen[e].second : chosen[e].first);
            used[e] = 1;
            grew = true;
          }
        }
      }
      if (reach.size() == k) ++count;
    }
    // next combination
    uint32_t j = need;
    while (j > 0 && idx[j - 1] == m - need + (j - 1)) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (uint32_t i = j; i < need; ++i) idx[i] = idx[i - 1] + 1;
  }
  return count;
}

std::vector<uint32_t> path_parents(uint32_t n) {
  std::vector<uint32_t> parent(n);
  for (uint32_t i = 1; i < n; ++i) parent[i] = i - 1;
  parent[0] = 0;
  return parent;
}

}  // namespace

TEST_CASE("tree_from_parents builds depths and rejects junk") {
  const RootedTree t = tree_from_parents(path_parents(10), 0);
  REQUIRE(t.size() == 10);
  CHECK(t.root() == 0);
  for (uint32_t i = 0; i < 10; ++i) CHECK(t.depth[i] == t.vertices[i]);
  CHECK(t.max_degree() == 2);

  CHECK_THROWS(tree_from_parents({1, 0}, 0));        // parent[root] != root
  CHECK_THROWS(tree_from_parents({0, 1}, 2));        // root out of range
  CHECK_THROWS(tree_from_parents({0, 2, 1}, 0));     // 1 <-> 2 cycle
  CHECK_THROWS(tree_from_parents({0, 5, 1}, 0));     // parent out of range
}

TEST_CASE("tree_decompose on a 10-path with ell = 3") {
  const RootedTree t = tree_from_parents(path_parents(10), 0);
  const PieceDecomposition deco = tree_decompose(t, 3);
  // Cuts fire at depth 7, then 4, then 1; the {0} remainder joins the last
  // cut. Sorted by size desc then smallest member.
  REQUIRE(deco.pieces.size() == 3);
  CHECK(deco.pieces[0] == std::vector<uint32_t>{0, 1, 2, 3});
  CHECK(deco.pieces[1] == std::vector<uint32_t>{4, 5, 6});
  CHECK(deco.pieces[2] == std::vector<uint32_t>{7, 8, 9});
  CHECK(deco.cut_vertex[0] == 1);
  CHECK(deco.cut_vertex[1] == 4);
  CHECK(deco.cut_vertex[2] == 7);
  CHECK(deco.c1 == 2);
  CHECK(check_decomposition(t, 3, deco, 3).all());
}

TEST_CASE("tree_decompose extremes: ell = 1 and ell = n") {
  const RootedTree t = tree_from_parents(path_parents(7), 0);
  const PieceDecomposition singles = tree_decompose(t, 1);
  CHECK(singles.pieces.size() == 7);
  for (const auto& p : singles.pieces) CHECK(p.size() == 1);
  CHECK(check_decomposition(t, 1, singles, 3).all());

  const PieceDecomposition whole = tree_decompose(t, 7);
  REQUIRE(whole.pieces.size() == 1);
  CHECK(whole.pieces[0].size() == 7);
  CHECK(whole.cut_vertex[0] == 0);

  CHECK_THROWS(tree_decompose(t, 0));
  CHECK_THROWS(tree_decompose(t, 8));
}

TEST_CASE("leftover joins the last piece cut") {
  // root 0 with two depth-2 legs: 0-1-3 and 0-2-4. Both legs reach ell = 2 at
  // the same depth, smaller vertex first, so 1 is cut before 2 and the {0}
  // remainder merges into 2's piece.
  const RootedTree t = tree_from_parents({0, 0, 0, 1, 2}, 0);
  const PieceDecomposition deco = tree_decompose(t, 2);
  REQUIRE(deco.pieces.size() == 2);
  CHECK(deco.pieces[0] == std::vector<uint32_t>{0, 2, 4});
  CHECK(deco.pieces[1] == std::vector<uint32_t>{1, 3});
  CHECK(deco.cut_vertex[0] == 2);
  CHECK(deco.cut_vertex[1] == 1);
  CHECK(check_decomposition(t, 2, deco, 3).all());
}

TEST_CASE("check_decomposition notices tampering") {
  const RootedTree t = tree_from_parents(path_parents(10), 0);
  PieceDecomposition deco = tree_decompose(t, 3);

  PieceDecomposition missing = deco;
  missing.pieces[2].pop_back();
  CHECK_FALSE(check_decomposition(t, 3, missing, 3).partition);

  // move vertex 4 into the {7,8,9} piece: still a partition, not connected
  PieceDecomposition torn = deco;
  torn.pieces[1] = {5, 6};
  torn.pieces[2] = {4, 7, 8, 9};
  const DecompositionCheck c = check_decomposition(t, 3, torn, 3);
  CHECK(c.partition);
  CHECK_FALSE(c.connected);

  // a 2-piece is undersized once we claim ell = 3
  PieceDecomposition undersized = tree_decompose(t, 2);
  bool has_small = false;
  for (const auto& p : undersized.pieces) has_small |= p.size() < 3;
  if (has_small)
    CHECK_FALSE(check_decomposition(t, 3, undersized, 3).sizes_ok);
}

TEST_CASE("random trees: all decomposition postconditions hold") {
  Xoshiro256ss rng(20240811);
  for (uint64_t ell : {2u, 7u, 23u}) {
    for (int rep = 0; rep < 120; ++rep) {
      const uint32_t n =
          static_cast<uint32_t>(ell + rng.below(260));
      std::vector<uint32_t> parent(n);
      parent[0] = 0;
      for (uint32_t i = 1; i < n; ++i)
        parent[i] = static_cast<uint32_t>(rng.below(i));
      const RootedTree t = tree_from_parents(parent, 0);
      const PieceDecomposition deco = tree_decompose(t, ell);
      const DecompositionCheck c = check_decomposition(t, ell, deco, 3);
      REQUIRE(c.partition);
      REQUIRE(c.connected);
      REQUIRE(c.diameter_ok);
      REQUIRE(c.sizes_ok);
    }
  }
}

TEST_CASE("BFS spanning tree of the full cube has Hamming depths") {
  const HypercubeSubgraph g = HypercubeSubgraph::full(5);
  const RootedTree t = bfs_spanning_tree(g, 0);
  REQUIRE(t.size() == 32);
  for (uint32_t i = 0; i < t.size(); ++i) {
    CHECK(t.depth[i] == static_cast<uint32_t>(std::popcount(t.vertices[i])));
    if (t.parent[i] >= 0) {
      const uint32_t pv = t.vertices[static_cast<uint32_t>(t.parent[i])];
      CHECK(std::popcount(pv ^ t.vertices[i]) == 1);  // tree edges are cube edges
      CHECK(t.depth[i] == t.depth[static_cast<uint32_t>(t.parent[i])] + 1);
    }
  }
  CHECK(t.max_degree() == 5);  // the root spawns all d children

  // offset root: depths are distances to the root, not to 0
  const RootedTree t7 = bfs_spanning_tree(g, 7);
  for (uint32_t i = 0; i < t7.size(); ++i)
    CHECK(t7.depth[i] == static_cast<uint32_t>(std::popcount(t7.vertices[i] ^ 7u)));
}

TEST_CASE("BFS spanning tree over a CSR graph") {
  const Graph g = graph_from_edges(
      5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const RootedTree t = bfs_spanning_tree(g, 0);
  REQUIRE(t.size() == 5);
  std::vector<uint32_t> depth_of(5);
  for (uint32_t i = 0; i < 5; ++i) depth_of[t.vertices[i]] = t.depth[i];
  CHECK(depth_of == std::vector<uint32_t>{0, 1, 2, 2, 1});
  CHECK_THROWS(bfs_spanning_tree(g, 5));
}

TEST_CASE("piece_family on the full cube and on a percolated giant") {
  const HypercubeSubgraph full4 = HypercubeSubgraph::full(4);
  const std::vector<uint32_t> everyone = [&] {
    std::vector<uint32_t> v(16);
    for (uint32_t i = 0; i < 16; ++i) v[i] = i;
    return v;
  }();
  // b(2, 4) = 3/4, so ell = ceil(4 / 0.75) = 6
  const PieceFamily fam = piece_family(full4, everyone, 2.0, 1.0);
  CHECK(fam.ell == 6);
  CHECK(fam.oversized_vs_dim == 0);
  const RootedTree tree4 = bfs_spanning_tree(full4, 0);
  CHECK(check_decomposition(tree4, fam.ell, fam.deco, 4).all());

  // supercritical percolation: decompose the giant, replay the same tree
  const HypercubeSubgraph g = generate({12, 1.5 / 12, -1.0, 4242});
  const ComponentCensus c = census(g);
  const std::vector<uint32_t> giant = c.component_vertices(c.giant_id);
  REQUIRE(giant.size() > 100);
  const PieceFamily pf =
      piece_family(g, giant, static_cast<double>(giant.size()) / 2.0, 1.0);
  const RootedTree tree =
      bfs_spanning_tree(g, *std::min_element(giant.begin(), giant.end()));
  CHECK(check_decomposition(tree, pf.ell, pf.deco, 12).all());
  CHECK(pf.oversized_vs_dim == 0);

  CHECK_THROWS(piece_family(full4, everyone, 16.0, 1.0));  // b(2^d) = 0
  CHECK_THROWS(piece_family(full4, everyone, 2.0, 0.05));  // ell > |component|
  CHECK_THROWS(piece_family(full4, {}, 2.0, 1.0));
  // {0, 3} is not connected in the empty subgraph
  const HypercubeSubgraph empty3{3};
  CHECK_THROWS(piece_family(empty3, {0, 3}, 2.0, 10.0));
}

TEST_CASE("rooted subtree counts: hand values on tiny cubes") {
  const HypercubeSubgraph c4 = HypercubeSubgraph::full(2);
  CHECK(enumerate_rooted_subtrees(c4, 0, 1) == 1);
  CHECK(enumerate_rooted_subtrees(c4, 0, 2) == 2);
  CHECK(enumerate_rooted_subtrees(c4, 0, 3) == 3);
  // spanning trees of a 4-cycle: drop any one of the 4 edges
  CHECK(enumerate_rooted_subtrees(c4, 0, 4) == 4);

  const HypercubeSubgraph q3 = HypercubeSubgraph::full(3);
  CHECK(enumerate_rooted_subtrees(q3, 0, 2) == 3);
  CHECK(enumerate_rooted_subtrees(q3, 0, 3) == 9);
  // vertex-transitive: the count cannot depend on the root
  for (uint32_t v = 1; v < 8; ++v) {
    CHECK(enumerate_rooted_subtrees(q3, v, 3) == 9);
    CHECK(enumerate_rooted_subtrees(q3, v, 4) ==
          enumerate_rooted_subtrees(q3, 0, 4));
  }

  CHECK_THROWS(enumerate_rooted_subtrees(q3, 0, 0));
  CHECK_THROWS(enumerate_rooted_subtrees(q3, 0, 8));
  CHECK_THROWS(enumerate_rooted_subtrees(q3, 8, 2));
  const HypercubeSubgraph q6 = HypercubeSubgraph::full(6);
  CHECK_THROWS(enumerate_rooted_subtrees(q6, 0, 3));
}

TEST_CASE("rooted subtree counts match the edge-subset oracle") {
  const HypercubeSubgraph q3 = HypercubeSubgraph::full(3);
  for (uint32_t k = 2; k <= 6; ++k)
    CHECK(enumerate_rooted_subtrees(q3, 0, k) ==
          subtrees_by_edge_subsets(q3, 0, k));

  for (uint64_t seed : {11u, 12u, 13u}) {
    const HypercubeSubgraph g = generate({4, 0.55, -1.0, seed});
    for (uint32_t root : {0u, 5u, 15u})
      for (uint32_t k = 2; k <= 5; ++k)
        CHECK(enumerate_rooted_subtrees(g, root, k) ==
              subtrees_by_edge_subsets(g, root, k));
  }
}
