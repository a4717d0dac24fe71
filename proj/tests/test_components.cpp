#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "doctest.h"
#include "qperc/components.hpp"
#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/rng.hpp"

using namespace qperc;

namespace {

// Independent component labelling by plain BFS over the cube masks; used to
// cross-check the union-find census.
std::vector<uint64_t> bfs_component_sizes(const HypercubeSubgraph& g) {
  const uint64_t n = g.num_vertices();
  std::vector<int> label(n, -1);
  std::vector<uint64_t> sizes;
  std::queue<uint64_t> q;
  for (uint64_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    label[s] = id;
    q.push(s);
    while (!q.empty()) {
      const uint64_t v = q.front();
      q.pop();
      ++sizes.back();
      for (uint32_t dir = 0; dir < g.dim(); ++dir)
        if (g.has_edge(v, dir)) {
          const uint64_t u = v ^ (uint64_t{1} << dir);
          if (label[u] < 0) {
            label[u] = id;
            q.push(u);
          }
        }
    }
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

}  // namespace

TEST_CASE("census matches a BFS oracle on random graphs") {
  for (uint32_t t = 0; t < 20; ++t) {
    const auto g = generate({8, 0.05 + 0.03 * t, -1.0, derive_seed(31, t)});
    const auto c = census(g);
    CHECK(c.sizes == bfs_component_sizes(g));
    // label/sizes agreement
    std::map<int32_t, uint64_t> counts;
    for (uint64_t v = 0; v < g.num_vertices(); ++v) ++counts[c.label[v]];
    for (size_t id = 0; id < c.sizes.size(); ++id)
      CHECK(counts[static_cast<int32_t>(id)] == c.sizes[id]);
  }
}

TEST_CASE("census ordering: sizes non-increasing, ties by smallest vertex") {
  HypercubeSubgraph g(3);  // vertices 0..7, no edges
  g.set_edge(0, 0);        // {0,1}
  g.set_edge(6, 0);        // {6,7}
  const auto c = census(g);
  REQUIRE(c.sizes.size() == 6);
  CHECK(c.sizes[0] == 2);
  CHECK(c.sizes[1] == 2);
  CHECK(c.rep[0] == 0);  // {0,1} before {6,7}
  CHECK(c.rep[1] == 6);
  CHECK(c.giant_id == 0);
  CHECK(c.component_vertices(0) == std::vector<uint32_t>{0, 1});
  CHECK(c.component_vertices(1) == std::vector<uint32_t>{6, 7});
}

TEST_CASE("giant fraction and second-largest order") {
  const auto full = HypercubeSubgraph::full(5);
  const auto cf = census(full);
  CHECK(giant_fraction(cf, 5) == 1.0);
  CHECK(second_largest_order(cf) == 0);  // single component

  HypercubeSubgraph empty(5);
  const auto ce = census(empty);
  CHECK(giant_fraction(ce, 5) == doctest::Approx(1.0 / 32.0));
  CHECK(second_largest_order(ce) == 1);
}

TEST_CASE("attachment report on a handcrafted nested pair") {
  // g1: a path 0-1-3 (edges 0^1, 1^2 dirs) plus isolated rest; its giant is
  // {0,1,3}. g2 adds vertex 2 attached to 3 and the pendant pair {4,5}
  // attached to 0: components of L1 - L1' seen from L1'.
  HypercubeSubgraph g1(3);
  g1.set_edge(0, 0);  // {0,1}
  g1.set_edge(1, 1);  // {1,3}
  HypercubeSubgraph g2 = g1;
  g2.set_edge(2, 0);  // {2,3}
  g2.set_edge(0, 2);  // {0,4}
  g2.set_edge(4, 0);  // {4,5}

  const auto ar = attachment_report(g1, g2);
  CHECK(ar.giant_nested);
  // C_0 = {4,5}, C_3 = {2}, C_1 = {}
  CHECK(ar.max_attachment == 2);
  CHECK(ar.histogram.at(2) == 1);
  CHECK(ar.histogram.at(1) == 1);
  CHECK(ar.histogram.at(0) == 1);
}

TEST_CASE("attachment report flags non-nested giants") {
  HypercubeSubgraph g1(3);
  g1.set_edge(0, 0);  // giant(g1) = {0,1}
  HypercubeSubgraph g2 = g1;
  g2.set_edge(2, 0);  // {2,3}
  g2.set_edge(2, 2);  // {2,6}: giant(g2) = {2,3,6} misses {0,1}
  const auto ar = attachment_report(g1, g2);
  CHECK_FALSE(ar.giant_nested);
}

TEST_CASE("two-hop density counts giant vertices within cube distance 2") {
  // Full cube: every vertex of Q^d is in the giant, so the minimum count is
  // the whole radius-2 ball: 1 + d + d(d-1)/2.
  const auto full = HypercubeSubgraph::full(6);
  CHECK(two_hop_density(full, census(full)) == 1 + 6 + 15);

  // Empty graph: giant is a single vertex (vertex 0); vertices at cube
  // distance > 2 from it see zero giant vertices.
  HypercubeSubgraph empty(4);
  CHECK(two_hop_density(empty, census(empty)) == 0);
}

TEST_CASE("five-hop boundary on a path through the cube") {
  // Edges forming the path 0-1-3-7-15-31 in Q^5 (one new direction each).
  HypercubeSubgraph g(5);
  g.set_edge(0, 0);
  g.set_edge(1, 1);
  g.set_edge(3, 2);
  g.set_edge(7, 3);
  g.set_edge(15, 4);
  std::vector<uint32_t> everything{0, 1, 3, 7, 15, 31};
  // From S = {0}: all five remaining path vertices are within 5 hops.
  CHECK(five_hop_boundary(g, {0}, everything) == 5);
  // Restriction filters the count.
  CHECK(five_hop_boundary(g, {0}, {3, 31}) == 2);
  // From the middle, both sides count but S itself never does.
  CHECK(five_hop_boundary(g, {7}, everything) == 5);
}
