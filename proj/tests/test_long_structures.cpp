#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "qperc/components.hpp"
#include "qperc/errors.hpp"
#include "qperc/graph.hpp"
#include "qperc/hypercube.hpp"
#include "qperc/long_structures.hpp"
#include "qperc/rng.hpp"

using namespace qperc;

namespace {

Graph full_cube_graph(uint32_t d) {
  std::vector<uint32_t> all(uint64_t{1} << d);
  std::iota(all.begin(), all.end(), 0u);
  return induced_graph(HypercubeSubgraph::full(d), all);
}

Graph path_graph(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return graph_from_edges(n, edges);
}

std::vector<Graph> percolation_components(uint32_t d, double p, uint64_t seed,
                                          uint32_t lo, uint32_t hi,
                                          size_t want) {
  std::vector<Graph> out;
  for (uint64_t s = seed; out.size() < want && s < seed + 200; ++s) {
    const HypercubeSubgraph g = generate({d, p, -1.0, s});
    const ComponentCensus c = census(g);
    for (size_t id = 0; id < c.sizes.size() && out.size() < want; ++id)
      if (c.sizes[id] >= lo && c.sizes[id] <= hi)
        out.push_back(
            induced_graph(g, c.component_vertices(static_cast<int32_t>(id))));
  }
  REQUIRE(out.size() == want);
  return out;
}

}  // namespace

TEST_CASE("diameter of the full cube is d in every mode") {
  for (uint32_t d : {2u, 3u, 5u}) {
    const Graph g = full_cube_graph(d);
    const DiameterResult ap = diameter(g, DiameterMode::kAllPairs);
    CHECK(ap.value == d);
    CHECK(ap.exact);
    CHECK(ap.method == "exact-all-bfs");
    CHECK(ap.bfs_count == g.n + 2);  // double-sweep seed, then every vertex

    const DiameterResult ifub = diameter(g, DiameterMode::kIfub);
    CHECK(ifub.value == d);
    CHECK(ifub.exact);
    CHECK(ifub.method == "ifub");
    CHECK(ifub.bfs_count <= g.n + 2);

    // every vertex of the cube has eccentricity d, so even the lower bound
    // lands exactly
    const DiameterResult ds = diameter(g, DiameterMode::kDoubleSweepLower);
    CHECK(ds.value == d);
    CHECK_FALSE(ds.exact);
    CHECK(ds.method == "double-sweep-lower");
    CHECK(ds.bfs_count == 2);

    // endpoints must realize the reported distance
    const auto dist = bfs_distances(g, g.local_of(ap.endpoint_u));
    CHECK(dist[g.local_of(ap.endpoint_v)] == ap.value);
  }
}

TEST_CASE("diameter of paths, caps, and error cases") {
  const Graph p9 = path_graph(9);
  CHECK(diameter(p9, DiameterMode::kAllPairs).value == 8);
  CHECK(diameter(p9, DiameterMode::kIfub).value == 8);
  CHECK(diameter(p9, DiameterMode::kDoubleSweepLower).value == 8);

  CHECK_THROWS_AS(diameter(p9, DiameterMode::kAllPairs, 4), CapExceeded);
  CHECK_THROWS(diameter(graph_from_edges(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("iFUB equals all-pairs BFS on percolation components") {
  for (const Graph& g : percolation_components(8, 0.30, 505, 3, 400, 12)) {
    const DiameterResult ap = diameter(g, DiameterMode::kAllPairs);
    const DiameterResult ifub = diameter(g, DiameterMode::kIfub);
    const DiameterResult ds = diameter(g, DiameterMode::kDoubleSweepLower);
    CHECK(ifub.value == ap.value);
    CHECK(ds.value <= ap.value);
    const auto dist = bfs_distances(g, g.local_of(ifub.endpoint_u));
    CHECK(dist[g.local_of(ifub.endpoint_v)] == ifub.value);
  }
}

TEST_CASE("cycle certificate validation") {
  const Graph c4 = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_NOTHROW(validate_cycle(c4, {{0, 1, 2, 3}}));
  CHECK_THROWS_AS(validate_cycle(c4, {{0, 1}}), std::logic_error);
  CHECK_THROWS_AS(validate_cycle(c4, {{0, 1, 0, 3}}), std::logic_error);
  CHECK_THROWS_AS(validate_cycle(c4, {{0, 1, 3, 2}}), std::logic_error);
  // wrap-around edge is part of the contract: 0-1-2 misses the 2-0 edge
  CHECK_THROWS_AS(validate_cycle(c4, {{0, 1, 2}}), std::logic_error);
}

TEST_CASE("the reflected binary code is a Hamiltonian cycle witness") {
  for (uint32_t d : {3u, 4u, 6u}) {
    const Graph g = full_cube_graph(d);
    CycleCertificate gray;
    for (uint32_t i = 0; i < (1u << d); ++i)
      gray.vertices.push_back(i ^ (i >> 1));
    CHECK_NOTHROW(validate_cycle(g, gray));
    CHECK(gray.length() == g.n);
  }
}

TEST_CASE("cycle search: certificates are honest, trees yield nothing") {
  // acyclic input: empty certificate, not an exception
  CHECK(longest_cycle_heuristic(path_graph(30), 10000, 5).empty());

  // triangle with a pendant: the only cycle has length 3
  const Graph tri = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const CycleCertificate c = longest_cycle_heuristic(tri, 10000, 5);
  REQUIRE_FALSE(c.empty());
  CHECK(c.length() == 3);
  CHECK_NOTHROW(validate_cycle(tri, c));

  // full cubes hold Hamiltonian cycles; the heuristic must find a long one
  for (uint32_t d : {4u, 5u, 6u}) {
    const Graph g = full_cube_graph(d);
    const CycleCertificate best = longest_cycle_heuristic(g, 200000, 99);
    REQUIRE_FALSE(best.empty());
    CHECK_NOTHROW(validate_cycle(g, best));
    CHECK(best.length() >= g.n / 2);
  }

  // deterministic in (budget, seed)
  const Graph q5 = full_cube_graph(5);
  CHECK(longest_cycle_heuristic(q5, 50000, 7).vertices ==
        longest_cycle_heuristic(q5, 50000, 7).vertices);
}

TEST_CASE("cycle length guarantee from expansion") {
  CHECK(cycle_bound_from_expansion(10.0, 6) == 7);
  CHECK(cycle_bound_from_expansion(1.0, 2) == 3);
  CHECK_THROWS(cycle_bound_from_expansion(0.5, 6));
  CHECK_THROWS(cycle_bound_from_expansion(10.0, 1));
}

TEST_CASE("minor certificate validation") {
  const Graph c4 = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  MinorCertificate k3;
  k3.branch_sets = {{0}, {1}, {2, 3}};
  CHECK_NOTHROW(validate_minor(c4, k3));

  MinorCertificate empty_set;
  empty_set.branch_sets = {{0}, {}};
  CHECK_THROWS_AS(validate_minor(c4, empty_set), std::logic_error);
  MinorCertificate overlap;
  overlap.branch_sets = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(validate_minor(c4, overlap), std::logic_error);
  MinorCertificate split;
  split.branch_sets = {{0, 2}, {1}};  // 0 and 2 are the diagonal: no edge
  CHECK_THROWS_AS(validate_minor(c4, split), std::logic_error);
  MinorCertificate apart;
  apart.branch_sets = {{0}, {2}};  // connected but not mutually adjacent
  CHECK_THROWS_AS(validate_minor(c4, apart), std::logic_error);
  MinorCertificate none;
  CHECK_THROWS_AS(validate_minor(c4, none), std::logic_error);
}

TEST_CASE("greedy minor construction") {
  // 4-cycle: a K3 minor exists (and K4 cannot: too few edges)
  const Graph c4 = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const MinorCertificate m3 = greedy_minor(c4, 3, 17);
  CHECK(m3.order() == 3);
  CHECK_NOTHROW(validate_minor(c4, m3));

  // complete graph: singleton landmarks are already fully adjacent
  std::vector<std::pair<uint32_t, uint32_t>> k6e;
  for (uint32_t v = 0; v < 6; ++v)
    for (uint32_t u = v + 1; u < 6; ++u) k6e.emplace_back(v, u);
  const Graph k6 = graph_from_edges(6, k6e);
  CHECK(greedy_minor(k6, 6, 3).order() == 6);

  // a path has no K3 minor, but always a K2
  const MinorCertificate m2 = greedy_minor(path_graph(8), 2, 1);
  CHECK(m2.order() == 2);
  CHECK_NOTHROW(validate_minor(path_graph(8), m2));

  // asking beyond the graph caps at what is attainable, never lies
  const MinorCertificate over = greedy_minor(c4, 10, 23);
  CHECK(over.order() <= 3);
  CHECK_NOTHROW(validate_minor(c4, over));

  // percolation giants: every returned certificate validates
  for (const Graph& g : percolation_components(8, 0.3, 808, 20, 400, 4)) {
    const MinorCertificate m = greedy_minor(g, 8, 4);
    CHECK_NOTHROW(validate_minor(g, m));
    CHECK(m.order() >= 2);
  }

  CHECK_THROWS_AS(greedy_minor(c4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(greedy_minor(c4, 65, 1), CapExceeded);
  CHECK_THROWS(greedy_minor(graph_from_edges(4, {{0, 1}, {2, 3}}), 2, 1));
}

TEST_CASE("separator-based minor bound") {
  CHECK(minor_bound_from_separator(100.0, 50.0, 2.0) ==
        doctest::Approx(2.5));
  CHECK_THROWS(minor_bound_from_separator(0.0, 50.0, 2.0));
  CHECK_THROWS(minor_bound_from_separator(100.0, -1.0, 2.0));
  CHECK_THROWS(minor_bound_from_separator(100.0, 50.0, 0.0));
}
