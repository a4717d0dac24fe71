#include "qperc/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace qperc {

uint32_t Graph::local_of(uint32_t original) const {
  auto it = std::lower_bound(orig.begin(), orig.end(), original);
  if (it == orig.end() || *it != original)
    throw std::invalid_argument("Graph::local_of: vertex not in graph");
  return static_cast<uint32_t>(it - orig.begin());
}

bool Graph::connected() const {
  if (n == 0) return false;
  const auto dist = bfs_distances(*this, 0);
  for (uint32_t v = 0; v < n; ++v)
    if (dist[v] == UINT32_MAX) return false;
  return true;
}

Graph induced_graph(const HypercubeSubgraph& g,
                    const std::vector<uint32_t>& vertices) {
  Graph out;
  out.orig = vertices;
  std::sort(out.orig.begin(), out.orig.end());
  out.orig.erase(std::unique(out.orig.begin(), out.orig.end()),
                 out.orig.end());
  out.n = static_cast<uint32_t>(out.orig.size());
  out.xadj.assign(out.n + 1, 0);

  auto member = [&](uint32_t v) {
    auto it = std::lower_bound(out.orig.begin(), out.orig.end(), v);
    return it != out.orig.end() && *it == v
               ? static_cast<int64_t>(it - out.orig.begin())
               : int64_t{-1};
  };

  for (uint32_t i = 0; i < out.n; ++i) {
    const uint32_t v = out.orig[i];
    uint32_t cnt = 0;
    for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      if (member(v ^ (1u << dir)) >= 0) ++cnt;
    }
    out.xadj[i + 1] = cnt;
  }
  for (uint32_t i = 0; i < out.n; ++i) out.xadj[i + 1] += out.xadj[i];
  out.adj.resize(out.xadj[out.n]);
  std::vector<uint32_t> cursor(out.xadj.begin(), out.xadj.end() - 1);
  for (uint32_t i = 0; i < out.n; ++i) {
    const uint32_t v = out.orig[i];
    // neighbours in ascending original id == ascending local id
    std::vector<uint32_t> nb;
    for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      const int64_t loc = member(v ^ (1u << dir));
      if (loc >= 0) nb.push_back(static_cast<uint32_t>(loc));
    }
    std::sort(nb.begin(), nb.end());
    for (uint32_t u : nb) out.adj[cursor[i]++] = u;
  }
  return out;
}

Graph graph_from_edges(
    uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  Graph out;
  out.n = n;
  out.orig.resize(n);
  for (uint32_t i = 0; i < n; ++i) out.orig[i] = i;
  std::vector<std::vector<uint32_t>> nb(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n || u == v)
      throw std::invalid_argument("graph_from_edges: bad edge");
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  out.xadj.assign(n + 1, 0);
  for (uint32_t v = 0; v < n; ++v) {
    std::sort(nb[v].begin(), nb[v].end());
    if (std::adjacent_find(nb[v].begin(), nb[v].end()) != nb[v].end())
      throw std::invalid_argument("graph_from_edges: duplicate edge");
    out.xadj[v + 1] = out.xadj[v] + static_cast<uint32_t>(nb[v].size());
  }
  out.adj.reserve(out.xadj[n]);
  for (uint32_t v = 0; v < n; ++v)
    out.adj.insert(out.adj.end(), nb[v].begin(), nb[v].end());
  return out;
}

std::vector<uint32_t> bfs_distances(const Graph& g, uint32_t src) {
  std::vector<uint32_t> dist(g.n, UINT32_MAX);
  std::vector<uint32_t> queue;
  queue.reserve(g.n);
  dist[src] = 0;
  queue.push_back(src);
  for (size_t head = 0; head < queue.size(); ++head) {
    const uint32_t v = queue[head];
    for (uint32_t u : g.neighbors(v)) {
      if (dist[u] == UINT32_MAX) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::pair<uint32_t, uint32_t> bfs_farthest(const Graph& g, uint32_t src) {
  const auto dist = bfs_distances(g, src);
  uint32_t best = src, bestd = 0;
  for (uint32_t v = 0; v < g.n; ++v) {
    if (dist[v] != UINT32_MAX && dist[v] > bestd) {
      best = v;
      bestd = dist[v];
    }
  }
  return {best, bestd};
}

}  // namespace qperc
