#include "qperc/long_structures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "qperc/errors.hpp"
#include "qperc/rng.hpp"

namespace qperc {

namespace {

// BFS returning distances and parents in one pass.
void bfs_tree(const Graph& g, uint32_t src, std::vector<uint32_t>& dist,
              std::vector<int64_t>& parent) {
  dist.assign(g.n, UINT32_MAX);
  parent.assign(g.n, -1);
  std::vector<uint32_t> queue{src};
  dist[src] = 0;
  for (size_t h = 0; h < queue.size(); ++h) {
    const uint32_t v = queue[h];
    for (uint32_t u : g.neighbors(v)) {
      if (dist[u] == UINT32_MAX) {
        dist[u] = dist[v] + 1;
        parent[u] = v;
        queue.push_back(u);
      }
    }
  }
}

struct Ecc {
  uint32_t value;
  uint32_t far_vertex;
};

Ecc eccentricity(const Graph& g, uint32_t src) {
  const auto [v, d] = bfs_farthest(g, src);
  return {d, v};
}

}  // namespace

DiameterResult diameter(const Graph& g, DiameterMode mode, uint64_t cap) {
  if (g.n == 0) throw std::invalid_argument("diameter: empty graph");
  if (!g.connected()) throw std::invalid_argument("diameter: not connected");
  DiameterResult out;
  if (g.n == 1) {
    out.method = mode == DiameterMode::kAllPairs      ? "exact-all-bfs"
                 : mode == DiameterMode::kIfub        ? "ifub"
                                                      : "double-sweep-lower";
    out.exact = mode != DiameterMode::kDoubleSweepLower;
    out.endpoint_u = out.endpoint_v = g.orig[0];
    return out;
  }

  // double sweep: BFS from 0, then from the farthest vertex found
  std::vector<uint32_t> dist;
  std::vector<int64_t> parent;
  bfs_tree(g, 0, dist, parent);
  uint32_t a = 0;
  for (uint32_t v = 0; v < g.n; ++v)
    if (dist[v] != UINT32_MAX && dist[v] > dist[a]) a = v;
  bfs_tree(g, a, dist, parent);
  uint32_t b = 0;
  for (uint32_t v = 0; v < g.n; ++v)
    if (dist[v] > dist[b]) b = v;
  uint32_t lb = dist[b];
  uint32_t lb_u = a, lb_v = b;
  out.bfs_count = 2;

  if (mode == DiameterMode::kDoubleSweepLower) {
    out.value = lb;
    out.exact = false;
    out.method = "double-sweep-lower";
    out.endpoint_u = g.orig[lb_u];
    out.endpoint_v = g.orig[lb_v];
    return out;
  }

  if (mode == DiameterMode::kAllPairs) {
    if (g.n > cap)
      throw CapExceeded("diameter: all-pairs mode over the vertex cap");
    for (uint32_t v = 0; v < g.n; ++v) {
      const Ecc e = eccentricity(g, v);
      ++out.bfs_count;
      if (e.value > lb) {
        lb = e.value;
        lb_u = v;
        lb_v = e.far_vertex;
      }
    }
    out.value = lb;
    out.method = "exact-all-bfs";
    out.endpoint_u = g.orig[lb_u];
    out.endpoint_v = g.orig[lb_v];
    return out;
  }

  // iFUB: root at the midpoint of the a-b double-sweep path, then refine the
  // upper bound 2i by scanning BFS levels downward from the root.
  uint32_t mid = b;
  for (uint32_t step = 0; step < dist[b] / 2; ++step)
    mid = static_cast<uint32_t>(parent[mid]);
  bfs_tree(g, mid, dist, parent);
  ++out.bfs_count;
  uint32_t ecc_mid = 0, far_mid = mid;
  for (uint32_t v = 0; v < g.n; ++v)
    if (dist[v] > ecc_mid) {
      ecc_mid = dist[v];
      far_mid = v;
    }
  if (ecc_mid > lb) {
    lb = ecc_mid;
    lb_u = mid;
    lb_v = far_mid;
  }
  std::vector<std::vector<uint32_t>> levels(ecc_mid + 1);
  for (uint32_t v = 0; v < g.n; ++v) levels[dist[v]].push_back(v);
  for (uint32_t i = ecc_mid; i >= 1; --i) {
    if (lb >= 2 * i) break;  // upper bound for deeper levels is 2i
    for (uint32_t x : levels[i]) {
      const Ecc e = eccentricity(g, x);
      ++out.bfs_count;
      if (e.value > lb) {
        lb = e.value;
        lb_u = x;
        lb_v = e.far_vertex;
      }
    }
  }
  out.value = lb;
  out.method = "ifub";
  out.endpoint_u = g.orig[lb_u];
  out.endpoint_v = g.orig[lb_v];
  return out;
}

void validate_cycle(const Graph& g, const CycleCertificate& cert) {
  const auto& cyc = cert.vertices;
  if (cyc.size() < 3)
    throw std::logic_error("cycle certificate: fewer than 3 vertices");
  std::unordered_set<uint32_t> seen;
  for (uint32_t v : cyc)
    if (!seen.insert(v).second)
      throw std::logic_error("cycle certificate: repeated vertex");
  for (size_t i = 0; i < cyc.size(); ++i) {
    const uint32_t v = g.local_of(cyc[i]);
    const uint32_t u = g.local_of(cyc[(i + 1) % cyc.size()]);
    const auto nb = g.neighbors(v);
    if (!std::binary_search(nb.begin(), nb.end(), u))
      throw std::logic_error("cycle certificate: missing edge");
  }
}

CycleCertificate longest_cycle_heuristic(const Graph& g, uint64_t budget,
                                         uint64_t seed) {
  CycleCertificate best;
  if (g.n < 3 || g.num_edges() < 3) return best;

  // Every cycle lives in the 2-core, so strip degree-<2 vertices first
  // (repeatedly; an acyclic graph strips away completely). Rotations in the
  // core are far more productive: no head ever dead-ends for degree reasons.
  std::vector<uint32_t> deg(g.n);
  std::vector<uint32_t> strip;
  for (uint32_t v = 0; v < g.n; ++v) {
    deg[v] = g.deg(v);
    if (deg[v] < 2) strip.push_back(v);
  }
  std::vector<uint8_t> in_core(g.n, 1);
  while (!strip.empty()) {
    const uint32_t v = strip.back();
    strip.pop_back();
    if (!in_core[v]) continue;
    in_core[v] = 0;
    for (uint32_t u : g.neighbors(v))
      if (in_core[u] && --deg[u] < 2) strip.push_back(u);
  }
  std::vector<uint32_t> core;
  for (uint32_t v = 0; v < g.n; ++v)
    if (in_core[v]) core.push_back(v);
  if (core.size() < 3) return best;

  Xoshiro256ss rng(derive_seed(seed, 0));
  std::vector<int64_t> pos(g.n, -1);
  std::vector<uint32_t> path, off_path, chords, best_local;
  uint64_t ops = 0;
  // Rotations that fail to open an extension stall the search in a small
  // orbit; after this many fruitless head operations we restart instead.
  const uint64_t stall_limit = 8 + 2 * static_cast<uint64_t>(
      std::bit_width(static_cast<uint64_t>(core.size())));

  while (ops < budget) {
    for (uint32_t v : path) pos[v] = -1;
    path.clear();
    const uint32_t start = core[rng.below(core.size())];
    path.push_back(start);
    pos[start] = 0;
    uint64_t stall = 0;

    while (ops < budget && stall <= stall_limit) {
      ++ops;
      const uint32_t head = path.back();
      off_path.clear();
      chords.clear();
      for (uint32_t u : g.neighbors(head)) {
        if (!in_core[u]) continue;
        if (pos[u] < 0) {
          off_path.push_back(u);
        } else if (pos[u] + 2 < static_cast<int64_t>(path.size())) {
          chords.push_back(u);  // closes a cycle of length >= 3
        }
      }
      // Harvest the longest cycle any chord closes right now.
      for (uint32_t u : chords) {
        const uint64_t len = path.size() - static_cast<uint64_t>(pos[u]);
        if (len > best_local.size())
          best_local.assign(path.begin() + pos[u], path.end());
      }
      if (!off_path.empty()) {
        const uint32_t next = off_path[rng.below(off_path.size())];
        pos[next] = static_cast<int64_t>(path.size());
        path.push_back(next);
        stall = 0;
        continue;
      }
      if (chords.empty()) break;  // dead end: restart from a fresh vertex
      // Rotate: reverse the segment behind a random chord endpoint.
      ++stall;
      const uint32_t u = chords[rng.below(chords.size())];
      const size_t from = static_cast<size_t>(pos[u]) + 1;
      std::reverse(path.begin() + from, path.end());
      for (size_t i = from; i < path.size(); ++i)
        pos[path[i]] = static_cast<int64_t>(i);
    }
  }

  if (!best_local.empty()) {
    best.vertices.reserve(best_local.size());
    for (uint32_t v : best_local) best.vertices.push_back(g.orig[v]);
    validate_cycle(g, best);
  }
  return best;
}

uint64_t cycle_bound_from_expansion(double k, uint64_t t) {
  if (!(k >= 1.0))
    throw std::invalid_argument("cycle_bound_from_expansion: k < 1");
  if (t < 2) throw std::invalid_argument("cycle_bound_from_expansion: t < 2");
  return t + 1;
}

void validate_minor(const Graph& g, const MinorCertificate& cert) {
  const auto& sets = cert.branch_sets;
  if (sets.empty()) throw std::logic_error("minor certificate: no branch sets");
  std::unordered_set<uint32_t> all;
  std::vector<int32_t> owner(g.n, -1);
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty())
      throw std::logic_error("minor certificate: empty branch set");
    for (uint32_t v : sets[i]) {
      if (!all.insert(v).second)
        throw std::logic_error("minor certificate: branch sets overlap");
      owner[g.local_of(v)] = static_cast<int32_t>(i);
    }
  }
  // connectivity of each branch set
  for (const auto& set : sets) {
    std::unordered_set<uint32_t> members;
    for (uint32_t v : set) members.insert(g.local_of(v));
    std::vector<uint32_t> queue{*members.begin()};
    std::unordered_set<uint32_t> vis{queue[0]};
    for (size_t h = 0; h < queue.size(); ++h)
      for (uint32_t u : g.neighbors(queue[h]))
        if (members.count(u) && vis.insert(u).second) queue.push_back(u);
    if (vis.size() != members.size())
      throw std::logic_error("minor certificate: branch set not connected");
  }
  // pairwise adjacency
  const size_t t = sets.size();
  std::vector<uint8_t> joined(t * t, 0);
  for (uint32_t v = 0; v < g.n; ++v) {
    if (owner[v] < 0) continue;
    for (uint32_t u : g.neighbors(v)) {
      if (owner[u] >= 0 && owner[u] != owner[v])
        joined[owner[v] * t + owner[u]] = 1;
    }
  }
  for (size_t i = 0; i < t; ++i)
    for (size_t j = i + 1; j < t; ++j)
      if (!joined[i * t + j])
        throw std::logic_error("minor certificate: branch sets not adjacent");
}

namespace {

// Exact max clique on <= 64 vertices given adjacency bitmasks.
void max_clique_rec(const std::vector<uint64_t>& adj, uint64_t r, uint64_t p,
                    int size, int& best_size, uint64_t& best_r) {
  if (size + std::popcount(p) <= best_size) return;
  if (p == 0) {
    if (size > best_size) {
      best_size = size;
      best_r = r;
    }
    return;
  }
  while (p) {
    if (size + std::popcount(p) <= best_size) return;
    const int v = std::countr_zero(p);
    const uint64_t bit = uint64_t{1} << v;
    p ^= bit;
    max_clique_rec(adj, r | bit, p & adj[v], size + 1, best_size, best_r);
  }
}

}  // namespace

MinorCertificate greedy_minor(const Graph& g, uint32_t target_t,
                              uint64_t seed) {
  if (target_t < 2) throw std::invalid_argument("greedy_minor: target_t < 2");
  if (target_t > 64)
    throw CapExceeded("greedy_minor: more than 64 branch sets");
  if (!g.connected())
    throw std::invalid_argument("greedy_minor: graph not connected");
  const uint32_t L = std::min<uint32_t>(target_t, g.n);
  Xoshiro256ss rng(derive_seed(seed, 0));

  // Farthest-point landmarks: spread starting cells across the graph.
  std::vector<uint32_t> landmarks;
  std::vector<uint32_t> dmin(g.n, UINT32_MAX);
  landmarks.push_back(static_cast<uint32_t>(rng.below(g.n)));
  for (;;) {
    const auto dist = bfs_distances(g, landmarks.back());
    for (uint32_t v = 0; v < g.n; ++v) dmin[v] = std::min(dmin[v], dist[v]);
    if (landmarks.size() == L) break;
    uint32_t far = 0;
    for (uint32_t v = 0; v < g.n; ++v)
      if (dmin[v] > dmin[far]) far = v;
    landmarks.push_back(far);
  }

  // Round-robin bounded growth; roughly half the vertices stay free so that
  // connecting paths can be routed later.
  const uint64_t size_cap = std::max<uint64_t>(1, g.n / (2 * L));
  std::vector<int32_t> owner(g.n, -1);
  std::vector<std::vector<uint32_t>> queues(L), members(L);
  for (uint32_t i = 0; i < L; ++i) {
    if (owner[landmarks[i]] >= 0) continue;  // landmark stolen by a duplicate
    owner[landmarks[i]] = static_cast<int32_t>(i);
    members[i].push_back(landmarks[i]);
    queues[i].push_back(landmarks[i]);
  }
  std::vector<size_t> heads(L, 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (uint32_t i = 0; i < L; ++i) {
      if (members[i].size() >= size_cap) continue;
      while (heads[i] < queues[i].size()) {
        const uint32_t v = queues[i][heads[i]];
        uint32_t grabbed = UINT32_MAX;
        for (uint32_t u : g.neighbors(v)) {
          if (owner[u] < 0) {
            grabbed = u;
            break;
          }
        }
        if (grabbed == UINT32_MAX) {
          ++heads[i];  // this frontier vertex is exhausted
          continue;
        }
        owner[grabbed] = static_cast<int32_t>(i);
        members[i].push_back(grabbed);
        queues[i].push_back(grabbed);
        progress = true;
        break;
      }
    }
  }

  // Cell adjacency, then connect missing pairs through free vertices.
  std::vector<uint64_t> adj(L, 0);
  auto mark = [&](int32_t x, int32_t y) {
    adj[x] |= uint64_t{1} << y;
    adj[y] |= uint64_t{1} << x;
  };
  for (uint32_t v = 0; v < g.n; ++v) {
    if (owner[v] < 0) continue;
    for (uint32_t u : g.neighbors(v))
      if (owner[u] >= 0 && owner[u] != owner[v]) mark(owner[v], owner[u]);
  }
  std::vector<int64_t> parent(g.n);
  std::vector<uint8_t> vis(g.n);
  for (uint32_t i = 0; i < L; ++i) {
    for (uint32_t j = i + 1; j < L; ++j) {
      if (adj[i] & (uint64_t{1} << j)) continue;
      // BFS over free vertices from the free neighborhood of cell i to any
      // free vertex touching cell j; absorb the found path into cell i.
      std::fill(vis.begin(), vis.end(), 0);
      std::vector<uint32_t> queue;
      for (uint32_t v : members[i])
        for (uint32_t u : g.neighbors(v))
          if (owner[u] < 0 && !vis[u]) {
            vis[u] = 1;
            parent[u] = -1;
            queue.push_back(u);
          }
      int64_t goal = -1;
      for (size_t h = 0; h < queue.size() && goal < 0; ++h) {
        const uint32_t v = queue[h];
        for (uint32_t u : g.neighbors(v)) {
          if (owner[u] == static_cast<int32_t>(j)) {
            goal = v;
            break;
          }
          if (owner[u] < 0 && !vis[u]) {
            vis[u] = 1;
            parent[u] = v;
            queue.push_back(u);
          }
        }
      }
      if (goal < 0) continue;  // no free route; the pair stays non-adjacent
      for (int64_t v = goal; v >= 0; v = parent[v]) {
        owner[v] = static_cast<int32_t>(i);
        members[i].push_back(static_cast<uint32_t>(v));
        for (uint32_t u : g.neighbors(static_cast<uint32_t>(v)))
          if (owner[u] >= 0 && owner[u] != static_cast<int32_t>(i))
            mark(static_cast<int32_t>(i), owner[u]);
        if (parent[v] == -1) break;
      }
    }
  }

  // Largest fully-adjacent subfamily = max clique of the cell graph
  // (restricted to cells that actually own vertices).
  uint64_t alive = 0;
  for (uint32_t i = 0; i < L; ++i)
    if (!members[i].empty()) alive |= uint64_t{1} << i;
  int best_size = 0;
  uint64_t best_mask = 0;
  max_clique_rec(adj, 0, alive, 0, best_size, best_mask);

  MinorCertificate cert;
  for (uint32_t i = 0; i < L; ++i) {
    if (!(best_mask & (uint64_t{1} << i))) continue;
    std::vector<uint32_t> set;
    set.reserve(members[i].size());
    for (uint32_t v : members[i]) set.push_back(g.orig[v]);
    std::sort(set.begin(), set.end());
    cert.branch_sets.push_back(std::move(set));
  }
  if (!cert.branch_sets.empty()) validate_minor(g, cert);
  return cert;
}

double minor_bound_from_separator(double n_value, double boundary, double c) {
  if (!(n_value > 0.0) || !(boundary > 0.0) || !(c > 0.0))
    throw std::invalid_argument("minor_bound_from_separator: nonpositive input");
  return boundary / (c * std::sqrt(n_value));
}

}  // namespace qperc
