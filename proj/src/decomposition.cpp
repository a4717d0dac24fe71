#include "qperc/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "qperc/analytic.hpp"

namespace qperc {

uint32_t RootedTree::max_degree() const {
  std::vector<uint32_t> deg(vertices.size(), 0);
  for (size_t i = 1; i < vertices.size(); ++i) {
    ++deg[i];
    ++deg[static_cast<size_t>(parent[i])];
  }
  uint32_t best = 0;
  for (uint32_t d : deg) best = std::max(best, d);
  return best;
}

RootedTree bfs_spanning_tree(const HypercubeSubgraph& g, uint32_t root) {
  if (root >= g.num_vertices())
    throw std::invalid_argument("bfs_spanning_tree: root out of range");
  RootedTree t;
  std::unordered_map<uint32_t, uint32_t> pos;
  t.vertices.push_back(root);
  t.parent.push_back(-1);
  t.depth.push_back(0);
  pos.emplace(root, 0);
  for (size_t head = 0; head < t.vertices.size(); ++head) {
    const uint32_t v = t.vertices[head];
    for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      const uint32_t u = v ^ (1u << dir);
      if (pos.emplace(u, t.vertices.size()).second) {
        t.vertices.push_back(u);
        t.parent.push_back(static_cast<int32_t>(head));
        t.depth.push_back(t.depth[head] + 1);
      }
    }
  }
  return t;
}

RootedTree bfs_spanning_tree(const Graph& g, uint32_t root_local) {
  if (root_local >= g.n)
    throw std::invalid_argument("bfs_spanning_tree: root out of range");
  RootedTree t;
  std::vector<int64_t> pos(g.n, -1);
  t.vertices.push_back(g.orig[root_local]);
  t.parent.push_back(-1);
  t.depth.push_back(0);
  pos[root_local] = 0;
  std::vector<uint32_t> queue{root_local};
  for (size_t head = 0; head < queue.size(); ++head) {
    const uint32_t v = queue[head];
    for (uint32_t u : g.neighbors(v)) {
      if (pos[u] < 0) {
        pos[u] = static_cast<int64_t>(t.vertices.size());
        t.vertices.push_back(g.orig[u]);
        t.parent.push_back(static_cast<int32_t>(head));
        t.depth.push_back(t.depth[head] + 1);
        queue.push_back(u);
      }
    }
  }
  return t;
}

RootedTree tree_from_parents(const std::vector<uint32_t>& parent,
                             uint32_t root) {
  const uint32_t n = static_cast<uint32_t>(parent.size());
  if (root >= n || parent[root] != root)
    throw std::invalid_argument("tree_from_parents: bad root");
  std::vector<std::vector<uint32_t>> children(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (v == root) continue;
    if (parent[v] >= n)
      throw std::invalid_argument("tree_from_parents: parent out of range");
    children[parent[v]].push_back(v);
  }
  RootedTree t;
  t.vertices.push_back(root);
  t.parent.push_back(-1);
  t.depth.push_back(0);
  for (size_t head = 0; head < t.vertices.size(); ++head) {
    for (uint32_t c : children[t.vertices[head]]) {
      t.vertices.push_back(c);
      t.parent.push_back(static_cast<int32_t>(head));
      t.depth.push_back(t.depth[head] + 1);
    }
  }
  if (t.vertices.size() != n)
    throw std::invalid_argument("tree_from_parents: not a tree (cycle?)");
  return t;
}

PieceDecomposition tree_decompose(const RootedTree& tree, uint64_t ell) {
  const uint32_t n = tree.size();
  if (ell < 1 || ell > n)
    throw std::invalid_argument("tree_decompose: need 1 <= ell <= |tree|");

  std::vector<std::vector<uint32_t>> children(n);
  for (uint32_t i = 1; i < n; ++i)
    children[static_cast<uint32_t>(tree.parent[i])].push_back(i);

  // Deepest-first sweep (ties broken by smaller host vertex id) is equivalent
  // to repeatedly cutting at the deepest vertex whose live subtree has grown
  // to >= ell: cutting at depth h never changes sizes at depth >= h elsewhere.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (tree.depth[a] != tree.depth[b]) return tree.depth[a] > tree.depth[b];
    return tree.vertices[a] < tree.vertices[b];
  });

  std::vector<uint64_t> size(n, 1);
  std::vector<uint8_t> removed(n, 0);
  PieceDecomposition out;
  out.ell = ell;
  out.c1 = std::max(1u, tree.max_degree());

  std::vector<uint32_t> stack;
  auto carve = [&](uint32_t at) {
    std::vector<uint32_t> piece;
    stack.assign(1, at);
    while (!stack.empty()) {
      const uint32_t x = stack.back();
      stack.pop_back();
      removed[x] = 1;
      piece.push_back(tree.vertices[x]);
      for (uint32_t c : children[x])
        if (!removed[c]) stack.push_back(c);
    }
    std::sort(piece.begin(), piece.end());
    out.pieces.push_back(std::move(piece));
    out.cut_vertex.push_back(tree.vertices[at]);
  };

  for (uint32_t i : order) {
    if (size[i] >= ell) {
      carve(i);
    } else if (tree.parent[i] >= 0) {
      size[static_cast<uint32_t>(tree.parent[i])] += size[i];
    }
  }

  // Leftover around the root (< ell vertices) joins the last piece cut; it is
  // connected to that piece through the cut vertex's parent.
  std::vector<uint32_t> leftover;
  for (uint32_t i = 0; i < n; ++i)
    if (!removed[i]) leftover.push_back(tree.vertices[i]);
  if (!leftover.empty()) {
    auto& last = out.pieces.back();
    last.insert(last.end(), leftover.begin(), leftover.end());
    std::sort(last.begin(), last.end());
  }

  std::vector<uint32_t> perm(out.pieces.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](uint32_t a, uint32_t b) {
    if (out.pieces[a].size() != out.pieces[b].size())
      return out.pieces[a].size() > out.pieces[b].size();
    return out.pieces[a].front() < out.pieces[b].front();
  });
  PieceDecomposition sorted;
  sorted.ell = out.ell;
  sorted.c1 = out.c1;
  for (uint32_t i : perm) {
    sorted.pieces.push_back(std::move(out.pieces[i]));
    sorted.cut_vertex.push_back(out.cut_vertex[i]);
  }
  return sorted;
}

DecompositionCheck check_decomposition(const RootedTree& tree, uint64_t ell,
                                       const PieceDecomposition& deco,
                                       uint32_t degree_bound) {
  DecompositionCheck res;
  const uint32_t n = tree.size();

  std::vector<uint32_t> all;
  for (const auto& p : deco.pieces) all.insert(all.end(), p.begin(), p.end());
  std::vector<uint32_t> want(tree.vertices);
  std::sort(all.begin(), all.end());
  std::sort(want.begin(), want.end());
  res.partition = all == want;
  if (!res.partition) return res;

  std::unordered_map<uint32_t, uint32_t> pos;
  pos.reserve(n * 2);
  for (uint32_t i = 0; i < n; ++i) pos.emplace(tree.vertices[i], i);
  std::vector<std::vector<uint32_t>> adj(n);
  for (uint32_t i = 1; i < n; ++i) {
    adj[i].push_back(static_cast<uint32_t>(tree.parent[i]));
    adj[static_cast<uint32_t>(tree.parent[i])].push_back(i);
  }
  std::vector<uint32_t> deg(n, 0);
  for (uint32_t i = 0; i < n; ++i) deg[i] = static_cast<uint32_t>(adj[i].size());

  // connectivity + exact tree diameter per piece (double BFS is exact on trees)
  res.connected = true;
  res.diameter_ok = true;
  std::vector<int32_t> mark(n, -1);
  std::vector<uint32_t> queue, dist(n);
  auto bfs_in_piece = [&](uint32_t start, int32_t piece_id,
                          uint32_t* farthest) {
    queue.assign(1, start);
    dist[start] = 0;
    std::vector<uint8_t> seen(n, 0);
    seen[start] = 1;
    uint32_t count = 1, far = start;
    for (size_t h = 0; h < queue.size(); ++h) {
      const uint32_t v = queue[h];
      if (dist[v] > dist[far] || (dist[v] == dist[far] && v < far)) far = v;
      for (uint32_t u : adj[v]) {
        if (!seen[u] && mark[u] == piece_id) {
          seen[u] = 1;
          dist[u] = dist[v] + 1;
          queue.push_back(u);
          ++count;
        }
      }
    }
    if (farthest) *farthest = far;
    return count;
  };
  for (size_t k = 0; k < deco.pieces.size(); ++k) {
    for (uint32_t v : deco.pieces[k]) mark[pos.at(v)] = static_cast<int32_t>(k);
  }
  for (size_t k = 0; k < deco.pieces.size(); ++k) {
    const uint32_t start = pos.at(deco.pieces[k].front());
    uint32_t far = start;
    if (bfs_in_piece(start, static_cast<int32_t>(k), &far) !=
        deco.pieces[k].size()) {
      res.connected = false;
      break;
    }
    uint32_t far2 = far;
    bfs_in_piece(far, static_cast<int32_t>(k), &far2);
    if (dist[far2] > 2 * ell) res.diameter_ok = false;
  }
  if (!res.connected) return res;

  uint64_t r = 0;
  for (uint32_t i = 0; i < n; ++i) r += deg[i] > degree_bound;
  res.sizes_ok = true;
  for (size_t k = 0; k < deco.pieces.size(); ++k) {
    const uint64_t s = deco.pieces[k].size();
    if (s < ell || s > static_cast<uint64_t>(deco.c1) * ell)
      res.sizes_ok = false;
    if (k >= r && s > static_cast<uint64_t>(degree_bound) * ell)
      res.sizes_ok = false;  // pieces are sorted desc, so index >= r must obey
  }
  return res;
}

PieceFamily piece_family(const HypercubeSubgraph& g,
                         const std::vector<uint32_t>& component, double s,
                         double c8) {
  if (component.empty())
    throw std::invalid_argument("piece_family: empty component");
  const uint32_t d = g.dim();
  const double b = b_of_s(s, d);
  if (!(b > 0.0))
    throw std::invalid_argument("piece_family: s = 2^d gives b(s) = 0");
  PieceFamily out;
  out.ell = std::max<uint64_t>(
      1, static_cast<uint64_t>(std::ceil(static_cast<double>(d) / (c8 * b))));
  if (component.size() < out.ell)
    throw std::invalid_argument("piece_family: component smaller than ell");
  const uint32_t root =
      *std::min_element(component.begin(), component.end());
  RootedTree tree = bfs_spanning_tree(g, root);
  if (tree.size() != component.size())
    throw std::invalid_argument("piece_family: component is not connected");
  out.deco = tree_decompose(tree, out.ell);
  for (const auto& p : out.deco.pieces)
    if (p.size() > static_cast<uint64_t>(d) * out.ell) ++out.oversized_vs_dim;
  return out;
}

namespace {

struct SubtreeState {
  uint32_t vertex_mask = 0;
  std::vector<uint32_t> edges;       // canonical indices, unsorted
  std::vector<uint8_t> deg;          // per cube vertex, degree within tree
};

// Largest-index edge of t whose removal peels a non-root leaf.
uint32_t max_removable_edge(const SubtreeState& t, uint32_t root, uint32_t d) {
  uint32_t best = 0;
  bool found = false;
  for (uint32_t e : t.edges) {
    const uint32_t v = e / d, dir = e % d;
    const uint32_t u = v ^ (1u << dir);
    const bool removable =
        (t.deg[v] == 1 && v != root) || (t.deg[u] == 1 && u != root);
    if (removable && (!found || e > best)) {
      best = e;
      found = true;
    }
  }
  return best;
}

void extend(const HypercubeSubgraph& g, SubtreeState& t, uint32_t root,
            uint32_t k, uint64_t& count) {
  const uint32_t d = g.dim();
  const uint32_t have =
      static_cast<uint32_t>(std::popcount(t.vertex_mask));
  if (have == k) {
    ++count;
    return;
  }
  for (uint32_t bits = t.vertex_mask; bits; bits &= bits - 1) {
    const uint32_t v = static_cast<uint32_t>(std::countr_zero(bits));
    for (uint32_t open = g.open_mask(v); open; open &= open - 1) {
      const uint32_t dir = static_cast<uint32_t>(std::countr_zero(open));
      const uint32_t w = v ^ (1u << dir);
      if (t.vertex_mask & (1u << w)) continue;
      const uint32_t lo = std::min(v, w);
      const uint32_t e = lo * d + dir;
      // child check: the new edge must be the one the canonical reduction of
      // the grown tree would remove
      t.vertex_mask |= 1u << w;
      t.edges.push_back(e);
      ++t.deg[v];
      ++t.deg[w];
      if (max_removable_edge(t, root, d) == e) extend(g, t, root, k, count);
      --t.deg[v];
      --t.deg[w];
      t.edges.pop_back();
      t.vertex_mask &= ~(1u << w);
    }
  }
}

}  // namespace

uint64_t enumerate_rooted_subtrees(const HypercubeSubgraph& g, uint32_t v,
                                   uint32_t k) {
  if (g.dim() > 5)
    throw std::invalid_argument("enumerate_rooted_subtrees: d > 5");
  if (k < 1 || k > 7)
    throw std::invalid_argument("enumerate_rooted_subtrees: k outside [1,7]");
  if (v >= g.num_vertices())
    throw std::invalid_argument("enumerate_rooted_subtrees: bad vertex");
  if (k == 1) return 1;
  SubtreeState t;
  t.vertex_mask = 1u << v;
  t.deg.assign(g.num_vertices(), 0);
  uint64_t count = 0;
  extend(g, t, v, k, count);
  return count;
}

}  // namespace qperc
