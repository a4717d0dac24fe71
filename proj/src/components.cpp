#include "qperc/components.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qperc {

namespace {

// Union-find with path halving and union by size.
struct UnionFind {
  std::vector<uint32_t> parent;
  std::vector<uint32_t> size;

  explicit UnionFind(uint64_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  uint32_t find(uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

std::vector<uint32_t> ComponentCensus::component_vertices(int32_t id) const {
  std::vector<uint32_t> out;
  out.reserve(sizes[id]);
  for (uint32_t v = 0; v < label.size(); ++v)
    if (label[v] == id) out.push_back(v);
  return out;
}

ComponentCensus census(const HypercubeSubgraph& g) {
  const uint64_t n = g.num_vertices();
  UnionFind uf(n);
  for (uint64_t v = 0; v < n; ++v) {
    // canonical edges only: direction bits that are zero in v
    uint32_t bits = g.open_mask(v) & ~static_cast<uint32_t>(v);
    for (; bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      uf.unite(static_cast<uint32_t>(v),
               static_cast<uint32_t>(v ^ (1u << dir)));
    }
  }

  // Roots in ascending vertex order, so the first visit of a root is also the
  // smallest vertex of its component.
  ComponentCensus out;
  out.label.assign(n, -1);
  std::vector<uint32_t> root_slot(n, UINT32_MAX);
  std::vector<uint64_t> comp_size;
  std::vector<uint32_t> comp_rep;
  for (uint64_t v = 0; v < n; ++v) {
    const uint32_t r = uf.find(static_cast<uint32_t>(v));
    if (root_slot[r] == UINT32_MAX) {
      root_slot[r] = static_cast<uint32_t>(comp_size.size());
      comp_size.push_back(uf.size[r]);
      comp_rep.push_back(static_cast<uint32_t>(v));
    }
  }
  const size_t k = comp_size.size();
  std::vector<uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (comp_size[a] != comp_size[b]) return comp_size[a] > comp_size[b];
    return comp_rep[a] < comp_rep[b];
  });
  std::vector<int32_t> slot_to_index(k);
  out.sizes.resize(k);
  out.rep.resize(k);
  for (size_t i = 0; i < k; ++i) {
    slot_to_index[order[i]] = static_cast<int32_t>(i);
    out.sizes[i] = comp_size[order[i]];
    out.rep[i] = comp_rep[order[i]];
  }
  for (uint64_t v = 0; v < n; ++v)
    out.label[v] = slot_to_index[root_slot[uf.find(static_cast<uint32_t>(v))]];
  out.giant_id = 0;
  return out;
}

double giant_fraction(const ComponentCensus& c, uint32_t d) {
  return static_cast<double>(c.sizes[0]) /
         static_cast<double>(uint64_t{1} << d);
}

uint64_t second_largest_order(const ComponentCensus& c) {
  return c.sizes.size() > 1 ? c.sizes[1] : 0;
}

AttachmentReport attachment_report(const HypercubeSubgraph& g1,
                                   const HypercubeSubgraph& g2) {
  if (!g1.subgraph_of(g2))
    throw std::invalid_argument("attachment_report: g1 is not a subgraph of g2");
  const uint64_t n = g1.num_vertices();
  const ComponentCensus c1 = census(g1);
  const ComponentCensus c2 = census(g2);

  AttachmentReport rep;
  // L1' must sit inside L1 for the measurement to make sense.
  for (uint64_t v = 0; v < n; ++v) {
    if (c1.label[v] == c1.giant_id && c2.label[v] != c2.giant_id)
      return rep;  // giant_nested stays false
  }
  rep.giant_nested = true;

  // R = L1 \ L1'; find components of g2 induced on R.
  std::vector<uint8_t> in_r(n, 0);
  for (uint64_t v = 0; v < n; ++v)
    in_r[v] = c2.label[v] == c2.giant_id && c1.label[v] != c1.giant_id;
  UnionFind uf(n);
  for (uint64_t v = 0; v < n; ++v) {
    if (!in_r[v]) continue;
    uint32_t bits = g2.open_mask(v) & ~static_cast<uint32_t>(v);
    for (; bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      const uint32_t u = static_cast<uint32_t>(v ^ (1u << dir));
      if (in_r[u]) uf.unite(static_cast<uint32_t>(v), u);
    }
  }

  std::vector<uint32_t> touched;  // roots seen for the current v
  for (uint64_t v = 0; v < n; ++v) {
    if (c1.label[v] != c1.giant_id) continue;
    touched.clear();
    uint64_t attach = 0;
    for (uint32_t bits = g2.open_mask(v); bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      const uint32_t u = static_cast<uint32_t>(v ^ (1u << dir));
      if (!in_r[u]) continue;
      const uint32_t r = uf.find(u);
      if (std::find(touched.begin(), touched.end(), r) == touched.end()) {
        touched.push_back(r);
        attach += uf.size[r];
      }
    }
    rep.max_attachment = std::max(rep.max_attachment, attach);
    ++rep.histogram[attach];
  }
  return rep;
}

uint64_t two_hop_density(const HypercubeSubgraph& g,
                         const ComponentCensus& c) {
  const uint64_t n = g.num_vertices();
  const uint32_t d = g.dim();
  std::vector<uint8_t> giant(n, 0);
  for (uint64_t v = 0; v < n; ++v) giant[v] = c.label[v] == c.giant_id;
  uint64_t best = UINT64_MAX;
  for (uint64_t v = 0; v < n; ++v) {
    uint64_t cnt = giant[v];
    for (uint32_t i = 0; i < d; ++i) {
      const uint64_t u = v ^ (uint64_t{1} << i);
      cnt += giant[u];
      for (uint32_t j = i + 1; j < d; ++j) cnt += giant[u ^ (uint64_t{1} << j)];
    }
    best = std::min(best, cnt);
    if (best == 0) break;
  }
  return best;
}

uint64_t five_hop_boundary(const HypercubeSubgraph& g,
                           const std::vector<uint32_t>& S,
                           const std::vector<uint32_t>& restrict_to) {
  if (S.empty()) throw std::invalid_argument("five_hop_boundary: empty S");
  const uint64_t n = g.num_vertices();
  std::vector<uint8_t> state(n, 0);  // 1 = in S, 2 = visited outside S
  std::vector<uint8_t> in_restrict(n, 0);
  for (uint32_t v : restrict_to) in_restrict[v] = 1;
  std::vector<uint32_t> frontier(S), next;
  for (uint32_t v : S) state[v] = 1;
  uint64_t count = 0;
  for (int depth = 1; depth <= 5 && !frontier.empty(); ++depth) {
    next.clear();
    for (uint32_t v : frontier) {
      for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
        const int dir = std::countr_zero(bits);
        const uint32_t u = v ^ (1u << dir);
        if (state[u]) continue;
        state[u] = 2;
        next.push_back(u);
        if (in_restrict[u]) ++count;
      }
    }
    frontier.swap(next);
  }
  return count;
}

}  // namespace qperc
