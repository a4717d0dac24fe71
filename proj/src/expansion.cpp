#include "qperc/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "qperc/analytic.hpp"
#include "qperc/components.hpp"
#include "qperc/errors.hpp"
#include "qperc/rng.hpp"

namespace qperc {

namespace {

std::vector<uint8_t> member_flags(uint32_t n, const std::vector<uint32_t>& S,
                                  const char* who) {
  std::vector<uint8_t> in(n, 0);
  for (uint32_t v : S) {
    if (v >= n) throw std::invalid_argument(std::string(who) + ": vertex out of range");
    if (in[v]) throw std::invalid_argument(std::string(who) + ": duplicate vertex");
    in[v] = 1;
  }
  return in;
}

}  // namespace

CutStats cut_stats(const Graph& g, const std::vector<uint32_t>& S) {
  if (S.empty() || S.size() >= g.n)
    throw std::invalid_argument("cut_stats: S must be a proper nonempty subset");
  const auto in = member_flags(g.n, S, "cut_stats");
  CutStats out;
  std::vector<uint8_t> seen(g.n, 0);
  for (uint32_t v : S) {
    out.volume += g.deg(v);
    for (uint32_t u : g.neighbors(v)) {
      if (in[u]) continue;
      ++out.boundary_edges;
      if (!seen[u]) {
        seen[u] = 1;
        ++out.neighborhood;
      }
    }
  }
  if (out.volume == 0)
    throw std::invalid_argument("cut_stats: S has no incident edges");
  out.ratio = static_cast<double>(out.boundary_edges) /
              (2.0 * static_cast<double>(out.volume));
  return out;
}

CutStats cut_stats(const HypercubeSubgraph& g,
                   const std::vector<uint32_t>& S) {
  const uint64_t n = g.num_vertices();
  if (S.empty() || S.size() >= n)
    throw std::invalid_argument("cut_stats: S must be a proper nonempty subset");
  std::vector<uint8_t> in(n, 0);
  for (uint32_t v : S) {
    if (v >= n) throw std::invalid_argument("cut_stats: vertex out of range");
    in[v] = 1;
  }
  CutStats out;
  std::unordered_set<uint32_t> nbhd;
  for (uint32_t v : S) {
    out.volume += g.degree(v);
    for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
      const uint32_t u = v ^ (bits & (0u - bits));
      if (!in[u]) {
        ++out.boundary_edges;
        nbhd.insert(u);
      }
    }
  }
  if (out.volume == 0)
    throw std::invalid_argument("cut_stats: S has no incident edges");
  out.neighborhood = nbhd.size();
  out.ratio = static_cast<double>(out.boundary_edges) /
              (2.0 * static_cast<double>(out.volume));
  return out;
}

HarperCheck verify_harper(uint32_t d, const std::vector<uint32_t>& S) {
  if (d < 1 || d > 30) throw std::invalid_argument("verify_harper: bad d");
  const uint64_t n = uint64_t{1} << d;
  if (S.empty() || S.size() > (n >> 1))
    throw std::invalid_argument("verify_harper: need 1 <= |S| <= 2^{d-1}");
  std::vector<uint8_t> in(n, 0);
  for (uint32_t v : S) {
    if (v >= n) throw std::invalid_argument("verify_harper: vertex out of range");
    if (in[v]) throw std::invalid_argument("verify_harper: duplicate vertex");
    in[v] = 1;
  }
  HarperCheck out;
  for (uint32_t v : S)
    for (uint32_t i = 0; i < d; ++i) out.actual += !in[v ^ (1u << i)];
  out.bound = harper_bound(S.size(), d);
  out.ok = static_cast<double>(out.actual) >= out.bound - 1e-9;
  return out;
}

CheegerExact cheeger_exact(const Graph& g) {
  if (g.n < 2) throw std::invalid_argument("cheeger_exact: need n >= 2");
  if (g.n > 22) throw CapExceeded("cheeger_exact: enumeration cap is n <= 22");
  if (g.num_edges() == 0)
    throw std::invalid_argument("cheeger_exact: graph has no edges");
  // adjacency bitmasks: cut size and volume update in O(1) per Gray step
  std::vector<uint32_t> am(g.n, 0);
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.neighbors(v)) am[v] |= 1u << u;
  const uint64_t total_vol = 2 * g.num_edges();

  uint32_t smask = 0;
  uint64_t vol = 0;
  int64_t cut = 0;
  double best = 1.0;
  uint32_t best_mask = 0;
  const uint32_t full = (g.n == 32) ? ~0u : ((1u << g.n) - 1u);
  const uint64_t subsets = uint64_t{1} << g.n;
  for (uint64_t k = 1; k < subsets; ++k) {
    const uint32_t v = static_cast<uint32_t>(std::countr_zero(k));
    const uint32_t bit = 1u << v;
    const int inside = static_cast<int>(std::popcount(am[v] & smask));
    if (smask & bit) {  // removing v
      smask ^= bit;
      vol -= g.deg(v);
      cut -= static_cast<int64_t>(g.deg(v)) -
             2 * static_cast<int64_t>(std::popcount(am[v] & smask));
    } else {  // adding v
      smask ^= bit;
      vol += g.deg(v);
      cut += static_cast<int64_t>(g.deg(v)) - 2 * static_cast<int64_t>(inside);
    }
    if (smask == 0 || smask == full) continue;
    if (2 * vol > total_vol || vol == 0) continue;
    const double phi =
        static_cast<double>(cut) / (2.0 * static_cast<double>(vol));
    if (phi < best) {
      best = phi;
      best_mask = smask;
    }
  }
  CheegerExact out;
  out.phi = best;
  for (uint32_t v = 0; v < g.n; ++v)
    if (best_mask & (1u << v)) out.witness.push_back(v);
  return out;
}

VertexExpansionExact min_vertex_expansion_exact(const Graph& g) {
  if (g.n < 2)
    throw std::invalid_argument("min_vertex_expansion_exact: need n >= 2");
  if (g.n > 22)
    throw CapExceeded("min_vertex_expansion_exact: enumeration cap is n <= 22");
  std::vector<uint32_t> am(g.n, 0);
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.neighbors(v)) am[v] |= 1u << u;
  VertexExpansionExact out;
  out.alpha = static_cast<double>(g.n);
  uint32_t best_mask = 0;
  const uint64_t subsets = uint64_t{1} << g.n;
  for (uint64_t mask = 1; mask < subsets; ++mask) {
    const int size = std::popcount(mask);
    if (2 * size > static_cast<int>(g.n)) continue;
    uint32_t nb = 0;
    for (uint64_t bits = mask; bits; bits &= bits - 1)
      nb |= am[std::countr_zero(bits)];
    nb &= ~static_cast<uint32_t>(mask);
    const double ratio =
        static_cast<double>(std::popcount(nb)) / static_cast<double>(size);
    if (ratio < out.alpha) {
      out.alpha = ratio;
      best_mask = static_cast<uint32_t>(mask);
    }
  }
  for (uint32_t v = 0; v < g.n; ++v)
    if (best_mask & (1u << v)) out.witness.push_back(v);
  return out;
}

namespace {

// All eigenvalues + eigenvectors of a symmetric tridiagonal matrix by the
// implicit-shift QL algorithm (classic tql2). diag/sub are overwritten;
// z starts as identity and ends with eigenvectors in columns.
void tql2(std::vector<double>& diag, std::vector<double>& sub,
          std::vector<std::vector<double>>& z) {
  const int m = static_cast<int>(diag.size());
  if (m == 1) return;
  sub.push_back(0.0);
  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < m - 1; ++mm) {
        const double dd = std::fabs(diag[mm]) + std::fabs(diag[mm + 1]);
        if (std::fabs(sub[mm]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (mm != l) {
        if (iter++ == 60)
          throw std::runtime_error("tql2: too many QL iterations");
        double gph = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
        double r = std::hypot(gph, 1.0);
        gph = diag[mm] - diag[l] + sub[l] / (gph + std::copysign(r, gph));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = mm - 1;
        for (; i >= l; --i) {
          double f = s * sub[i];
          const double b = c * sub[i];
          r = std::hypot(f, gph);
          sub[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            sub[mm] = 0.0;
            break;
          }
          s = f / r;
          c = gph / r;
          gph = diag[i + 1] - p;
          r = (diag[i] - gph) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = gph + p;
          gph = c * r - b;
          for (auto& row : z) {
            f = row[i + 1];
            row[i + 1] = s * row[i] + c * f;
            row[i] = c * row[i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;  // premature underflow; retry step
        diag[l] -= p;
        sub[l] = gph;
        sub[mm] = 0.0;
      }
    } while (mm != l);
  }
  sub.pop_back();
}

struct LazyOperator {
  const Graph& g;
  std::vector<double> invsqrt;

  explicit LazyOperator(const Graph& graph) : g(graph) {
    invsqrt.resize(g.n);
    for (uint32_t v = 0; v < g.n; ++v) {
      if (g.deg(v) == 0)
        throw std::invalid_argument("spectral_summary: isolated vertex");
      invsqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.deg(v)));
    }
  }
  // y = (1/2 I + 1/2 D^{-1/2} A D^{-1/2}) x  -- similar to the lazy walk
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (uint32_t v = 0; v < g.n; ++v) {
      double acc = 0.0;
      for (uint32_t u : g.neighbors(v)) acc += x[u] * invsqrt[u];
      y[v] = 0.5 * x[v] + 0.5 * invsqrt[v] * acc;
    }
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

}  // namespace

SpectralSummary spectral_summary(const Graph& g, double tol) {
  if (g.n < 2) throw std::invalid_argument("spectral_summary: need >= 2 vertices");
  if (!g.connected())
    throw std::invalid_argument("spectral_summary: graph not connected");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_summary: tol <= 0");

  const LazyOperator op(g);
  const uint32_t n = g.n;
  std::vector<double> u0(n);
  for (uint32_t v = 0; v < n; ++v)
    u0[v] = std::sqrt(static_cast<double>(g.deg(v)));
  {
    const double nn = norm2(u0);
    for (auto& x : u0) x /= nn;
  }

  const uint32_t kmax = std::min<uint32_t>(n - 1, 300);
  SpectralSummary out;
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(n), ritz;
  double theta = 0.0;
  bool converged = false;
  uint32_t total_iters = 0;

  for (int restart = 0; restart < 3 && !converged; ++restart) {
    basis.clear();
    alpha.clear();
    beta.clear();
    Xoshiro256ss rng(derive_seed(0x5BEC7A11u + restart, n));
    std::vector<double> v0(n);
    for (auto& x : v0) x = rng.uniform() - 0.5;
    axpy(-dot(u0, v0), u0, v0);
    const double nv = norm2(v0);
    if (nv < 1e-12) continue;
    for (auto& x : v0) x /= nv;
    basis.push_back(v0);

    for (uint32_t j = 0; j < kmax; ++j) {
      ++total_iters;
      op.apply(basis[j], w);
      if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
      const double aj = dot(basis[j], w);
      alpha.push_back(aj);
      axpy(-aj, basis[j], w);
      for (int pass = 0; pass < 2; ++pass) {  // full reorthogonalization
        axpy(-dot(u0, w), u0, w);
        for (const auto& q : basis) axpy(-dot(q, w), q, w);
      }
      const double bj = norm2(w);

      // Ritz estimate from the current tridiagonal section
      std::vector<double> dg(alpha), sb(beta);
      std::vector<std::vector<double>> z(j + 1,
                                         std::vector<double>(j + 1, 0.0));
      for (uint32_t i = 0; i <= j; ++i) z[i][i] = 1.0;
      tql2(dg, sb, z);
      size_t top = 0;
      for (size_t i = 1; i < dg.size(); ++i)
        if (dg[i] > dg[top]) top = i;
      theta = dg[top];
      const double resid = std::fabs(bj * z[j][top]);
      if (resid <= tol || bj < 1e-14 || j + 1 == kmax) {
        ritz.assign(n, 0.0);
        for (uint32_t i = 0; i <= j; ++i) axpy(z[i][top], basis[i], ritz);
        const double rn = norm2(ritz);
        for (auto& x : ritz) x /= rn;
        // direct residual of the Ritz pair
        op.apply(ritz, w);
        axpy(-theta, ritz, w);
        axpy(-dot(u0, w), u0, w);  // measure within the deflated subspace
        out.residual = norm2(w);
        converged = out.residual <= tol * std::max(1.0, std::fabs(theta)) ||
                    bj < 1e-14;
        break;
      }
      beta.push_back(bj);
      for (auto& x : w) x /= bj;
      basis.push_back(w);
    }
  }
  out.iterations = total_iters;
  if (!converged)
    throw std::runtime_error("spectral_summary: Lanczos did not converge");

  out.lambda2 = theta;
  out.gap = 1.0 - theta;

  // Sweep cut over the walk-space second eigenvector D^{-1/2} ritz.
  std::vector<double> fiedler(n);
  for (uint32_t v = 0; v < n; ++v) fiedler[v] = ritz[v] * op.invsqrt[v];
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (fiedler[a] != fiedler[b]) return fiedler[a] > fiedler[b];
    return a < b;
  });
  const uint64_t total_vol = 2 * g.num_edges();
  std::vector<uint8_t> in_prefix(n, 0);
  uint64_t vol = 0;
  int64_t cut = 0;
  double best = 0.5;
  uint32_t best_k = 1;
  bool best_prefix_side = true;
  for (uint32_t k = 0; k + 1 < n; ++k) {
    const uint32_t v = order[k];
    int inside = 0;
    for (uint32_t u : g.neighbors(v)) inside += in_prefix[u];
    in_prefix[v] = 1;
    vol += g.deg(v);
    cut += static_cast<int64_t>(g.deg(v)) - 2 * inside;
    const bool prefix_small = 2 * vol <= total_vol;
    const uint64_t side_vol = prefix_small ? vol : total_vol - vol;
    if (side_vol == 0) continue;
    const double phi =
        static_cast<double>(cut) / (2.0 * static_cast<double>(side_vol));
    if (phi < best) {
      best = phi;
      best_k = k + 1;
      best_prefix_side = prefix_small;
    }
  }
  out.sweep_phi = best;
  if (best_prefix_side)
    out.sweep_witness.assign(order.begin(), order.begin() + best_k);
  else
    out.sweep_witness.assign(order.begin() + best_k, order.end());
  std::sort(out.sweep_witness.begin(), out.sweep_witness.end());

  out.cheeger_lower = out.gap / 2.0;
  out.cheeger_upper = std::min(out.sweep_phi, std::sqrt(2.0 * out.gap));
  return out;
}

void validate_path_family(const Graph& g, const std::vector<uint32_t>& A,
                          const std::vector<uint32_t>& B,
                          const PathFamily& fam) {
  std::unordered_set<uint32_t> a_set(A.begin(), A.end());
  std::unordered_set<uint32_t> b_set(B.begin(), B.end());
  std::unordered_set<uint32_t> used;
  for (const auto& path : fam.paths) {
    if (path.empty()) throw std::logic_error("path family: empty path");
    if (!a_set.count(path.front()))
      throw std::logic_error("path family: path does not start in A");
    if (!b_set.count(path.back()))
      throw std::logic_error("path family: path does not end in B");
    if (fam.max_len > 0 && path.size() - 1 > fam.max_len)
      throw std::logic_error("path family: path exceeds length cap");
    for (size_t i = 0; i < path.size(); ++i) {
      if (!used.insert(path[i]).second)
        throw std::logic_error("path family: paths not vertex-disjoint");
      if (i + 1 < path.size()) {
        const uint32_t a = g.local_of(path[i]);
        const auto nb = g.neighbors(a);
        const uint32_t bl = g.local_of(path[i + 1]);
        if (!std::binary_search(nb.begin(), nb.end(), bl))
          throw std::logic_error("path family: non-adjacent step");
      }
    }
  }
}

namespace {

struct Dinic {
  struct Arc {
    uint32_t to;
    int32_t cap;
    uint32_t rev;
  };
  std::vector<std::vector<Arc>> arcs;
  std::vector<int32_t> level, iter;

  explicit Dinic(uint32_t nodes) : arcs(nodes), level(nodes), iter(nodes) {}

  void add(uint32_t from, uint32_t to, int32_t cap) {
    arcs[from].push_back({to, cap, static_cast<uint32_t>(arcs[to].size())});
    arcs[to].push_back({from, 0, static_cast<uint32_t>(arcs[from].size() - 1)});
  }

  bool bfs(uint32_t s, uint32_t t) {
    std::fill(level.begin(), level.end(), -1);
    std::vector<uint32_t> queue{s};
    level[s] = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
      const uint32_t v = queue[h];
      for (const auto& a : arcs[v]) {
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int32_t dfs(uint32_t v, uint32_t t, int32_t f) {
    if (v == t) return f;
    for (auto& i = iter[v]; i < static_cast<int32_t>(arcs[v].size()); ++i) {
      Arc& a = arcs[v][i];
      if (a.cap > 0 && level[v] < level[a.to]) {
        const int32_t d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          arcs[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int64_t max_flow(uint32_t s, uint32_t t) {
    int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (int32_t f = dfs(s, t, INT32_MAX)) flow += f;
    }
    return flow;
  }
};

}  // namespace

PathFamily disjoint_paths_maxflow(const Graph& g,
                                  const std::vector<uint32_t>& A,
                                  const std::vector<uint32_t>& B) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("disjoint_paths_maxflow: empty endpoint set");
  std::unordered_set<uint32_t> a_set(A.begin(), A.end());
  for (uint32_t b : B)
    if (a_set.count(b))
      throw std::invalid_argument("disjoint_paths_maxflow: A and B intersect");

  // vertex split: in(v) = 2v, out(v) = 2v+1 with unit capacity through v
  const uint32_t S = 2 * g.n, T = 2 * g.n + 1;
  Dinic net(2 * g.n + 2);
  for (uint32_t v = 0; v < g.n; ++v) net.add(2 * v, 2 * v + 1, 1);
  for (uint32_t v = 0; v < g.n; ++v)
    for (uint32_t u : g.neighbors(v)) net.add(2 * v + 1, 2 * u, 1);
  std::vector<uint32_t> a_local, b_local;
  for (uint32_t a : A) a_local.push_back(g.local_of(a));
  for (uint32_t b : B) b_local.push_back(g.local_of(b));
  std::sort(a_local.begin(), a_local.end());
  std::sort(b_local.begin(), b_local.end());
  for (uint32_t a : a_local) net.add(S, 2 * a, 1);
  for (uint32_t b : b_local) net.add(2 * b + 1, T, 1);
  net.max_flow(S, T);

  // Unit vertex capacities: every flow-carrying vertex has exactly one used
  // outgoing arc, so paths peel off by walking used arcs from each source.
  PathFamily fam;
  std::vector<uint8_t> is_b(g.n, 0);
  for (uint32_t b : b_local) is_b[b] = 1;
  for (const auto& arc : net.arcs[S]) {
    if (arc.cap != 0) continue;  // saturated S -> in(a)
    std::vector<uint32_t> path;
    uint32_t v = arc.to / 2;
    for (;;) {
      path.push_back(g.orig[v]);
      if (is_b[v]) {
        // confirm the unit actually leaves to T (not a longer continuation)
        bool to_t = false;
        for (auto& a2 : net.arcs[2 * v + 1])
          if (a2.to == T && a2.cap == 0) {
            a2.cap = 1;  // consume
            to_t = true;
            break;
          }
        if (to_t) break;
      }
      bool advanced = false;
      for (auto& a2 : net.arcs[2 * v + 1]) {
        if (a2.to != T && a2.cap == 0 && a2.to != 2 * v) {
          a2.cap = 1;  // consume this unit so later walks skip it
          v = a2.to / 2;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        throw std::logic_error("disjoint_paths_maxflow: broken flow walk");
    }
    fam.paths.push_back(std::move(path));
  }
  fam.max_len = 0;
  validate_path_family(g, A, B, fam);
  return fam;
}

PathFamily disjoint_short_paths_greedy(const Graph& g,
                                       const std::vector<uint32_t>& A,
                                       const std::vector<uint32_t>& B,
                                       uint32_t max_len) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("disjoint_short_paths_greedy: empty endpoint set");
  if (max_len == 0)
    throw std::invalid_argument("disjoint_short_paths_greedy: max_len == 0");
  std::unordered_set<uint32_t> a_set(A.begin(), A.end());
  for (uint32_t b : B)
    if (a_set.count(b))
      throw std::invalid_argument("disjoint_short_paths_greedy: A and B intersect");

  std::vector<uint32_t> a_local, b_local;
  for (uint32_t a : A) a_local.push_back(g.local_of(a));
  for (uint32_t b : B) b_local.push_back(g.local_of(b));
  std::sort(a_local.begin(), a_local.end());
  std::vector<uint8_t> is_b(g.n, 0);
  for (uint32_t b : b_local) is_b[b] = 1;

  PathFamily fam;
  fam.max_len = max_len;
  std::vector<uint8_t> blocked(g.n, 0);
  std::vector<int32_t> parent(g.n);
  std::vector<uint32_t> dist(g.n);
  std::vector<uint32_t> queue;
  for (;;) {
    std::fill(parent.begin(), parent.end(), -2);
    queue.clear();
    for (uint32_t a : a_local) {
      if (!blocked[a]) {
        parent[a] = -1;
        dist[a] = 0;
        queue.push_back(a);
      }
    }
    int64_t hit = -1;
    for (size_t h = 0; h < queue.size() && hit < 0; ++h) {
      const uint32_t v = queue[h];
      if (is_b[v]) {
        hit = v;
        break;
      }
      if (dist[v] == max_len) continue;
      for (uint32_t u : g.neighbors(v)) {
        if (!blocked[u] && parent[u] == -2) {
          parent[u] = static_cast<int32_t>(v);
          dist[u] = dist[v] + 1;
          queue.push_back(u);
          if (is_b[u] && dist[u] <= max_len) {
            hit = u;
            break;
          }
        }
      }
    }
    if (hit < 0) break;
    std::vector<uint32_t> path;
    for (int64_t v = hit; v >= 0;
         v = parent[static_cast<uint32_t>(v)] == -1
                 ? int64_t{-1}
                 : parent[static_cast<uint32_t>(v)]) {
      path.push_back(g.orig[static_cast<uint32_t>(v)]);
      blocked[static_cast<uint32_t>(v)] = 1;
      if (parent[static_cast<uint32_t>(v)] == -1) break;
    }
    std::reverse(path.begin(), path.end());
    fam.paths.push_back(std::move(path));
  }
  validate_path_family(g, A, B, fam);
  return fam;
}

uint64_t greedy_matching_experiment(uint32_t d,
                                    const std::vector<uint64_t>& edge_ids,
                                    double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("greedy_matching_experiment: p outside [0,1]");
  const uint64_t n = uint64_t{1} << d;
  std::vector<uint64_t> ids(edge_ids);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (uint64_t e : ids) {
    const uint64_t v = e / d;
    const uint32_t dir = static_cast<uint32_t>(e % d);
    if (v >= n || ((v >> dir) & 1))
      throw std::invalid_argument("greedy_matching_experiment: bad edge id");
  }
  Xoshiro256ss rng(derive_seed(seed, 0));
  std::unordered_set<uint64_t> used;
  uint64_t matched = 0;
  for (uint64_t e : ids) {
    const bool keep = rng.bernoulli(p);
    if (!keep) continue;
    const uint64_t v = e / d;
    const uint64_t u = v ^ (uint64_t{1} << (e % d));
    if (used.count(v) || used.count(u)) continue;
    used.insert(v);
    used.insert(u);
    ++matched;
  }
  return matched;
}

uint64_t degree_census(const HypercubeSubgraph& g, double threshold) {
  uint64_t count = 0;
  const uint64_t n = g.num_vertices();
  for (uint64_t v = 0; v < n; ++v)
    count += static_cast<double>(g.degree(static_cast<uint32_t>(v))) >= threshold;
  return count;
}

uint64_t degree_census(const HypercubeSubgraph& g) {
  return degree_census(g, std::log(static_cast<double>(g.dim())));
}

namespace {

// Uniform frontier growth of a connected set to exactly k vertices.
std::vector<uint32_t> grow_connected_cube(const HypercubeSubgraph& g,
                                          uint32_t start, uint64_t k,
                                          Xoshiro256ss& rng) {
  std::unordered_set<uint32_t> in_s, in_frontier;
  std::vector<uint32_t> frontier, S;
  S.push_back(start);
  in_s.insert(start);
  auto push_nbrs = [&](uint32_t v) {
    for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1) {
      const uint32_t u = v ^ (bits & (0u - bits));
      if (!in_s.count(u) && in_frontier.insert(u).second)
        frontier.push_back(u);
    }
  };
  push_nbrs(start);
  while (S.size() < k) {
    if (frontier.empty())
      throw std::logic_error("grow_connected_cube: component exhausted");
    const uint64_t i = rng.below(frontier.size());
    const uint32_t v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    in_frontier.erase(v);
    S.push_back(v);
    in_s.insert(v);
    push_nbrs(v);
  }
  return S;
}

}  // namespace

ExcessSample connected_excess_sample(const HypercubeSubgraph& g, uint64_t k,
                                     uint32_t samples, uint64_t seed) {
  if (k < 1) throw std::invalid_argument("connected_excess_sample: k < 1");
  if (samples < 1)
    throw std::invalid_argument("connected_excess_sample: samples < 1");
  const ComponentCensus c = census(g);
  std::vector<uint32_t> eligible;
  for (uint32_t v = 0; v < g.num_vertices(); ++v)
    if (c.sizes[c.label[v]] >= k) eligible.push_back(v);
  if (eligible.empty())
    throw std::invalid_argument(
        "connected_excess_sample: no component of size >= k");
  ExcessSample out;
  out.samples = samples;
  Xoshiro256ss rng(derive_seed(seed, 0));
  for (uint32_t s = 0; s < samples; ++s) {
    const uint32_t start = eligible[rng.below(eligible.size())];
    const auto S = grow_connected_cube(g, start, k, rng);
    std::unordered_set<uint32_t> in_s(S.begin(), S.end());
    uint64_t twice_edges = 0;
    for (uint32_t v : S) {
      for (uint32_t bits = g.open_mask(v); bits; bits &= bits - 1)
        twice_edges += in_s.count(v ^ (bits & (0u - bits)));
    }
    const double ratio = static_cast<double>(twice_edges / 2) /
                         static_cast<double>(S.size());
    out.max_edges_per_vertex = std::max(out.max_edges_per_vertex, ratio);
  }
  return out;
}

DirectionSplit direction_split(const std::vector<uint32_t>& W, uint32_t d) {
  if (W.empty()) throw std::invalid_argument("direction_split: empty W");
  if (d < 1 || d > 30) throw std::invalid_argument("direction_split: bad d");
  std::vector<uint32_t> set(W);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.back() >= (uint64_t{1} << d))
    throw std::invalid_argument("direction_split: vertex out of range");
  DirectionSplit out;
  out.p.assign(d, 0.0);
  std::vector<uint64_t> ones(d, 0);
  for (uint32_t v : set)
    for (uint32_t i = 0; i < d; ++i) ones[i] += (v >> i) & 1u;
  double best_h = -1.0;
  for (uint32_t i = 0; i < d; ++i) {
    out.p[i] = static_cast<double>(ones[i]) / static_cast<double>(set.size());
    const double h = binary_entropy(out.p[i]);
    if (h > best_h) {
      best_h = h;
      out.best_dir = i;
    }
  }
  const double y =
      std::min(1.0, std::log2(static_cast<double>(set.size())) / d);
  out.beta = inverse_binary_entropy(y);
  return out;
}

std::vector<ExpansionPoint> expansion_profile(const Graph& g,
                                              const std::vector<uint64_t>& sizes,
                                              uint32_t samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("expansion_profile: samples < 1");
  if (!g.connected())
    throw std::invalid_argument("expansion_profile: graph not connected");
  std::vector<ExpansionPoint> out;
  Xoshiro256ss rng(derive_seed(seed, 0));
  std::vector<uint8_t> in_s(g.n), in_f(g.n), seen(g.n);
  for (uint64_t target : sizes) {
    if (target < 1 || target > g.n)
      throw std::invalid_argument("expansion_profile: size exceeds component");
    ExpansionPoint pt;
    pt.size = target;
    pt.min_ratio = static_cast<double>(g.n);
    for (uint32_t s = 0; s < samples; ++s) {
      std::fill(in_s.begin(), in_s.end(), 0);
      std::fill(in_f.begin(), in_f.end(), 0);
      std::vector<uint32_t> S, frontier;
      const uint32_t start = static_cast<uint32_t>(rng.below(g.n));
      S.push_back(start);
      in_s[start] = 1;
      for (uint32_t u : g.neighbors(start))
        if (!in_f[u]) {
          in_f[u] = 1;
          frontier.push_back(u);
        }
      while (S.size() < target) {
        const uint64_t i = rng.below(frontier.size());
        const uint32_t v = frontier[i];
        frontier[i] = frontier.back();
        frontier.pop_back();
        in_f[v] = 0;
        S.push_back(v);
        in_s[v] = 1;
        for (uint32_t u : g.neighbors(v))
          if (!in_s[u] && !in_f[u]) {
            in_f[u] = 1;
            frontier.push_back(u);
          }
      }
      std::fill(seen.begin(), seen.end(), 0);
      uint64_t nbhd = 0;
      for (uint32_t v : S)
        for (uint32_t u : g.neighbors(v))
          if (!in_s[u] && !seen[u]) {
            seen[u] = 1;
            ++nbhd;
          }
      pt.min_ratio = std::min(
          pt.min_ratio, static_cast<double>(nbhd) / static_cast<double>(target));
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace qperc
