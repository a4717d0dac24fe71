#include "qperc/hypercube.hpp"

#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace qperc {

namespace {

void check_dim(uint32_t d) {
  if (d < HypercubeSubgraph::kMinDim || d > HypercubeSubgraph::kMaxDim)
    throw std::invalid_argument("hypercube dimension out of range [2,30]: " +
                                std::to_string(d));
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " outside [0,1]");
}

}  // namespace

HypercubeSubgraph::HypercubeSubgraph(uint32_t d) : d_(d) {
  check_dim(d);
  open_.assign(uint64_t{1} << d, 0u);
}

HypercubeSubgraph HypercubeSubgraph::full(uint32_t d) {
  HypercubeSubgraph g(d);
  const uint32_t all = (d == 32) ? ~0u : ((1u << d) - 1u);
  for (auto& m : g.open_) m = all;
  return g;
}

void HypercubeSubgraph::set_edge(VertexId v, uint32_t dir) {
  if (dir >= d_) throw std::invalid_argument("set_edge: direction >= d");
  open_[v] |= (1u << dir);
  open_[v ^ (1u << dir)] |= (1u << dir);
}

uint64_t HypercubeSubgraph::edge_count() const {
  uint64_t twice = 0;
  for (uint32_t m : open_) twice += static_cast<uint64_t>(std::popcount(m));
  return twice / 2;
}

bool HypercubeSubgraph::subgraph_of(const HypercubeSubgraph& other) const {
  if (d_ != other.d_) return false;
  const uint64_t n = num_vertices();
  for (uint64_t v = 0; v < n; ++v)
    if (open_[v] & ~other.open_[v]) return false;
  return true;
}

HypercubeSubgraph generate(const GenerationParams& params) {
  check_dim(params.d);
  check_prob(params.p, "p");
  const uint32_t d = params.d;
  const double p = params.p;
  HypercubeSubgraph g(d);
  if (p == 0.0) return g;
  if (p == 1.0) return HypercubeSubgraph::full(d);

  Xoshiro256ss rng(derive_seed(params.seed, 0));
  const uint64_t n = g.num_vertices();
  auto& open = g.masks();

  if (p >= 0.1) {
    // Dense path: one coin per canonical edge, increasing canonical index.
    for (uint64_t v = 0; v < n; ++v) {
      const uint32_t zeros = ~static_cast<uint32_t>(v) & ((1u << d) - 1u);
      uint32_t mask = 0;
      for (uint32_t bits = zeros; bits; bits &= bits - 1) {
        const uint32_t bit = bits & (0u - bits);
        if (rng.bernoulli(p)) mask |= bit;
      }
      if (mask) {
        open[v] |= mask;
        for (uint32_t bits = mask; bits; bits &= bits - 1)
          open[v ^ (bits & (0u - bits))] |= bits & (0u - bits);
      }
    }
    return g;
  }

  // Sparse path: geometric gap-skipping over the padded (vertex, direction)
  // index space [0, n*d). A pair is a real (canonical) edge iff bit dir of v
  // is zero; hits on the other encoding are discarded, which leaves every
  // canonical edge an independent Bernoulli(p). Expected work O(p n d).
  const uint64_t space = n * d;
  uint64_t i = rng.geometric_skip(p);
  while (i < space) {
    const uint64_t v = i / d;
    const uint32_t dir = static_cast<uint32_t>(i % d);
    if (((v >> dir) & 1u) == 0) g.set_edge(static_cast<VertexId>(v), dir);
    const uint64_t gap = rng.geometric_skip(p);
    if (gap > space - i - 1) break;
    i += 1 + gap;
  }
  return g;
}

double sprinkle_split(double p, double q2) {
  check_prob(p, "p");
  check_prob(q2, "q2");
  if (q2 > p) throw std::invalid_argument("sprinkle_split: q2 > p");
  if (p >= 1.0 && q2 < 1.0)
    throw std::invalid_argument("sprinkle_split: p = 1 requires q2 = 1");
  if (q2 == p) return 0.0;  // includes the q2 = p = 1 limit
  return (p - q2) / (1.0 - q2);
}

SprinkledPair generate_sprinkled(const GenerationParams& params) {
  if (params.q2 < 0.0)
    throw std::invalid_argument("generate_sprinkled: q2 not set");
  const double q1 = sprinkle_split(params.p, params.q2);
  GenerationParams first{params.d, q1, -1.0, derive_seed(params.seed, 1)};
  GenerationParams second{params.d, params.q2, -1.0, derive_seed(params.seed, 2)};
  SprinkledPair out{generate(first), generate(second),
                    HypercubeSubgraph(params.d), q1};
  out.q2 = union_graphs(out.q1, out.sprinkle);
  return out;
}

HypercubeSubgraph union_graphs(const HypercubeSubgraph& a,
                               const HypercubeSubgraph& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("union_graphs: dimension mismatch");
  HypercubeSubgraph g(a.dim());
  const uint64_t n = g.num_vertices();
  auto& m = g.masks();
  for (uint64_t v = 0; v < n; ++v) m[v] = a.masks()[v] | b.masks()[v];
  return g;
}

namespace {

void put_u16(std::vector<unsigned char>& out, uint16_t x) {
  out.push_back(static_cast<unsigned char>(x & 0xff));
  out.push_back(static_cast<unsigned char>(x >> 8));
}

void put_u64(std::vector<unsigned char>& out, uint64_t x) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<unsigned char>((x >> (8 * i)) & 0xff));
}

constexpr uint16_t kSnapshotVersion = 1;

}  // namespace

void save_snapshot(const std::string& path, const HypercubeSubgraph& g,
                   uint64_t seed) {
  std::vector<unsigned char> buf;
  buf.reserve(16 + 4 * g.num_vertices());
  buf.insert(buf.end(), {'Q', 'P', 'R', 'C'});
  put_u16(buf, kSnapshotVersion);
  put_u16(buf, static_cast<uint16_t>(g.dim()));
  put_u64(buf, seed);
  for (uint32_t m : g.masks()) {
    for (int i = 0; i < 4; ++i)
      buf.push_back(static_cast<unsigned char>((m >> (8 * i)) & 0xff));
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_snapshot: cannot open " + path);
  const size_t written = std::fwrite(buf.data(), 1, buf.size(), f);
  std::fclose(f);
  if (written != buf.size())
    throw std::runtime_error("save_snapshot: short write to " + path);
}

HypercubeSubgraph load_snapshot(const std::string& path, uint64_t* seed_out) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_snapshot: cannot open " + path);
  unsigned char header[16];
  if (std::fread(header, 1, 16, f) != 16) {
    std::fclose(f);
    throw std::runtime_error("load_snapshot: truncated header");
  }
  if (std::memcmp(header, "QPRC", 4) != 0) {
    std::fclose(f);
    throw std::runtime_error("load_snapshot: bad magic");
  }
  const uint16_t version =
      static_cast<uint16_t>(header[4] | (uint16_t{header[5]} << 8));
  const uint16_t d = static_cast<uint16_t>(header[6] | (uint16_t{header[7]} << 8));
  if (version != kSnapshotVersion) {
    std::fclose(f);
    throw std::runtime_error("load_snapshot: unsupported version " +
                             std::to_string(version));
  }
  uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed |= uint64_t{header[8 + i]} << (8 * i);
  if (d < HypercubeSubgraph::kMinDim || d > HypercubeSubgraph::kMaxDim) {
    std::fclose(f);
    throw std::runtime_error("load_snapshot: dimension out of range");
  }
  HypercubeSubgraph g(d);
  const uint64_t n = g.num_vertices();
  std::vector<unsigned char> body(4 * n);
  const size_t got = std::fread(body.data(), 1, body.size(), f);
  const bool extra = std::fgetc(f) != EOF;
  std::fclose(f);
  if (got != body.size() || extra)
    throw std::runtime_error("load_snapshot: body size mismatch");
  auto& masks = g.masks();
  const uint32_t valid = (1u << d) - 1u;
  for (uint64_t v = 0; v < n; ++v) {
    uint32_t m = 0;
    for (int i = 0; i < 4; ++i) m |= uint32_t{body[4 * v + i]} << (8 * i);
    if (m & ~valid)
      throw std::runtime_error("load_snapshot: mask bit outside dimension");
    masks[v] = m;
  }
  for (uint64_t v = 0; v < n; ++v) {
    for (uint32_t bits = masks[v]; bits; bits &= bits - 1) {
      const int dir = std::countr_zero(bits);
      if (!((masks[v ^ (1u << dir)] >> dir) & 1u))
        throw std::runtime_error("load_snapshot: asymmetric edge mask");
    }
  }
  if (seed_out) *seed_out = seed;
  return g;
}

}  // namespace qperc
