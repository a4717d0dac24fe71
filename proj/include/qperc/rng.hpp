#pragma once
// Deterministic random streams. Everything sampled in this project flows
// through the two primitives below so that any object is reproducible from
// (master_seed, stream index):
//
//   derive_seed(master, index)  -- documented 64-bit mixing function used to
//                                  split a master seed into per-trial /
//                                  per-purpose sub-seeds, and
//   Xoshiro256ss                -- a fixed, portable generator (xoshiro256**),
//                                  seeded through a SplitMix64 chain.
//
// std::mt19937_64 would also be portable, but the standard leaves the
// distributions implementation-defined, so uniform doubles / bounded ints are
// produced here with explicit, frozen algorithms instead.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace qperc {

inline constexpr uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output function (Steele, Lea & Flood); advances `state`.
inline constexpr uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += kGolden64);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream derivation: sub-seed for (master, index). The exact formula is part
// of the reproducibility contract (see docs/formats.md) and is frozen by unit
// tests; do not change it without bumping the snapshot/CSV version story.
inline constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
  uint64_t s = master ^ ((index + 1) * 0xD1B54A32D192ED03ULL);
  uint64_t a = splitmix64(s);
  uint64_t b = splitmix64(s);
  return a ^ b;
}

// xoshiro256** 1.0 (Blackman & Vigna, public domain reference constants).
class Xoshiro256ss {
 public:
  explicit constexpr Xoshiro256ss(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  constexpr uint64_t next() {
    const uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer in [0, bound) via bitmask rejection.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Xoshiro256ss::below: bound=0");
    if (bound == 1) return 0;
    const uint64_t mask = std::bit_ceil(bound) - 1;
    for (;;) {
      const uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  // Number of failures before the next success of a Bernoulli(p) sequence
  // (standard inversion); used for gap-skipping sparse samplers.
  uint64_t geometric_skip(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return std::numeric_limits<uint64_t>::max();
    const double u = uniform();
    const double g = std::floor(std::log1p(-u) / std::log1p(-p));
    if (g >= 9.2e18) return std::numeric_limits<uint64_t>::max();
    return static_cast<uint64_t>(g);
  }

 private:
  std::array<uint64_t, 4> s_{};
};

}  // namespace qperc
