#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace lsv {

// Counter-based generator in SplitMix64 counter mode: output i is
// mix64(key + (i+1) * GOLDEN). Every draw is a pure function of
// (key, counter), so results never depend on how work is sharded
// across threads. Substreams are derived by rekeying through the
// mixer with a distinct additive constant, which keeps the child-key
// domain separated from the output domain.
//
// Splitting discipline used throughout the lab: one substream per
// row for matrix samplers (per-row independence is structural, not
// an artifact of draw order) and one substream per trial for Monte
// Carlo loops (parallel shards merge deterministically).

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive_key(seed, stream)), ctr_(0) {}

  CounterRng substream(std::uint64_t idx) const {
    return CounterRng(key_, idx + 1, from_key_tag{});
  }

  std::uint64_t next_u64() {
    ++ctr_;
    return mix64(key_ + ctr_ * GOLDEN);
  }

  // Unbiased bounded draw (Lemire rejection); bound must be >= 1.
  std::uint64_t bounded(std::uint64_t bound) {
    while (true) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * bound;
      auto lo = static_cast<std::uint64_t>(m);
      if (lo < bound) {
        std::uint64_t cutoff = (0 - bound) % bound;
        if (lo < cutoff) continue;
      }
      return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  int rademacher() { return (next_u64() & 1) ? 1 : -1; }

  // Box-Muller; u1 is nudged away from 0 so log stays finite.
  std::pair<double, double> gaussian_pair() {
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t GOLDEN = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t SPLIT = 0xd1342543de82ef95ULL;

  struct from_key_tag {};
  CounterRng(std::uint64_t parent_key, std::uint64_t idx1, from_key_tag)
      : key_(mix64(mix64(parent_key ^ 0x5851f42d4c957f2dULL) + idx1 * SPLIT)),
        ctr_(0) {}

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed + GOLDEN) ^ (stream * SPLIT + 1));
  }

  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace lsv
