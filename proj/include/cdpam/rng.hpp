#pragma once

#include <cstdint>

namespace cdpam {

// Counter-based 64-bit generator (splitmix64, Steele/Lea/Flood mixing
// constants). The seed fully determines the stream on every platform, which
// is what makes golden-file tests and cross-run byte identity possible.
// Independent child streams are derived with derive(), never by sharing
// state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe to feed to x^(-a) style inversions.
  double next_double_open0() { return 1.0 - next_double(); }

  /// Uniform integer in [0, n), n > 0. Multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Seed of an independent child stream (bootstrap replicates, sweep cells).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
    g.next_u64();
    return g.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace cdpam
