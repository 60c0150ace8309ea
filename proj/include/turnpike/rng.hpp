#pragma once

#include <cstdint>
#include <random>

namespace turnpike {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive a stream seed from a master seed and a salt. Stable across
/// platforms; used to hand independent, reproducible streams to workers.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt) {
  std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

/// mt19937_64 wrapper with hand-rolled value mappings. The engine itself is
/// fully specified by the standard; the distributions are not, so we avoid
/// them to keep traces byte-for-byte reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n >= 1. Rejection-free multiply-shift would
  /// bias at 2^64 scale; plain rejection keeps it exact.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace turnpike
