#pragma once

#include <cstdint>
#include <vector>

namespace recovtsp {

/// SplitMix64 generator. Used instead of <random> so that seeded output is
/// bit-identical across standard libraries and platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double nextDouble(double lo, double hi) { return lo + (hi - lo) * nextDouble(); }

  /// Uniform integer in [0, bound). Modulo bias is irrelevant for the tiny
  /// bounds used here and keeps the stream reproducible.
  std::uint64_t nextBelow(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(nextBelow(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace recovtsp
