#pragma once

#include <cstdint>

namespace flaghull {

// 64-bit linear congruential generator (Knuth's MMIX constants). Every seeded choice in the
// project goes through this so that identical seeds give identical output on any platform;
// std::mt19937 distributions are not byte-stable across standard libraries.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  // Uniform draw in [0, bound) via 128-bit multiply-shift; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace flaghull
