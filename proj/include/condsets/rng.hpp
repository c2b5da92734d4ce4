#pragma once

#include <cstdint>
#include <vector>

#include "condsets/rational.hpp"

namespace condsets {

// splitmix64; self-contained so streams are reproducible across platforms.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  // small exact rational: numerator in [-num_max, num_max], denominator in [1, den_max]
  Rat rat(long long num_max = 8, long long den_max = 4) {
    return Rat(Int(range(-num_max, num_max)), Int(range(1, den_max)));
  }

  Rat rat_pos(long long num_max = 8, long long den_max = 4) {
    return Rat(Int(range(1, num_max)), Int(range(1, den_max)));
  }

  // derive an independent child stream
  Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }
};

}  // namespace condsets
