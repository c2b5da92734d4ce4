#pragma once

#include <cstdint>
#include <vector>

#include "condsets/boolalg.hpp"

namespace condsets {

// Conditional natural number: one value per atom of the support, values >= 1
// (naturals start at 1 here).
struct CondNat {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  std::vector<std::int64_t> v;

  static CondNat make(AlgebraPtr alg, std::uint64_t support, std::vector<std::int64_t> v) {
    if (static_cast<int>(v.size()) != alg->n())
      fail(Errc::DimMismatch, "one value per atom required");
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (v[w] < 1) fail(Errc::NotFinite, "conditional naturals start at 1");
      } else {
        v[w] = 1;
      }
    }
    CondNat n;
    n.alg = std::move(alg);
    n.support = support;
    n.v = std::move(v);
    return n;
  }

  static CondNat constant(const AlgebraPtr& alg, std::int64_t k) {
    return make(alg, alg->full_mask(), std::vector<std::int64_t>(alg->n(), k));
  }

  bool lives_on_one() const { return support == alg->full_mask(); }

  friend bool operator==(const CondNat& a, const CondNat& b) {
    return same_algebra(a.alg, b.alg) && a.support == b.support && a.v == b.v;
  }
};

}  // namespace condsets
