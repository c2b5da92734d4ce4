#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "condsets/condfilter.hpp"
#include "condsets/condlin.hpp"
#include "condsets/condmap.hpp"
#include "condsets/condnum.hpp"
#include "condsets/condset.hpp"
#include "condsets/condtop.hpp"
#include "condsets/rng.hpp"

namespace condsets {

// Shape limits for random instances. Small on purpose: every law is decided
// exactly, so coverage comes from shape diversity, not from size.
struct GenShape {
  int atoms_max = 3;
  int carrier_max = 4;
};

inline AlgebraPtr gen_algebra(Rng& rng, const GenShape& sh) {
  int n = static_cast<int>(rng.range(1, std::max(1, sh.atoms_max)));
  std::vector<std::string> names;
  for (int i = 0; i < n; i++) names.push_back("w" + std::to_string(i + 1));
  return Algebra::make(names);
}

// Integer carriers of varying size per atom, so supports and slices differ.
inline CondSetPtr gen_condset(Rng& rng, const AlgebraPtr& a, const GenShape& sh) {
  std::vector<std::vector<Value>> carrier(a->n());
  for (int w = 0; w < a->n(); w++) {
    int m = static_cast<int>(rng.range(1, std::max(1, sh.carrier_max)));
    for (int i = 0; i < m; i++) carrier[w].push_back(Value(i));
  }
  return CondSet::make(a, std::move(carrier));
}

// Each carrier point kept with probability 1/2; empty slices drop out of the
// support, which is where most of the conditional bookkeeping lives.
inline CondSubset gen_subset(Rng& rng, const CondSetPtr& x) {
  std::vector<std::vector<Value>> pw(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++)
    for (const auto& v : x->carrier[w])
      if (rng.coin()) pw[w].push_back(v);
  return CondSubset::make(x, std::move(pw));
}

inline CondSubset gen_full_support_subset(Rng& rng, const CondSetPtr& x) {
  std::vector<std::vector<Value>> pw(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++) {
    for (const auto& v : x->carrier[w])
      if (rng.coin()) pw[w].push_back(v);
    if (pw[w].empty()) pw[w].push_back(rng.pick(x->carrier[w]));
  }
  return CondSubset::make(x, std::move(pw));
}

inline CondFunction gen_function(Rng& rng, const CondSetPtr& dom, const CondSetPtr& cod) {
  std::vector<std::map<Value, Value>> tbl(dom->n_atoms());
  for (int w = 0; w < dom->n_atoms(); w++)
    for (const auto& v : dom->carrier[w]) tbl[w][v] = rng.pick(cod->carrier[w]);
  return CondFunction::make(dom, cod, std::move(tbl));
}

// Per-atom families seeded with a few random masks and closed under union
// and intersection, which is exactly what CondTopology::make demands.
inline CondTopology gen_topology(Rng& rng, const CondSetPtr& x) {
  std::vector<std::set<std::uint32_t>> fams(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++) {
    std::uint32_t full = CondTopology::carrier_mask(x, w);
    auto& fam = fams[w];
    fam = {0, full};
    int extra = static_cast<int>(rng.below(3)) + 1;
    for (int k = 0; k < extra; k++)
      fam.insert(static_cast<std::uint32_t>(rng.below(full + 1)));
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<std::uint32_t> ms(fam.begin(), fam.end());
      for (std::uint32_t m1 : ms)
        for (std::uint32_t m2 : ms) {
          if (fam.insert(m1 | m2).second) grew = true;
          if (fam.insert(m1 & m2).second) grew = true;
        }
    }
  }
  return CondTopology::make(x, fams);
}

// A one or two generator base; the second generator is a union with the
// first so the pairwise meets stay inside the base.
inline CondFilter gen_filter(Rng& rng, const CondSetPtr& x) {
  std::vector<CondSubset> gens = {gen_full_support_subset(rng, x)};
  if (rng.coin()) gens.push_back(cond_union(gens[0], gen_full_support_subset(rng, x)));
  return generate_filter(CondFilterBase::make(x, gens));
}

inline CondReal gen_real(Rng& rng, const AlgebraPtr& a, long long num_max = 8,
                         long long den_max = 4) {
  std::vector<Rat> v(a->n());
  for (int w = 0; w < a->n(); w++) v[w] = rng.rat(num_max, den_max);
  return CondReal::make(a, a->full_mask(), std::move(v));
}

inline CondRealVec gen_vec(Rng& rng, const AlgebraPtr& a, const std::vector<int>& dims,
                           long long num_max = 4, long long den_max = 2) {
  std::vector<std::vector<Rat>> v(a->n());
  for (int w = 0; w < a->n(); w++)
    for (int l = 0; l < dims[w]; l++) v[w].push_back(rng.rat(num_max, den_max));
  return CondRealVec::make(a, a->full_mask(), std::move(v));
}

inline std::vector<int> gen_dims(Rng& rng, const AlgebraPtr& a, int dim_max) {
  std::vector<int> dims(a->n());
  for (int w = 0; w < a->n(); w++) dims[w] = static_cast<int>(rng.range(1, dim_max));
  return dims;
}

inline VPolytope gen_polytope(Rng& rng, const AlgebraPtr& a, const std::vector<int>& dims,
                              int gens_max = 4, long long num_max = 4,
                              long long den_max = 2) {
  std::vector<std::vector<std::vector<Rat>>> gens(a->n());
  for (int w = 0; w < a->n(); w++) {
    int k = static_cast<int>(rng.range(1, gens_max));
    for (int g = 0; g < k; g++) {
      std::vector<Rat> pt(dims[w]);
      for (int l = 0; l < dims[w]; l++) pt[l] = rng.rat(num_max, den_max);
      gens[w].push_back(std::move(pt));
    }
  }
  return VPolytope::make(a, a->full_mask(), std::move(gens));
}

// Random symmetric positive table repaired into a metric by shortest paths.
inline std::vector<std::vector<Rat>> gen_metric_table(Rng& rng, std::size_t k) {
  std::vector<std::vector<Rat>> d(k, std::vector<Rat>(k, Rat(0)));
  for (std::size_t i = 0; i < k; i++)
    for (std::size_t j = i + 1; j < k; j++) d[i][j] = d[j][i] = rng.rat_pos(9, 3);
  for (std::size_t l = 0; l < k; l++)
    for (std::size_t i = 0; i < k; i++)
      for (std::size_t j = 0; j < k; j++)
        if (i != j) d[i][j] = std::min(d[i][j], Rat(d[i][l] + d[l][j]));
  return d;
}

inline FiniteMetricSpace gen_metric_space(Rng& rng, const CondSetPtr& x) {
  std::vector<std::vector<std::vector<Rat>>> d(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++) d[w] = gen_metric_table(rng, x->carrier[w].size());
  return FiniteMetricSpace::make(x, std::move(d));
}

}  // namespace condsets
