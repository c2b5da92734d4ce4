#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "condsets/errors.hpp"
#include "condsets/rational.hpp"

namespace condsets {

// Finite atomic complete Boolean algebra, fixed by its list of atoms.
// Conditions are atom subsets, stored as bitmasks over the atom indexes.
struct Algebra {
  std::vector<std::string> atoms;
  std::vector<Rat> weights;  // empty, or per-atom, strictly positive, sum 1

  int n() const { return static_cast<int>(atoms.size()); }

  std::uint64_t full_mask() const {
    return n() == 64 ? ~0ULL : ((1ULL << n()) - 1);
  }

  int index_of(const std::string& name) const {
    for (int i = 0; i < n(); i++)
      if (atoms[i] == name) return i;
    fail(Errc::AlgebraMismatch, "unknown atom '" + name + "'");
  }

  static std::shared_ptr<const Algebra> make(std::vector<std::string> atoms,
                                             std::vector<Rat> weights = {}) {
    if (atoms.empty()) fail(Errc::EmptyGround, "algebra needs at least one atom");
    if (atoms.size() > 60) fail(Errc::EmptyGround, "too many atoms");
    for (size_t i = 0; i < atoms.size(); i++)
      for (size_t j = i + 1; j < atoms.size(); j++)
        if (atoms[i] == atoms[j])
          fail(Errc::EmptyGround, "duplicate atom '" + atoms[i] + "'");
    if (!weights.empty()) {
      if (weights.size() != atoms.size())
        fail(Errc::EmptyGround, "weight count mismatch");
      Rat s = 0;
      for (const Rat& w : weights) {
        if (w <= 0) fail(Errc::EmptyGround, "weights must be positive");
        s += w;
      }
      if (s != 1) fail(Errc::EmptyGround, "weights must sum to 1");
    }
    auto a = std::make_shared<Algebra>();
    a->atoms = std::move(atoms);
    a->weights = std::move(weights);
    return a;
  }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || a->atoms == b->atoms;
}

inline void ensure_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_algebra(a, b)) fail(Errc::AlgebraMismatch, "conditions from different algebras");
}

struct Condition {
  AlgebraPtr alg;
  std::uint64_t mask = 0;

  Condition() = default;
  Condition(AlgebraPtr a, std::uint64_t m) : alg(std::move(a)), mask(m) {}

  static Condition zero(const AlgebraPtr& a) { return Condition(a, 0); }
  static Condition one(const AlgebraPtr& a) { return Condition(a, a->full_mask()); }
  static Condition atom(const AlgebraPtr& a, int i) { return Condition(a, 1ULL << i); }
  static Condition of_atoms(const AlgebraPtr& a, const std::vector<std::string>& names) {
    std::uint64_t m = 0;
    for (const auto& nm : names) m |= 1ULL << a->index_of(nm);
    return Condition(a, m);
  }

  bool is_zero() const { return mask == 0; }
  bool is_one() const { return mask == alg->full_mask(); }
  bool is_atom() const { return mask != 0 && (mask & (mask - 1)) == 0; }

  std::vector<int> atom_indexes() const {
    std::vector<int> out;
    for (int i = 0; i < alg->n(); i++)
      if (mask & (1ULL << i)) out.push_back(i);
    return out;
  }

  std::vector<std::string> atom_names() const {
    std::vector<std::string> out;
    for (int i : atom_indexes()) out.push_back(alg->atoms[i]);
    return out;
  }

  Rat weight() const {
    if (alg->weights.empty()) fail(Errc::EmptyGround, "algebra carries no weights");
    Rat s = 0;
    for (int i : atom_indexes()) s += alg->weights[i];
    return s;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i : atom_indexes()) {
      if (!out.empty()) out += "|";
      out += alg->atoms[i];
    }
    return out;
  }

  friend Condition operator&(const Condition& a, const Condition& b) {
    ensure_same_algebra(a.alg, b.alg);
    return Condition(a.alg, a.mask & b.mask);
  }
  friend Condition operator|(const Condition& a, const Condition& b) {
    ensure_same_algebra(a.alg, b.alg);
    return Condition(a.alg, a.mask | b.mask);
  }
  Condition complement() const { return Condition(alg, ~mask & alg->full_mask()); }
  friend Condition operator-(const Condition& a, const Condition& b) {
    ensure_same_algebra(a.alg, b.alg);
    return Condition(a.alg, a.mask & ~b.mask);
  }
  bool leq(const Condition& b) const {
    ensure_same_algebra(alg, b.alg);
    return (mask & ~b.mask) == 0;
  }
  friend bool operator==(const Condition& a, const Condition& b) {
    return same_algebra(a.alg, b.alg) && a.mask == b.mask;
  }
  friend bool operator!=(const Condition& a, const Condition& b) { return !(a == b); }
  friend bool operator<(const Condition& a, const Condition& b) { return a.mask < b.mask; }
};

inline Condition join_all(const AlgebraPtr& alg, const std::vector<Condition>& cs) {
  Condition out = Condition::zero(alg);
  for (const auto& c : cs) out = out | c;
  return out;
}

inline Condition meet_all(const AlgebraPtr& alg, const std::vector<Condition>& cs) {
  Condition out = Condition::one(alg);
  for (const auto& c : cs) out = out & c;
  return out;
}

inline std::vector<Condition> atoms_below(const Condition& c) {
  std::vector<Condition> out;
  for (int i : c.atom_indexes()) out.push_back(Condition::atom(c.alg, i));
  return out;
}

// All conditions below c, i.e. the relative algebra A_c. Ascending mask order.
inline std::vector<Condition> subconditions(const Condition& c) {
  std::vector<Condition> out;
  std::uint64_t m = c.mask;
  std::uint64_t sub = 0;
  while (true) {
    out.push_back(Condition(c.alg, sub));
    if (sub == m) break;
    sub = (sub - m) & m;  // next submask
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Partition of `base` into finitely many parts; zero parts are allowed.
struct Partition {
  Condition base;
  std::vector<Condition> parts;

  Partition(Condition b, std::vector<Condition> ps)
      : base(std::move(b)), parts(std::move(ps)) {}
};

inline bool is_partition(const Partition& p) {
  std::uint64_t seen = 0;
  for (const auto& c : p.parts) {
    if (!same_algebra(c.alg, p.base.alg)) return false;
    if (c.mask & seen) return false;  // overlap
    seen |= c.mask;
  }
  return seen == p.base.mask;
}

inline Partition make_partition(Condition base, std::vector<Condition> parts) {
  Partition p(std::move(base), std::move(parts));
  if (!is_partition(p)) fail(Errc::PartitionInvalid, "parts not pairwise disjoint with join = base");
  return p;
}

// b_i = a_i minus everything claimed by earlier entries; list order decides.
// The result partitions the join of the inputs and keeps zero parts.
inline Partition disjointify(const AlgebraPtr& alg, const std::vector<Condition>& as) {
  if (as.empty()) fail(Errc::EmptyFamily, "disjointify of empty family");
  Condition base = join_all(alg, as);
  std::vector<Condition> parts;
  std::uint64_t taken = 0;
  for (const auto& a : as) {
    ensure_same_algebra(a.alg, alg);
    parts.push_back(Condition(alg, a.mask & ~taken));
    taken |= a.mask;
  }
  return Partition(base, parts);
}

// Common refinement: all pairwise meets, i-major order. Bases must agree.
inline Partition refine(const Partition& p, const Partition& q) {
  if (p.base != q.base) fail(Errc::DifferentBase, "refine needs equal bases");
  std::vector<Condition> parts;
  for (const auto& a : p.parts)
    for (const auto& b : q.parts) parts.push_back(a & b);
  return Partition(p.base, parts);
}

}  // namespace condsets
