#pragma once

#include <set>
#include <vector>

#include "condsets/condset.hpp"

namespace condsets {

// Formula-side route for the power set operations. A stable subset is held as
// the explicit set of its elements at the stage it lives on, and the three
// lattice operations are computed from their defining amalgamation formulas:
// joins enumerate partition-indexed picks, meets join the atoms where the
// restricted element sets intersect, complements join everything meeting the
// argument in zero. Nothing here reads the per-atom point sets of an operand;
// the pointwise route in condset.hpp is the independent counterpart, and the
// two are cross-checked against each other by the law suites.
struct StableFamily {
  CondSetPtr parent;
  Condition support;
  std::set<CondElement> elems;  // every element has exactly this support

  std::string str() const {
    std::string out = "<" + support.str() + ":";
    for (const auto& e : elems) out += " " + e.str();
    return out + ">";
  }
};

inline StableFamily from_atoms(const CondSubset& y, std::size_t cap = 1 << 16) {
  StableFamily f;
  f.parent = y.parent;
  f.support = y.support_cond();
  auto es = elements_of(y, cap);
  f.elems.insert(es.begin(), es.end());
  return f;
}

inline CondSubset to_atoms(const StableFamily& f) {
  if (f.support.is_zero()) return CondSubset::zero(f.parent);
  std::vector<CondElement> es(f.elems.begin(), f.elems.end());
  return stable_hull(f.parent, es);
}

inline StableFamily formula_restrict(const StableFamily& f, const Condition& a) {
  StableFamily g;
  g.parent = f.parent;
  g.support = f.support & a;
  for (const auto& e : f.elems) g.elems.insert(e.restrict(g.support));
  return g;
}

inline bool formula_subset_leq(const StableFamily& f, const StableFamily& g) {
  if (!f.support.leq(g.support)) return false;
  StableFamily gr = formula_restrict(g, f.support);
  for (const auto& e : f.elems)
    if (!gr.elems.count(e)) return false;
  return true;
}

inline StableFamily formula_zero(const CondSetPtr& parent) {
  StableFamily f;
  f.parent = parent;
  f.support = Condition::zero(parent->alg);
  f.elems.insert(CondElement::make(parent, 0,
                                   std::vector<Value>(parent->n_atoms(), Value())));
  return f;
}

// Join of two stable families: elements are all two-part amalgamations
// b x + (base - b) y with b below the first support, base - b below the
// second, x and y picked from the restricted families.
inline StableFamily formula_union_pair(const StableFamily& f, const StableFamily& g) {
  ensure_same_parent(f.parent, g.parent);
  StableFamily out;
  out.parent = f.parent;
  out.support = f.support | g.support;
  const Condition base = out.support;
  for (const Condition& b : subconditions(f.support)) {
    Condition rest = base - b;
    if (!rest.leq(g.support)) continue;
    Partition p(base, {b, rest});
    StableFamily fb = formula_restrict(f, b);
    StableFamily gr = formula_restrict(g, rest);
    for (const auto& x : fb.elems)
      for (const auto& y : gr.elems) out.elems.insert(amalgamate(p, {x, y}));
  }
  return out;
}

inline StableFamily formula_union(const CondSetPtr& parent,
                                  const std::vector<StableFamily>& fs) {
  StableFamily acc = formula_zero(parent);
  for (const auto& f : fs) acc = formula_union_pair(acc, f);
  return acc;
}

// Meet: the largest condition where all families share an element is the join
// of the atoms where the restricted element sets intersect.
inline StableFamily formula_intersection(const CondSetPtr& parent,
                                         const std::vector<StableFamily>& fs) {
  if (fs.empty()) return from_atoms(CondSubset::full(parent));
  Condition s = Condition::one(parent->alg);
  for (const auto& f : fs) {
    ensure_same_parent(parent, f.parent);
    s = s & f.support;
  }
  Condition astar = Condition::zero(parent->alg);
  for (const Condition& w : atoms_below(s)) {
    bool common = true;
    std::set<CondElement> acc = formula_restrict(fs[0], w).elems;
    for (size_t i = 1; common && i < fs.size(); i++) {
      std::set<CondElement> next;
      for (const auto& e : formula_restrict(fs[i], w).elems)
        if (acc.count(e)) next.insert(e);
      acc = std::move(next);
      if (acc.empty()) common = false;
    }
    if (common && !acc.empty()) astar = astar | w;
  }
  StableFamily out;
  out.parent = parent;
  out.support = astar;
  std::set<CondElement> acc = formula_restrict(fs[0], astar).elems;
  for (size_t i = 1; i < fs.size(); i++) {
    std::set<CondElement> next;
    for (const auto& e : formula_restrict(fs[i], astar).elems)
      if (acc.count(e)) next.insert(e);
    acc = std::move(next);
  }
  out.elems = std::move(acc);
  return out;
}

inline StableFamily formula_intersection_pair(const StableFamily& f,
                                              const StableFamily& g) {
  return formula_intersection(f.parent, {f, g});
}

// Complement: the join of everything that meets f in zero. Every subset is
// the join of its one-element subsets, so ranging over the single elements of
// the space at every stage is enough.
inline StableFamily formula_complement(const StableFamily& f) {
  const CondSetPtr& parent = f.parent;
  StableFamily acc = formula_zero(parent);
  Condition one = Condition::one(parent->alg);
  for (const Condition& b : subconditions(one)) {
    for (const auto& x : elements_of(CondSubset::full(parent).restrict(b))) {
      StableFamily z;
      z.parent = parent;
      z.support = b;
      z.elems.insert(x);
      StableFamily m = formula_intersection_pair(f, z);
      if (!m.support.is_zero()) continue;
      if (formula_subset_leq(z, acc)) continue;
      acc = formula_union_pair(acc, z);
    }
  }
  return acc;
}

// Stability closure of an element list on a common support: repeatedly add
// every two-part amalgamation until nothing new appears.
inline StableFamily formula_hull(const CondSetPtr& parent, const Condition& support,
                                 const std::vector<CondElement>& elems) {
  StableFamily f;
  f.parent = parent;
  f.support = support;
  for (const auto& e : elems) {
    if (e.support != support.mask) fail(Errc::SupportMismatch, "hull needs a common support");
    f.elems.insert(e);
  }
  if (f.elems.empty()) fail(Errc::EmptyFamily, "hull of no elements");
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<CondElement> cur(f.elems.begin(), f.elems.end());
    for (const Condition& b : subconditions(support)) {
      Partition p(support, {b, support - b});
      for (const auto& x : cur)
        for (const auto& y : cur) {
          CondElement z = amalgamate(p, {x, y});
          if (f.elems.insert(z).second) grew = true;
        }
    }
  }
  return f;
}

}  // namespace condsets
