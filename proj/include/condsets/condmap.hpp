#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "condsets/condnat.hpp"
#include "condsets/condset.hpp"

namespace condsets {

// Conditional function: a total classical function per atom, glued by
// stability. Gluing is automatic in this form: applying atomwise commutes
// with amalgamation by construction.
struct CondFunction {
  CondSetPtr dom, cod;
  std::vector<std::map<Value, Value>> tbl;  // per atom, total on dom carrier

  static CondFunction make(CondSetPtr dom, CondSetPtr cod,
                           std::vector<std::map<Value, Value>> tbl) {
    if (static_cast<int>(tbl.size()) != dom->n_atoms())
      fail(Errc::CarrierMismatch, "one table per atom required");
    for (int w = 0; w < dom->n_atoms(); w++) {
      for (const auto& v : dom->carrier[w])
        if (!tbl[w].count(v))
          fail(Errc::CarrierMismatch, "function not total at atom " + dom->alg->atoms[w]);
      for (const auto& [k, v] : tbl[w]) {
        if (!dom->in_carrier(w, k))
          fail(Errc::CarrierMismatch, "table key outside domain carrier");
        if (!cod->in_carrier(w, v))
          fail(Errc::CarrierMismatch, "table value outside codomain carrier");
      }
    }
    CondFunction f;
    f.dom = std::move(dom);
    f.cod = std::move(cod);
    f.tbl = std::move(tbl);
    return f;
  }

  static CondFunction identity(const CondSetPtr& x) {
    std::vector<std::map<Value, Value>> tbl(x->n_atoms());
    for (int w = 0; w < x->n_atoms(); w++)
      for (const auto& v : x->carrier[w]) tbl[w][v] = v;
    return make(x, x, std::move(tbl));
  }

  // same classical function at every atom (the function "generated by" it)
  static CondFunction from_classical(const CondSetPtr& dom, const CondSetPtr& cod,
                                     const std::map<Value, Value>& f) {
    return make(dom, cod, std::vector<std::map<Value, Value>>(dom->n_atoms(), f));
  }

  // j-th projection of a product carrier (tuples) onto a factor
  static CondFunction projection(const CondSetPtr& prod, const CondSetPtr& factor,
                                 size_t j) {
    std::vector<std::map<Value, Value>> tbl(prod->n_atoms());
    for (int w = 0; w < prod->n_atoms(); w++)
      for (const auto& v : prod->carrier[w]) {
        if (!v.is_tuple() || j >= v.as_tuple().size())
          fail(Errc::CarrierMismatch, "projection needs tuple carrier");
        tbl[w][v] = v.as_tuple()[j];
      }
    return make(prod, factor, std::move(tbl));
  }

  const Value& at(int w, const Value& v) const {
    auto it = tbl[w].find(v);
    if (it == tbl[w].end()) fail(Errc::CarrierMismatch, "value outside domain carrier");
    return it->second;
  }

  CondElement apply(const CondElement& x) const {
    ensure_same_parent(dom, x.parent);
    std::vector<Value> vals(dom->n_atoms(), Value());
    for (int w = 0; w < dom->n_atoms(); w++)
      if (x.support & (1ULL << w)) vals[w] = at(w, x.vals[w]);
    return CondElement::make(cod, x.support, std::move(vals));
  }
};

// f after g
inline CondFunction compose(const CondFunction& f, const CondFunction& g) {
  ensure_same_parent(f.dom, g.cod);
  std::vector<std::map<Value, Value>> tbl(g.dom->n_atoms());
  for (int w = 0; w < g.dom->n_atoms(); w++)
    for (const auto& [k, v] : g.tbl[w]) tbl[w][k] = f.at(w, v);
  return CondFunction::make(g.dom, f.cod, std::move(tbl));
}

inline CondSubset image(const CondFunction& f, const CondSubset& u) {
  ensure_same_parent(f.dom, u.parent);
  std::vector<std::vector<Value>> pw(f.dom->n_atoms());
  for (int w = 0; w < f.dom->n_atoms(); w++)
    if (u.support & (1ULL << w))
      for (const auto& v : u.pw[w]) pw[w].push_back(f.at(w, v));
  return CondSubset::make(f.cod, std::move(pw));
}

// Support shrinks to the atoms whose pointwise preimage is non-empty.
inline CondSubset preimage(const CondFunction& f, const CondSubset& v) {
  ensure_same_parent(f.cod, v.parent);
  std::vector<std::vector<Value>> pw(f.dom->n_atoms());
  for (int w = 0; w < f.dom->n_atoms(); w++)
    if (v.support & (1ULL << w))
      for (const auto& [k, fv] : f.tbl[w])
        if (std::binary_search(v.pw[w].begin(), v.pw[w].end(), fv)) pw[w].push_back(k);
  return CondSubset::make(f.dom, std::move(pw));
}

inline bool is_injective(const CondFunction& f) {
  for (int w = 0; w < f.dom->n_atoms(); w++) {
    std::set<Value> seen;
    for (const auto& [k, v] : f.tbl[w])
      if (!seen.insert(v).second) return false;
  }
  return true;
}

inline bool is_surjective(const CondFunction& f) {
  for (int w = 0; w < f.dom->n_atoms(); w++) {
    std::set<Value> hit;
    for (const auto& [k, v] : f.tbl[w]) hit.insert(v);
    if (hit.size() != f.cod->carrier[w].size()) return false;
  }
  return true;
}

inline bool is_bijective(const CondFunction& f) {
  return is_injective(f) && is_surjective(f);
}

// Conditional binary relation on a product-shaped ground set.
struct CondRelation {
  CondSetPtr base;  // the set the relation orders (pairs are kept separately)
  std::uint64_t support = 0;
  std::vector<std::set<std::pair<Value, Value>>> rel;  // per atom

  static CondRelation make(CondSetPtr base, std::uint64_t support,
                           std::vector<std::set<std::pair<Value, Value>>> rel) {
    if (static_cast<int>(rel.size()) != base->n_atoms())
      fail(Errc::CarrierMismatch, "one relation per atom required");
    for (int w = 0; w < base->n_atoms(); w++) {
      if ((support & (1ULL << w)) && rel[w].empty())
        fail(Errc::EmptyGround, "relation empty at a support atom");
      for (const auto& [x, y] : rel[w])
        if (!base->in_carrier(w, x) || !base->in_carrier(w, y))
          fail(Errc::CarrierMismatch, "relation pair outside carrier");
    }
    CondRelation r;
    r.base = std::move(base);
    r.support = support;
    r.rel = std::move(rel);
    return r;
  }

  bool holds(int w, const Value& x, const Value& y) const {
    return rel[w].count({x, y}) > 0;
  }
};

// Conditional (partial or total) order: per-atom classical orders on the
// carrier, living on 1.
struct CondOrder {
  CondRelation r;
  bool total = false;

  static CondOrder make(CondRelation rel, bool total_kind) {
    const CondSetPtr& x = rel.base;
    if (rel.support != x->alg->full_mask())
      fail(Errc::SupportMismatch, "orders live on 1");
    for (int w = 0; w < x->n_atoms(); w++) {
      const auto& c = x->carrier[w];
      for (const auto& a : c) {
        if (!rel.holds(w, a, a)) fail(Errc::NotTotal, "order not reflexive");
        for (const auto& b : c) {
          if (rel.holds(w, a, b) && rel.holds(w, b, a) && a != b)
            fail(Errc::NotTotal, "order not antisymmetric");
          if (total_kind && !rel.holds(w, a, b) && !rel.holds(w, b, a))
            fail(Errc::NotTotal, "order not total at atom " + x->alg->atoms[w]);
          for (const auto& d : c)
            if (rel.holds(w, a, b) && rel.holds(w, b, d) && !rel.holds(w, a, d))
              fail(Errc::NotTotal, "order not transitive");
        }
      }
    }
    CondOrder o;
    o.r = std::move(rel);
    o.total = total_kind;
    return o;
  }

  // order generated by the built-in total order on carrier points
  static CondOrder natural(const CondSetPtr& x) {
    std::vector<std::set<std::pair<Value, Value>>> rel(x->n_atoms());
    for (int w = 0; w < x->n_atoms(); w++)
      for (const auto& a : x->carrier[w])
        for (const auto& b : x->carrier[w])
          if (a <= b) rel[w].insert({a, b});
    return make(CondRelation::make(x, x->alg->full_mask(), std::move(rel)), true);
  }

  bool leq(int w, const Value& a, const Value& b) const { return r.holds(w, a, b); }
};

// Trichotomy partition (x<y, y<x, x=y) of 1. Only total orders compare.
struct Trichotomy {
  Condition lt, gt, eq;
  Partition as_partition() const {
    return make_partition(Condition::one(lt.alg), {lt, gt, eq});
  }
};

inline Trichotomy compare_total(const CondOrder& ord, const CondElement& x,
                                const CondElement& y) {
  if (!ord.total) fail(Errc::NotTotal, "comparison needs a total order");
  const CondSetPtr& base = ord.r.base;
  ensure_same_parent(base, x.parent);
  ensure_same_parent(base, y.parent);
  std::uint64_t full = base->alg->full_mask();
  if (x.support != full || y.support != full)
    fail(Errc::SupportMismatch, "compared elements must live on 1");
  std::uint64_t lt = 0, gt = 0, eq = 0;
  for (int w = 0; w < base->n_atoms(); w++) {
    if (x.vals[w] == y.vals[w]) eq |= 1ULL << w;
    else if (ord.leq(w, x.vals[w], y.vals[w])) lt |= 1ULL << w;
    else gt |= 1ULL << w;
  }
  return Trichotomy{Condition(base->alg, lt), Condition(base->alg, gt),
                    Condition(base->alg, eq)};
}

namespace detail {
// least upper bound of a point set within the carrier; nullopt if none
inline std::optional<Value> lub(const CondOrder& ord, int w,
                                const std::vector<Value>& pts, bool upper) {
  const auto& carrier = ord.r.base->carrier[w];
  std::vector<Value> cands;
  for (const auto& c : carrier) {
    bool ok = true;
    for (const auto& p : pts)
      if (!(upper ? ord.leq(w, p, c) : ord.leq(w, c, p))) ok = false;
    if (ok) cands.push_back(c);
  }
  for (const auto& c : cands) {
    bool least = true;
    for (const auto& d : cands)
      if (!(upper ? ord.leq(w, c, d) : ord.leq(w, d, c))) least = false;
    if (least) return c;
  }
  return std::nullopt;
}
}  // namespace detail

inline CondElement cond_sup(const CondOrder& ord, const CondSubset& y) {
  const CondSetPtr& base = ord.r.base;
  ensure_same_parent(base, y.parent);
  if (!y.lives_on_one()) fail(Errc::SupportMismatch, "sup needs a subset living on 1");
  std::vector<Value> vals(base->n_atoms(), Value());
  for (int w = 0; w < base->n_atoms(); w++) {
    auto v = detail::lub(ord, w, y.pw[w], true);
    if (!v) fail(Errc::NoBound, "no supremum at atom " + base->alg->atoms[w]);
    vals[w] = *v;
  }
  return CondElement::make(base, base->alg->full_mask(), std::move(vals));
}

inline CondElement cond_inf(const CondOrder& ord, const CondSubset& y) {
  const CondSetPtr& base = ord.r.base;
  ensure_same_parent(base, y.parent);
  if (!y.lives_on_one()) fail(Errc::SupportMismatch, "inf needs a subset living on 1");
  std::vector<Value> vals(base->n_atoms(), Value());
  for (int w = 0; w < base->n_atoms(); w++) {
    auto v = detail::lub(ord, w, y.pw[w], false);
    if (!v) fail(Errc::NoBound, "no infimum at atom " + base->alg->atoms[w]);
    vals[w] = *v;
  }
  return CondElement::make(base, base->alg->full_mask(), std::move(vals));
}

inline std::optional<std::pair<CondElement, CondElement>> cond_bounds(
    const CondOrder& ord, const CondSubset& y) {
  const CondSetPtr& base = ord.r.base;
  ensure_same_parent(base, y.parent);
  if (!y.lives_on_one()) fail(Errc::SupportMismatch, "bounds need a subset living on 1");
  std::vector<Value> lo(base->n_atoms(), Value()), hi(base->n_atoms(), Value());
  for (int w = 0; w < base->n_atoms(); w++) {
    auto l = detail::lub(ord, w, y.pw[w], false);
    auto h = detail::lub(ord, w, y.pw[w], true);
    if (!l || !h) return std::nullopt;
    lo[w] = *l;
    hi[w] = *h;
  }
  std::uint64_t full = base->alg->full_mask();
  return std::make_pair(CondElement::make(base, full, std::move(lo)),
                        CondElement::make(base, full, std::move(hi)));
}

// ----- conditional finiteness -----

inline CondNat cond_card(const CondSubset& y) {
  if (!y.lives_on_one()) fail(Errc::SupportMismatch, "cardinality needs a subset living on 1");
  std::vector<std::int64_t> v(y.parent->n_atoms());
  for (int w = 0; w < y.parent->n_atoms(); w++)
    v[w] = static_cast<std::int64_t>(y.pw[w].size());
  return CondNat::make(y.parent->alg, y.parent->alg->full_mask(), std::move(v));
}

// The conditional interval {1 <= l <= n}.
inline CondSetPtr interval_condset(const CondNat& n) {
  if (!n.lives_on_one()) fail(Errc::SupportMismatch, "interval needs n living on 1");
  std::vector<std::vector<Value>> carrier(n.alg->n());
  for (int w = 0; w < n.alg->n(); w++)
    for (std::int64_t k = 1; k <= n.v[w]; k++) carrier[w].push_back(Value(k));
  return CondSet::make(n.alg, std::move(carrier));
}

// The subset as a conditional set of its own (per-atom point sets as carrier).
inline CondSetPtr subset_space(const CondSubset& y) {
  if (!y.lives_on_one()) fail(Errc::SupportMismatch, "subset space needs support 1");
  return CondSet::make(y.parent->alg, y.pw);
}

struct FiniteEnumeration {
  CondSetPtr sub;       // carrier = per-atom points of the subset
  CondNat n;            // conditional cardinality
  CondFunction to_idx;  // sub -> {1..n}, k-th point (sorted) to k
  CondFunction from_idx;
};

inline FiniteEnumeration cond_finite_bijection(const CondSubset& y) {
  FiniteEnumeration e{subset_space(y), cond_card(y), CondFunction{}, CondFunction{}};
  CondSetPtr interval = interval_condset(e.n);
  std::vector<std::map<Value, Value>> fwd(y.parent->n_atoms()), bwd(y.parent->n_atoms());
  for (int w = 0; w < y.parent->n_atoms(); w++)
    for (size_t k = 0; k < y.pw[w].size(); k++) {
      fwd[w][y.pw[w][k]] = Value(static_cast<std::int64_t>(k + 1));
      bwd[w][Value(static_cast<std::int64_t>(k + 1))] = y.pw[w][k];
    }
  e.to_idx = CondFunction::make(e.sub, interval, std::move(fwd));
  e.from_idx = CondFunction::make(interval, e.sub, std::move(bwd));
  return e;
}

// ----- conditional families of subsets and constructive choice -----

// (Y^i)_{i in I}: per atom, a non-empty point set of the target space for
// every index point.
struct SubsetFamily {
  CondSetPtr index, space;
  std::vector<std::map<Value, std::vector<Value>>> sets;

  static SubsetFamily make(CondSetPtr index, CondSetPtr space,
                           std::vector<std::map<Value, std::vector<Value>>> sets) {
    if (static_cast<int>(sets.size()) != index->n_atoms())
      fail(Errc::CarrierMismatch, "one family table per atom required");
    for (int w = 0; w < index->n_atoms(); w++) {
      for (const auto& i : index->carrier[w])
        if (!sets[w].count(i))
          fail(Errc::CarrierMismatch, "family not total on the index set");
      for (auto& [i, pts] : sets[w]) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.empty()) fail(Errc::EmptyGround, "family member empty at an atom");
        for (const auto& v : pts)
          if (!space->in_carrier(w, v))
            fail(Errc::CarrierMismatch, "family point outside space carrier");
      }
    }
    SubsetFamily f;
    f.index = std::move(index);
    f.space = std::move(space);
    f.sets = std::move(sets);
    return f;
  }

  // member Y^i restricted to a condition (as a subset of the space)
  CondSubset member(const CondElement& i) const {
    ensure_same_parent(index, i.parent);
    std::vector<std::vector<Value>> pw(index->n_atoms());
    for (int w = 0; w < index->n_atoms(); w++)
      if (i.support & (1ULL << w)) pw[w] = sets[w].at(i.vals[w]);
    return CondSubset::make(space, std::move(pw));
  }
};

// Deterministic conditional choice: pick the least point of every member.
inline CondFunction choice(const SubsetFamily& fam) {
  std::vector<std::map<Value, Value>> tbl(fam.index->n_atoms());
  for (int w = 0; w < fam.index->n_atoms(); w++)
    for (const auto& [i, pts] : fam.sets[w]) tbl[w][i] = pts.front();
  return CondFunction::make(fam.index, fam.space, std::move(tbl));
}

// Union over a conditionally finite family indexed by {1..n}: per atom, the
// union of the first n[w] members.
inline CondSubset finite_union(const SubsetFamily& fam, const CondNat& n) {
  std::vector<std::vector<Value>> pw(fam.space->n_atoms());
  for (int w = 0; w < fam.space->n_atoms(); w++)
    for (std::int64_t k = 1; k <= n.v[w]; k++) {
      const auto& pts = fam.sets[w].at(Value(k));
      pw[w].insert(pw[w].end(), pts.begin(), pts.end());
    }
  return CondSubset::make(fam.space, std::move(pw));
}

inline CondSubset finite_intersection(const SubsetFamily& fam, const CondNat& n) {
  std::vector<std::vector<Value>> pw(fam.space->n_atoms());
  for (int w = 0; w < fam.space->n_atoms(); w++) {
    std::vector<Value> acc = fam.sets[w].at(Value(std::int64_t{1}));
    for (std::int64_t k = 2; k <= n.v[w]; k++) {
      const auto& pts = fam.sets[w].at(Value(k));
      std::vector<Value> next;
      std::set_intersection(acc.begin(), acc.end(), pts.begin(), pts.end(),
                            std::back_inserter(next));
      acc = std::move(next);
    }
    pw[w] = std::move(acc);
  }
  return CondSubset::make(fam.space, std::move(pw));
}

}  // namespace condsets
