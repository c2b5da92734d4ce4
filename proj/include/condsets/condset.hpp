#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "condsets/boolalg.hpp"
#include "condsets/errors.hpp"
#include "condsets/value.hpp"

namespace condsets {

// Conditional set on a finite atomic algebra, kept in per-atom form:
// one finite non-empty carrier per atom. Elements and subsets glue per-atom
// data along conditions; stability over an atomic algebra makes this form
// canonical (a stable set is the product of its per-atom projections).
struct CondSet;
using CondSetPtr = std::shared_ptr<const CondSet>;

struct CondSet {
  AlgebraPtr alg;
  std::vector<std::vector<Value>> carrier;  // per atom; sorted, unique, non-empty

  static CondSetPtr make(AlgebraPtr alg, std::vector<std::vector<Value>> carrier) {
    if (static_cast<int>(carrier.size()) != alg->n())
      fail(Errc::CarrierMismatch, "one carrier per atom required");
    for (auto& c : carrier) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      if (c.empty()) fail(Errc::EmptyGround, "carrier must be non-empty at every atom");
    }
    auto s = std::make_shared<CondSet>();
    s->alg = std::move(alg);
    s->carrier = std::move(carrier);
    return s;
  }

  // Conditional set generated by a finite set of points: same carrier everywhere.
  static CondSetPtr generate(const AlgebraPtr& alg, const std::vector<Value>& points) {
    if (points.empty()) fail(Errc::EmptyGround, "generating set must be non-empty");
    return make(alg, std::vector<std::vector<Value>>(alg->n(),
                                                     points));
  }

  // Cartesian product; points become tuples, factor order preserved.
  static CondSetPtr product(const std::vector<CondSetPtr>& factors) {
    if (factors.empty()) fail(Errc::EmptyFamily, "product of no factors");
    const AlgebraPtr& alg = factors[0]->alg;
    for (const auto& f : factors) ensure_same_algebra(alg, f->alg);
    std::vector<std::vector<Value>> carrier(alg->n());
    for (int w = 0; w < alg->n(); w++) {
      std::vector<Value::Tuple> acc = {{}};
      for (const auto& f : factors) {
        std::vector<Value::Tuple> next;
        for (const auto& pre : acc)
          for (const auto& v : f->carrier[w]) {
            Value::Tuple t = pre;
            t.push_back(v);
            next.push_back(std::move(t));
          }
        acc = std::move(next);
      }
      for (auto& t : acc) carrier[w].push_back(Value(std::move(t)));
    }
    return make(alg, std::move(carrier));
  }

  // The algebra seen as a conditional set: at an atom w the stage is {0, w}.
  // Conditions are encoded as tuples of the atom names they contain.
  static CondSetPtr alg_as_condset(const AlgebraPtr& alg) {
    std::vector<std::vector<Value>> carrier(alg->n());
    for (int w = 0; w < alg->n(); w++) {
      carrier[w].push_back(Value(Value::Tuple{}));
      carrier[w].push_back(Value(Value::Tuple{Value(alg->atoms[w])}));
    }
    return make(alg, std::move(carrier));
  }

  int n_atoms() const { return alg->n(); }

  int carrier_index(int w, const Value& v) const {
    const auto& c = carrier[w];
    auto it = std::lower_bound(c.begin(), c.end(), v);
    if (it == c.end() || *it != v) return -1;
    return static_cast<int>(it - c.begin());
  }

  bool in_carrier(int w, const Value& v) const { return carrier_index(w, v) >= 0; }

  friend bool operator==(const CondSet& a, const CondSet& b) {
    return same_algebra(a.alg, b.alg) && a.carrier == b.carrier;
  }
};

inline Value condition_value(const Condition& c) {
  Value::Tuple t;
  for (const auto& nm : c.atom_names()) t.push_back(Value(nm));
  return Value(std::move(t));
}

inline bool same_parent(const CondSetPtr& a, const CondSetPtr& b) {
  return a == b || *a == *b;
}

inline void ensure_same_parent(const CondSetPtr& a, const CondSetPtr& b) {
  if (!same_parent(a, b)) fail(Errc::ParentMismatch, "objects from different conditional sets");
}

// Element on a support condition: one carrier point per atom of the support.
// Slots off the support are normalized to the least carrier point so that
// equality and ordering are plain field comparisons.
struct CondElement {
  CondSetPtr parent;
  std::uint64_t support = 0;
  std::vector<Value> vals;

  static CondElement make(CondSetPtr parent, std::uint64_t support,
                          std::vector<Value> vals) {
    if (static_cast<int>(vals.size()) != parent->n_atoms())
      fail(Errc::CarrierMismatch, "one value slot per atom required");
    CondElement x;
    for (int w = 0; w < parent->n_atoms(); w++) {
      if (support & (1ULL << w)) {
        if (!parent->in_carrier(w, vals[w]))
          fail(Errc::CarrierMismatch, "value outside carrier at atom " + parent->alg->atoms[w]);
      } else {
        vals[w] = parent->carrier[w][0];
      }
    }
    x.parent = std::move(parent);
    x.support = support;
    x.vals = std::move(vals);
    return x;
  }

  static CondElement make_on(const CondSetPtr& parent, std::uint64_t support,
                             const std::map<std::string, Value>& by_atom) {
    std::vector<Value> vals(parent->n_atoms(), Value());
    for (int w = 0; w < parent->n_atoms(); w++) {
      auto it = by_atom.find(parent->alg->atoms[w]);
      if (support & (1ULL << w)) {
        if (it == by_atom.end())
          fail(Errc::CarrierMismatch, "missing value at atom " + parent->alg->atoms[w]);
        vals[w] = it->second;
      }
    }
    return make(parent, support, std::move(vals));
  }

  Condition support_cond() const { return Condition(parent->alg, support); }

  const Value& at(int w) const { return vals[w]; }

  CondElement restrict(const Condition& a) const {
    ensure_same_algebra(parent->alg, a.alg);
    return make(parent, support & a.mask, vals);
  }

  friend bool operator==(const CondElement& a, const CondElement& b) {
    return a.support == b.support && a.vals == b.vals;
  }
  friend bool operator!=(const CondElement& a, const CondElement& b) { return !(a == b); }
  friend bool operator<(const CondElement& a, const CondElement& b) {
    if (a.support != b.support) return a.support < b.support;
    return std::lexicographical_compare(a.vals.begin(), a.vals.end(),
                                        b.vals.begin(), b.vals.end());
  }

  std::string str() const {
    std::string out = "[";
    bool first = true;
    for (int w = 0; w < parent->n_atoms(); w++) {
      if (!(support & (1ULL << w))) continue;
      if (!first) out += " ";
      first = false;
      out += parent->alg->atoms[w] + ":" + vals[w].str();
    }
    return out + "]";
  }
};

// Glue elements along a partition; pick i must live on at least part i.
inline CondElement amalgamate(const Partition& p, const std::vector<CondElement>& picks) {
  if (!is_partition(p)) fail(Errc::PartitionInvalid, "amalgamation needs a partition");
  if (picks.size() != p.parts.size())
    fail(Errc::PartitionInvalid, "one pick per part required");
  if (picks.empty()) fail(Errc::EmptyFamily, "amalgamation of no picks");
  const CondSetPtr& parent = picks[0].parent;
  std::vector<Value> vals(parent->n_atoms(), Value());
  for (size_t i = 0; i < picks.size(); i++) {
    ensure_same_parent(parent, picks[i].parent);
    if (p.parts[i].mask & ~picks[i].support)
      fail(Errc::PickSupportMismatch, "pick does not live on its part");
    for (int w = 0; w < parent->n_atoms(); w++)
      if (p.parts[i].mask & (1ULL << w)) vals[w] = picks[i].vals[w];
  }
  return CondElement::make(parent, p.base.mask, std::move(vals));
}

struct CondSubset;
CondSubset amalgamate_subsets(const Partition& p, const std::vector<CondSubset>& picks);

// Stable subset in per-atom form: a support plus one non-empty set of points
// per atom of the support. The zero subset is the unique value of support 0.
struct CondSubset {
  CondSetPtr parent;
  std::uint64_t support = 0;
  std::vector<std::vector<Value>> pw;  // sorted unique; empty exactly off support

  static CondSubset zero(CondSetPtr parent) {
    CondSubset y;
    y.pw.assign(parent->n_atoms(), {});
    y.parent = std::move(parent);
    return y;
  }

  static CondSubset full(const CondSetPtr& parent) {
    CondSubset y;
    y.parent = parent;
    y.pw = parent->carrier;
    y.support = parent->alg->full_mask();
    return y;
  }

  // Support is derived: exactly the atoms with a non-empty point set.
  static CondSubset make(CondSetPtr parent, std::vector<std::vector<Value>> pw) {
    if (static_cast<int>(pw.size()) != parent->n_atoms())
      fail(Errc::CarrierMismatch, "one point set per atom required");
    CondSubset y;
    y.support = 0;
    for (int w = 0; w < parent->n_atoms(); w++) {
      auto& s = pw[w];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (const auto& v : s)
        if (!parent->in_carrier(w, v))
          fail(Errc::CarrierMismatch, "point outside carrier at atom " + parent->alg->atoms[w]);
      if (!s.empty()) y.support |= 1ULL << w;
    }
    y.parent = std::move(parent);
    y.pw = std::move(pw);
    return y;
  }

  static CondSubset of_element(const CondElement& x) {
    std::vector<std::vector<Value>> pw(x.parent->n_atoms());
    for (int w = 0; w < x.parent->n_atoms(); w++)
      if (x.support & (1ULL << w)) pw[w].push_back(x.vals[w]);
    return make(x.parent, std::move(pw));
  }

  Condition support_cond() const { return Condition(parent->alg, support); }
  bool is_zero() const { return support == 0; }
  bool lives_on_one() const { return support == parent->alg->full_mask(); }

  CondSubset restrict(const Condition& a) const {
    ensure_same_algebra(parent->alg, a.alg);
    CondSubset y;
    y.parent = parent;
    y.support = support & a.mask;
    y.pw.assign(parent->n_atoms(), {});
    for (int w = 0; w < parent->n_atoms(); w++)
      if (y.support & (1ULL << w)) y.pw[w] = pw[w];
    return y;
  }

  // x is an element of this subset at its own support
  bool contains(const CondElement& x) const {
    ensure_same_parent(parent, x.parent);
    if (x.support & ~support) return false;
    for (int w = 0; w < parent->n_atoms(); w++)
      if (x.support & (1ULL << w))
        if (!std::binary_search(pw[w].begin(), pw[w].end(), x.vals[w])) return false;
    return true;
  }

  friend bool operator==(const CondSubset& a, const CondSubset& b) {
    return a.support == b.support && a.pw == b.pw;
  }
  friend bool operator!=(const CondSubset& a, const CondSubset& b) { return !(a == b); }
  friend bool operator<(const CondSubset& a, const CondSubset& b) {
    if (a.support != b.support) return a.support < b.support;
    return a.pw < b.pw;
  }

  std::string str() const {
    if (is_zero()) return "{zero}";
    std::string out = "{";
    bool first = true;
    for (int w = 0; w < parent->n_atoms(); w++) {
      if (!(support & (1ULL << w))) continue;
      if (!first) out += " ";
      first = false;
      out += parent->alg->atoms[w] + ":(";
      for (size_t i = 0; i < pw[w].size(); i++) {
        if (i) out += ",";
        out += pw[w][i].str();
      }
      out += ")";
    }
    return out + "}";
  }
};

// ----- per-atom (pointwise) operations: the canonical implementations -----

inline CondSubset cond_union(const CondSetPtr& parent, const std::vector<CondSubset>& ys) {
  std::vector<std::vector<Value>> pw(parent->n_atoms());
  for (const auto& y : ys) {
    ensure_same_parent(parent, y.parent);
    for (int w = 0; w < parent->n_atoms(); w++)
      pw[w].insert(pw[w].end(), y.pw[w].begin(), y.pw[w].end());
  }
  return CondSubset::make(parent, std::move(pw));
}

inline CondSubset cond_union(const CondSubset& a, const CondSubset& b) {
  return cond_union(a.parent, {a, b});
}

inline CondSubset cond_intersection(const CondSetPtr& parent,
                                    const std::vector<CondSubset>& ys) {
  if (ys.empty()) return CondSubset::full(parent);
  std::uint64_t sup = parent->alg->full_mask();
  for (const auto& y : ys) {
    ensure_same_parent(parent, y.parent);
    sup &= y.support;
  }
  std::vector<std::vector<Value>> pw(parent->n_atoms());
  for (int w = 0; w < parent->n_atoms(); w++) {
    if (!(sup & (1ULL << w))) continue;
    std::vector<Value> acc = ys[0].pw[w];
    for (size_t i = 1; i < ys.size(); i++) {
      std::vector<Value> next;
      std::set_intersection(acc.begin(), acc.end(), ys[i].pw[w].begin(),
                            ys[i].pw[w].end(), std::back_inserter(next));
      acc = std::move(next);
    }
    pw[w] = std::move(acc);
  }
  return CondSubset::make(parent, std::move(pw));
}

inline CondSubset cond_intersection(const CondSubset& a, const CondSubset& b) {
  return cond_intersection(a.parent, {a, b});
}

// On the support: pointwise carrier difference where non-empty.
// Off the support: the full carrier. The join of both zones is the support
// of the result.
inline CondSubset cond_complement(const CondSubset& y) {
  const CondSetPtr& parent = y.parent;
  std::vector<std::vector<Value>> pw(parent->n_atoms());
  for (int w = 0; w < parent->n_atoms(); w++) {
    if (y.support & (1ULL << w)) {
      std::set_difference(parent->carrier[w].begin(), parent->carrier[w].end(),
                          y.pw[w].begin(), y.pw[w].end(), std::back_inserter(pw[w]));
    } else {
      pw[w] = parent->carrier[w];
    }
  }
  return CondSubset::make(parent, std::move(pw));
}

inline bool subset_leq(const CondSubset& y, const CondSubset& z) {
  ensure_same_parent(y.parent, z.parent);
  if (y.support & ~z.support) return false;
  for (int w = 0; w < y.parent->n_atoms(); w++)
    if (y.support & (1ULL << w))
      if (!std::includes(z.pw[w].begin(), z.pw[w].end(), y.pw[w].begin(), y.pw[w].end()))
        return false;
  return true;
}

// Hull of finitely many elements on a common support: closes the list under
// amalgamation along every partition of the support.
inline CondSubset stable_hull(const CondSetPtr& parent,
                              const std::vector<CondElement>& elems) {
  if (elems.empty()) return CondSubset::zero(parent);
  std::uint64_t sup = elems[0].support;
  std::vector<std::vector<Value>> pw(parent->n_atoms());
  for (const auto& x : elems) {
    ensure_same_parent(parent, x.parent);
    if (x.support != sup) fail(Errc::SupportMismatch, "hull needs a common support");
    for (int w = 0; w < parent->n_atoms(); w++)
      if (sup & (1ULL << w)) pw[w].push_back(x.vals[w]);
  }
  return CondSubset::make(parent, std::move(pw));
}

// Number of elements at the stage the subset lives on. The zero subset has
// exactly one element, the stage-0 point (empty product).
inline std::size_t element_count(const CondSubset& y) {
  std::size_t n = 1;
  for (int w = 0; w < y.parent->n_atoms(); w++)
    if (y.support & (1ULL << w)) n *= y.pw[w].size();
  return n;
}

// Every element of y (all per-atom choices). Guarded by a size cap.
inline std::vector<CondElement> elements_of(const CondSubset& y,
                                            std::size_t cap = 1 << 20) {
  std::vector<CondElement> out;
  if (y.is_zero()) {
    out.push_back(CondElement::make(y.parent, 0,
                                    std::vector<Value>(y.parent->n_atoms(), Value())));
    return out;
  }
  if (element_count(y) > cap) fail(Errc::NotMaterialized, "too many elements to list");
  std::vector<Value> vals(y.parent->n_atoms(), Value());
  std::vector<int> idx;
  for (int w = 0; w < y.parent->n_atoms(); w++)
    if (y.support & (1ULL << w)) idx.push_back(w);
  std::vector<size_t> pos(idx.size(), 0);
  while (true) {
    for (size_t k = 0; k < idx.size(); k++) vals[idx[k]] = y.pw[idx[k]][pos[k]];
    out.push_back(CondElement::make(y.parent, y.support, vals));
    size_t k = 0;
    for (; k < idx.size(); k++) {
      if (++pos[k] < y.pw[idx[k]].size()) break;
      pos[k] = 0;
    }
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Glue subsets along a partition; pick i must live on at least part i.
inline CondSubset amalgamate_subsets(const Partition& p,
                                     const std::vector<CondSubset>& picks) {
  if (!is_partition(p)) fail(Errc::PartitionInvalid, "amalgamation needs a partition");
  if (picks.size() != p.parts.size())
    fail(Errc::PartitionInvalid, "one pick per part required");
  if (picks.empty()) fail(Errc::EmptyFamily, "amalgamation of no picks");
  const CondSetPtr& parent = picks[0].parent;
  std::vector<std::vector<Value>> pw(parent->n_atoms());
  for (size_t i = 0; i < picks.size(); i++) {
    ensure_same_parent(parent, picks[i].parent);
    if (p.parts[i].mask & ~picks[i].support)
      fail(Errc::PickSupportMismatch, "pick does not live on its part");
    for (int w = 0; w < parent->n_atoms(); w++)
      if (p.parts[i].mask & (1ULL << w)) pw[w] = picks[i].pw[w];
  }
  return CondSubset::make(parent, std::move(pw));
}

// Atoms of the power set lattice: one atom of the algebra, one point.
inline std::vector<CondSubset> atoms_of_powerset(const CondSetPtr& parent) {
  std::vector<CondSubset> out;
  for (int w = 0; w < parent->n_atoms(); w++)
    for (const auto& v : parent->carrier[w]) {
      std::vector<std::vector<Value>> pw(parent->n_atoms());
      pw[w].push_back(v);
      out.push_back(CondSubset::make(parent, std::move(pw)));
    }
  return out;
}

namespace detail {
inline void per_atom_point_sets(const std::vector<Value>& carrier,
                                std::vector<std::vector<Value>>& out,
                                bool include_empty) {
  out.clear();
  size_t m = carrier.size();
  for (std::uint64_t bits = include_empty ? 0 : 1; bits < (1ULL << m); bits++) {
    std::vector<Value> s;
    for (size_t i = 0; i < m; i++)
      if (bits & (1ULL << i)) s.push_back(carrier[i]);
    out.push_back(std::move(s));
  }
}
}  // namespace detail

// All subsets living on 1 (the conditional system S(X)). Cap guarded.
inline std::vector<CondSubset> enumerate_full_support_subsets(const CondSetPtr& parent,
                                                              std::size_t cap = 1 << 16) {
  std::size_t total = 1;
  for (int w = 0; w < parent->n_atoms(); w++) {
    total *= (1ULL << parent->carrier[w].size()) - 1;
    if (total > cap) fail(Errc::NotMaterialized, "space too large to materialize");
  }
  std::vector<std::vector<std::vector<Value>>> choices(parent->n_atoms());
  for (int w = 0; w < parent->n_atoms(); w++)
    detail::per_atom_point_sets(parent->carrier[w], choices[w], false);
  std::vector<CondSubset> out;
  std::vector<size_t> pos(parent->n_atoms(), 0);
  while (true) {
    std::vector<std::vector<Value>> pw(parent->n_atoms());
    for (int w = 0; w < parent->n_atoms(); w++) pw[w] = choices[w][pos[w]];
    out.push_back(CondSubset::make(parent, std::move(pw)));
    int w = 0;
    for (; w < parent->n_atoms(); w++) {
      if (++pos[w] < choices[w].size()) break;
      pos[w] = 0;
    }
    if (w == parent->n_atoms()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every conditional subset of the space (any support), zero included.
inline std::vector<CondSubset> enumerate_subsets(const CondSetPtr& parent,
                                                 std::size_t cap = 1 << 16) {
  std::size_t total = 1;
  for (int w = 0; w < parent->n_atoms(); w++) {
    total *= 1ULL << parent->carrier[w].size();
    if (total > cap) fail(Errc::NotMaterialized, "space too large to materialize");
  }
  std::vector<std::vector<std::vector<Value>>> choices(parent->n_atoms());
  for (int w = 0; w < parent->n_atoms(); w++)
    detail::per_atom_point_sets(parent->carrier[w], choices[w], true);
  std::vector<CondSubset> out;
  std::vector<size_t> pos(parent->n_atoms(), 0);
  while (true) {
    std::vector<std::vector<Value>> pw(parent->n_atoms());
    for (int w = 0; w < parent->n_atoms(); w++) pw[w] = choices[w][pos[w]];
    out.push_back(CondSubset::make(parent, std::move(pw)));
    int w = 0;
    for (; w < parent->n_atoms(); w++) {
      if (++pos[w] < choices[w].size()) break;
      pos[w] = 0;
    }
    if (w == parent->n_atoms()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace condsets
