#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <vector>

#include "condsets/condmap.hpp"
#include "condsets/condset.hpp"

namespace condsets {

// Enumeration scale for filters. Within these bounds the generated filter is
// materialized as an explicit member set; beyond them membership runs through
// the generator oracle.
inline constexpr int kFilterAtomsMax = 3;
inline constexpr int kFilterCarrierMax = 4;
// Full filter enumeration (ground truth for maximality) is quadratic in the
// number of subsets living on 1 and gets its own, tighter cap.
inline constexpr std::size_t kEnumerateFiltersCap = 256;

inline bool within_materialization(const CondSetPtr& x) {
  if (x->n_atoms() > kFilterAtomsMax) return false;
  for (int w = 0; w < x->n_atoms(); w++)
    if (static_cast<int>(x->carrier[w].size()) > kFilterCarrierMax) return false;
  return true;
}

// Closure of a family of subsets under amalgamation: every per-atom mixture
// of the members. Restores stability of a hand-written generator list.
inline std::vector<CondSubset> stable_family_closure(const CondSetPtr& space,
                                                     const std::vector<CondSubset>& ys) {
  std::vector<std::vector<std::vector<Value>>> choices(space->n_atoms());
  for (const auto& y : ys) {
    ensure_same_parent(space, y.parent);
    for (int w = 0; w < space->n_atoms(); w++) {
      if (std::find(choices[w].begin(), choices[w].end(), y.pw[w]) == choices[w].end())
        choices[w].push_back(y.pw[w]);
    }
  }
  std::set<CondSubset> out;
  if (ys.empty()) return {};
  std::vector<size_t> pos(space->n_atoms(), 0);
  while (true) {
    std::vector<std::vector<Value>> pw(space->n_atoms());
    for (int w = 0; w < space->n_atoms(); w++) pw[w] = choices[w][pos[w]];
    out.insert(CondSubset::make(space, std::move(pw)));
    int w = 0;
    for (; w < space->n_atoms(); w++) {
      if (++pos[w] < choices[w].size()) break;
      pos[w] = 0;
    }
    if (w == space->n_atoms()) break;
  }
  return {out.begin(), out.end()};
}

// Base property on an explicit family: every pairwise meet dominates a member.
inline bool is_filter_base(const CondSetPtr& space, const std::vector<CondSubset>& gens) {
  if (gens.empty()) return false;
  for (const auto& y : gens) {
    ensure_same_parent(space, y.parent);
    if (!y.lives_on_one()) return false;
  }
  for (const auto& y1 : gens)
    for (const auto& y2 : gens) {
      CondSubset m = cond_intersection(y1, y2);
      bool witnessed = false;
      for (const auto& y3 : gens)
        if (subset_leq(y3, m)) {
          witnessed = true;
          break;
        }
      if (!witnessed) return false;
    }
  return true;
}

struct CondFilterBase {
  CondSetPtr space;
  std::vector<CondSubset> gens;  // stable, sorted, all living on 1

  // Closes the list under amalgamation, then validates the base property.
  static CondFilterBase make(const CondSetPtr& space, const std::vector<CondSubset>& ys) {
    if (ys.empty()) fail(Errc::InvalidBase, "a filter base needs a generator");
    for (const auto& y : ys)
      if (!y.lives_on_one())
        fail(Errc::InvalidBase, "generators must live on 1");
    CondFilterBase b;
    b.space = space;
    b.gens = stable_family_closure(space, ys);
    if (!is_filter_base(space, b.gens))
      fail(Errc::InvalidBase, "pairwise meets escape the base");
    return b;
  }
};

struct CondFilter {
  CondSetPtr space;
  CondFilterBase base;
  bool materialized = false;
  std::set<CondSubset> members;  // filled when materialized

  bool contains(const CondSubset& z) const {
    if (!z.lives_on_one()) return false;
    if (materialized) return members.count(z) > 0;
    for (const auto& y : base.gens)
      if (subset_leq(y, z)) return true;
    return false;
  }
};

// Upward closure of the base within the subsets living on 1.
inline CondFilter generate_filter(const CondFilterBase& b) {
  CondFilter f;
  f.space = b.space;
  f.base = b;
  if (within_materialization(b.space)) {
    f.materialized = true;
    for (const auto& z : enumerate_full_support_subsets(b.space))
      for (const auto& y : b.gens)
        if (subset_leq(y, z)) {
          f.members.insert(z);
          break;
        }
  }
  return f;
}

inline CondFilter principal_filter(const CondElement& x) {
  return generate_filter(CondFilterBase::make(x.parent, {CondSubset::of_element(x)}));
}

// Meet of the conditions the members live on. A system that is meet-closed,
// upward closed and free of the zero subset always has a positive meet;
// hitting zero means the input was not such a system.
inline Condition min_condition(const CondSetPtr& space, const std::vector<CondSubset>& sys) {
  if (sys.empty()) fail(Errc::EmptyFamily, "minimal condition of an empty system");
  std::uint64_t m = space->alg->full_mask();
  for (const auto& y : sys) {
    ensure_same_parent(space, y.parent);
    m &= y.support;
  }
  if (m == 0) fail(Errc::DegenerateSystem, "member supports meet in 0");
  return Condition(space->alg, m);
}

// Extension to an ultrafilter. Per atom the generators' point sets are a
// classical filter base on the carrier, so their intersection is non-empty;
// the least point of each intersection stitches into an element whose
// principal filter refines the input.
inline CondFilter ultrafilter_extend(const CondFilter& f) {
  const CondSetPtr& x = f.space;
  std::vector<Value> vals(x->n_atoms(), Value());
  for (int w = 0; w < x->n_atoms(); w++) {
    std::vector<Value> acc = f.base.gens[0].pw[w];
    for (size_t i = 1; i < f.base.gens.size(); i++) {
      std::vector<Value> next;
      const auto& s = f.base.gens[i].pw[w];
      std::set_intersection(acc.begin(), acc.end(), s.begin(), s.end(),
                            std::back_inserter(next));
      acc = std::move(next);
    }
    if (acc.empty()) fail(Errc::InvalidBase, "generator traces have empty meet");
    vals[w] = acc.front();
  }
  return principal_filter(CondElement::make(x, x->alg->full_mask(), std::move(vals)));
}

// All conditional filters on a small space. Every filter here is the upward
// closure of the meet of its members, so they are in bijection with the
// subsets living on 1.
inline std::vector<CondFilter> enumerate_filters(const CondSetPtr& x) {
  auto all = enumerate_full_support_subsets(x, kEnumerateFiltersCap);
  std::vector<CondFilter> out;
  out.reserve(all.size());
  for (const auto& y : all)
    out.push_back(generate_filter(CondFilterBase::make(x, {y})));
  return out;
}

// Filter axioms on an explicit member family, enumeration scale only.
inline bool is_filter_family(const CondSetPtr& x, const std::set<CondSubset>& members) {
  if (members.empty()) return false;
  for (const auto& y : members)
    if (!y.lives_on_one()) return false;
  if (!members.count(CondSubset::full(x))) return false;
  auto all = enumerate_full_support_subsets(x);
  for (const auto& y : members) {
    for (const auto& z : all)
      if (subset_leq(y, z) && !members.count(z)) return false;
    for (const auto& z : members) {
      CondSubset m = cond_intersection(y, z);
      if (!m.lives_on_one() || !members.count(m)) return false;
    }
  }
  // stability: two-part mixtures of members are members
  for (const auto& y : members)
    for (const auto& z : members)
      for (std::uint64_t b = 0; b <= x->alg->full_mask(); b++) {
        std::vector<std::vector<Value>> pw(x->n_atoms());
        for (int w = 0; w < x->n_atoms(); w++)
          pw[w] = (b & (1ULL << w)) ? y.pw[w] : z.pw[w];
        if (!members.count(CondSubset::make(x, pw))) return false;
      }
  return true;
}

enum class UltraClause { Maximal, UnionSplit, ComplementSplit, MeetsAll };

namespace detail {
// a Y1_a + a^c Y2_{a^c}: points of y1 on a, points of y2 off a
inline CondSubset two_sided_mix(const CondSetPtr& x, std::uint64_t a,
                                const CondSubset& y1, const CondSubset& y2) {
  std::vector<std::vector<Value>> pw(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++)
    pw[w] = (a & (1ULL << w)) ? y1.pw[w] : y2.pw[w];
  return CondSubset::make(x, std::move(pw));
}

// Splitting along some condition a with points of y1 on a and of y2 off a.
// The mixture is well formed exactly when a lies between the complement of
// y2's support and y1's support; on a branching algebra the two endpoints of
// that interval are not enough (an ultrafilter can pick y1 on one atom and
// y2 on another), so the whole interval is searched.
inline bool split_into(const CondFilter& u, const CondSubset& y1, const CondSubset& y2) {
  std::uint64_t full = u.space->alg->full_mask();
  std::uint64_t lo = full & ~y2.support;
  std::uint64_t hi = y1.support;
  if (lo & ~hi) return false;
  for (const auto& t : subconditions(Condition(u.space->alg, hi & ~lo)))
    if (u.contains(two_sided_mix(u.space, lo | t.mask, y1, y2))) return true;
  return false;
}
}  // namespace detail

// The four equivalent descriptions of an ultrafilter, checked independently.
inline bool is_ultrafilter(const CondFilter& u, UltraClause clause) {
  if (!u.materialized) fail(Errc::NotMaterialized, "characterizations need explicit members");
  const CondSetPtr& x = u.space;
  switch (clause) {
    case UltraClause::Maximal: {
      for (const auto& v : enumerate_filters(x)) {
        bool finer = true;
        for (const auto& y : u.members)
          if (!v.members.count(y)) {
            finer = false;
            break;
          }
        if (finer && v.members.size() != u.members.size()) return false;
      }
      return true;
    }
    case UltraClause::UnionSplit: {
      auto all = enumerate_subsets(x);
      for (const auto& y1 : all)
        for (const auto& y2 : all) {
          if (!u.contains(cond_union(y1, y2))) continue;
          if (!detail::split_into(u, y1, y2)) return false;
        }
      return true;
    }
    case UltraClause::ComplementSplit: {
      for (const auto& y : enumerate_subsets(x))
        if (!detail::split_into(u, y, cond_complement(y))) return false;
      return true;
    }
    case UltraClause::MeetsAll: {
      for (const auto& z : enumerate_full_support_subsets(x)) {
        if (u.members.count(z)) continue;
        bool meets_all = true;
        for (const auto& w : u.members)
          if (!cond_intersection(z, w).lives_on_one()) {
            meets_all = false;
            break;
          }
        if (meets_all) return false;
      }
      return true;
    }
  }
  return false;
}

// Image family of a filter. Images of a stable family are stable and the
// pairwise meets are dominated by images of meets, so this is again a base.
inline CondFilterBase pushforward(const CondFunction& f, const CondFilter& F) {
  ensure_same_parent(f.dom, F.space);
  std::vector<CondSubset> imgs;
  if (F.materialized)
    for (const auto& y : F.members) imgs.push_back(image(f, y));
  else
    for (const auto& y : F.base.gens) imgs.push_back(image(f, y));
  return CondFilterBase::make(f.cod, imgs);
}

}  // namespace condsets
