#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "condsets/boolalg.hpp"
#include "condsets/condmap.hpp"
#include "condsets/condnat.hpp"
#include "condsets/condset.hpp"
#include "condsets/condtop.hpp"
#include "condsets/errors.hpp"
#include "condsets/rational.hpp"

namespace condsets {

// Conditional real number in exact per-atom form: one rational per atom of
// the support, zero off the support. Over a finite atomic algebra the Cauchy
// completion of the conditional rationals collapses to exactly this shape,
// so the rationals embed as the same representation and every operation is
// pointwise per atom.
struct CondReal {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  std::vector<Rat> v;  // zero off the support

  static CondReal make(AlgebraPtr alg, std::uint64_t support, std::vector<Rat> v) {
    if (static_cast<int>(v.size()) != alg->n())
      fail(Errc::DimMismatch, "one value per atom required");
    support &= alg->full_mask();
    for (int w = 0; w < alg->n(); w++)
      if (!(support & (1ULL << w))) v[w] = 0;
    CondReal x;
    x.alg = std::move(alg);
    x.support = support;
    x.v = std::move(v);
    return x;
  }

  static CondReal constant(const AlgebraPtr& alg, const Rat& r) {
    return make(alg, alg->full_mask(), std::vector<Rat>(alg->n(), r));
  }

  bool lives_on_one() const { return support == alg->full_mask(); }

  CondReal restrict(const Condition& c) const {
    ensure_same_algebra(alg, c.alg);
    return make(alg, support & c.mask, v);
  }

  std::string str() const {
    std::string out = "(";
    for (int w = 0; w < alg->n(); w++) {
      if (w) out += ", ";
      out += (support & (1ULL << w)) ? rat_str(v[w]) : std::string("-");
    }
    return out + ")";
  }

  friend bool operator==(const CondReal& a, const CondReal& b) {
    return same_algebra(a.alg, b.alg) && a.support == b.support && a.v == b.v;
  }
  friend bool operator!=(const CondReal& a, const CondReal& b) { return !(a == b); }
};

// The conditional rationals generated by the classical rationals have the
// same per-atom form, and their embedding into the reals is the identity.
using CondRat = CondReal;

inline void ensure_same_real_shape(const CondReal& a, const CondReal& b) {
  ensure_same_algebra(a.alg, b.alg);
  if (a.support != b.support)
    fail(Errc::SupportMismatch, "operands live on different conditions");
}

inline CondReal add(const CondReal& a, const CondReal& b) {
  ensure_same_real_shape(a, b);
  std::vector<Rat> v(a.v);
  for (size_t w = 0; w < v.size(); w++) v[w] += b.v[w];
  return CondReal::make(a.alg, a.support, std::move(v));
}

inline CondReal neg(const CondReal& a) {
  std::vector<Rat> v(a.v);
  for (auto& r : v) r = -r;
  return CondReal::make(a.alg, a.support, std::move(v));
}

inline CondReal sub(const CondReal& a, const CondReal& b) { return add(a, neg(b)); }

inline CondReal mul(const CondReal& a, const CondReal& b) {
  ensure_same_real_shape(a, b);
  std::vector<Rat> v(a.v);
  for (size_t w = 0; w < v.size(); w++) v[w] *= b.v[w];
  return CondReal::make(a.alg, a.support, std::move(v));
}

// Inversion is defined exactly on the elements that are nonzero at every
// atom; the error carries the zero set.
inline CondReal inv(const CondReal& a) {
  if (!a.lives_on_one())
    fail(Errc::SupportMismatch, "inversion needs an element living on 1");
  std::uint64_t zero = 0;
  for (int w = 0; w < a.alg->n(); w++)
    if (a.v[w] == 0) zero |= 1ULL << w;
  if (zero) fail_at(Errc::NotInvertible, "zero on part of the algebra", zero);
  std::vector<Rat> v(a.v);
  for (auto& r : v) r = 1 / r;
  return CondReal::make(a.alg, a.alg->full_mask(), std::move(v));
}

// Trichotomy of 1. Off the common support both operands restrict to the same
// zero element, so those atoms land in the equal part.
inline Trichotomy compare(const CondReal& a, const CondReal& b) {
  ensure_same_real_shape(a, b);
  std::uint64_t lt = 0, gt = 0, eq = 0;
  for (int w = 0; w < a.alg->n(); w++) {
    if (a.v[w] == b.v[w]) eq |= 1ULL << w;
    else if (a.v[w] < b.v[w]) lt |= 1ULL << w;
    else gt |= 1ULL << w;
  }
  return Trichotomy{Condition(a.alg, lt), Condition(a.alg, gt), Condition(a.alg, eq)};
}

inline CondReal cond_abs(const CondReal& a) {
  std::vector<Rat> v(a.v);
  for (auto& r : v)
    if (r < 0) r = -r;
  return CondReal::make(a.alg, a.support, std::move(v));
}

// Supremum of the stable hull of finitely many generators. Every element of
// the hull is a per-atom mixture of the generators, so the supremum is the
// pointwise maximum.
inline CondReal cond_sup(const std::vector<CondReal>& gens) {
  if (gens.empty()) fail(Errc::EmptyFamily, "supremum of no generators");
  CondReal out = gens[0];
  for (size_t i = 1; i < gens.size(); i++) {
    ensure_same_real_shape(out, gens[i]);
    for (size_t w = 0; w < out.v.size(); w++)
      out.v[w] = std::max(out.v[w], gens[i].v[w]);
  }
  return out;
}

inline CondReal cond_inf(const std::vector<CondReal>& gens) {
  if (gens.empty()) fail(Errc::EmptyFamily, "infimum of no generators");
  CondReal out = gens[0];
  for (size_t i = 1; i < gens.size(); i++) {
    ensure_same_real_shape(out, gens[i]);
    for (size_t w = 0; w < out.v.size(); w++)
      out.v[w] = std::min(out.v[w], gens[i].v[w]);
  }
  return out;
}

// Least conditional natural strictly above x, per atom; naturals start at 1.
inline CondNat archimedean_bound(const CondReal& x) {
  std::vector<std::int64_t> n(x.alg->n(), 1);
  for (int w = 0; w < x.alg->n(); w++) {
    if (!(x.support & (1ULL << w))) continue;
    Int f = floor_rat(x.v[w]) + 1;  // least integer strictly above
    if (f > Int(1) << 62) fail(Errc::NotFinite, "bound does not fit a conditional natural");
    if (f > 1) n[w] = f.convert_to<std::int64_t>();
  }
  return CondNat::make(x.alg, x.support, std::move(n));
}

inline std::uint64_t nonpositive_mask(const CondReal& eps) {
  std::uint64_t m = 0;
  for (int w = 0; w < eps.alg->n(); w++)
    if ((eps.support & (1ULL << w)) && eps.v[w] <= 0) m |= 1ULL << w;
  return m;
}

// Strict ball membership |q - y| < eps at every atom of the support.
inline bool ball_contains(const CondReal& q, const CondReal& eps, const CondReal& y) {
  ensure_same_real_shape(q, y);
  ensure_same_real_shape(q, eps);
  std::uint64_t bad = nonpositive_mask(eps);
  if (bad) fail_at(Errc::EpsNotPositive, "ball radius must be positive", bad);
  for (int w = 0; w < q.alg->n(); w++) {
    if (!(q.support & (1ULL << w))) continue;
    Rat d = q.v[w] - y.v[w];
    if (d < 0) d = -d;
    if (!(d < eps.v[w])) return false;
  }
  return true;
}

// Conditional vector with a stitched dimension: per atom a row of rationals
// whose length is the dimension at that atom.
struct CondRealVec {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim;
  std::vector<std::vector<Rat>> v;  // per atom; empty off the support

  static CondRealVec make(AlgebraPtr alg, std::uint64_t support,
                          std::vector<std::vector<Rat>> rows) {
    if (static_cast<int>(rows.size()) != alg->n())
      fail(Errc::DimMismatch, "one row per atom required");
    support &= alg->full_mask();
    std::vector<std::int64_t> dims(alg->n(), 1);
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (rows[w].empty()) fail(Errc::DimMismatch, "dimension must be at least 1");
        dims[w] = static_cast<std::int64_t>(rows[w].size());
      } else {
        rows[w].clear();
      }
    }
    CondRealVec x;
    x.alg = alg;
    x.support = support;
    x.dim = CondNat::make(alg, support, std::move(dims));
    x.v = std::move(rows);
    return x;
  }

  static CondRealVec constant(const AlgebraPtr& alg, const std::vector<Rat>& row) {
    return make(alg, alg->full_mask(),
                std::vector<std::vector<Rat>>(alg->n(), row));
  }
};

inline void ensure_same_vec_shape(const CondRealVec& a, const CondRealVec& b) {
  ensure_same_algebra(a.alg, b.alg);
  if (a.support != b.support)
    fail(Errc::SupportMismatch, "vectors live on different conditions");
  std::uint64_t bad = 0;
  for (int w = 0; w < a.alg->n(); w++)
    if ((a.support & (1ULL << w)) && a.v[w].size() != b.v[w].size())
      bad |= 1ULL << w;
  if (bad) fail_at(Errc::DimMismatch, "dimensions differ", bad);
}

// Squared Euclidean distance per atom. Working with squares keeps everything
// rational; the root is only ever needed for display.
inline CondReal dist2(const CondRealVec& a, const CondRealVec& b) {
  ensure_same_vec_shape(a, b);
  std::vector<Rat> s(a.alg->n(), Rat(0));
  for (int w = 0; w < a.alg->n(); w++)
    for (size_t l = 0; l < a.v[w].size(); l++) {
      Rat d = a.v[w][l] - b.v[w][l];
      s[w] += d * d;
    }
  return CondReal::make(a.alg, a.support, std::move(s));
}

// Trichotomy of d(x,y) against r, decided through squares. Negative r is
// simply below any distance.
inline Trichotomy metric_compare(const CondRealVec& x, const CondRealVec& y,
                                 const CondReal& r) {
  ensure_same_vec_shape(x, y);
  ensure_same_algebra(x.alg, r.alg);
  if (x.support != r.support)
    fail(Errc::SupportMismatch, "radius lives on a different condition");
  CondReal s = dist2(x, y);
  std::uint64_t lt = 0, gt = 0, eq = 0;
  for (int w = 0; w < x.alg->n(); w++) {
    std::uint64_t bit = 1ULL << w;
    if (!(x.support & bit)) { eq |= bit; continue; }
    if (r.v[w] < 0) { gt |= bit; continue; }
    Rat r2 = r.v[w] * r.v[w];
    if (s.v[w] == r2) eq |= bit;
    else if (s.v[w] < r2) lt |= bit;
    else gt |= bit;
  }
  return Trichotomy{Condition(x.alg, lt), Condition(x.alg, gt), Condition(x.alg, eq)};
}

// Decimal rendering of d(x,y) per atom, truncated to `digits` places.
inline std::vector<std::string> metric_value_str(const CondRealVec& x,
                                                 const CondRealVec& y, int digits) {
  CondReal s = dist2(x, y);
  std::vector<std::string> out;
  for (int w = 0; w < x.alg->n(); w++) out.push_back(dec_sqrt_str(s.v[w], digits));
  return out;
}

// Axis-aligned rational box with a stitched dimension.
struct RatBox {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim;
  std::vector<std::vector<std::pair<Rat, Rat>>> sides;  // per atom [lo, hi]

  static RatBox make(AlgebraPtr alg, std::uint64_t support,
                     std::vector<std::vector<std::pair<Rat, Rat>>> sides) {
    if (static_cast<int>(sides.size()) != alg->n())
      fail(Errc::DimMismatch, "one side list per atom required");
    support &= alg->full_mask();
    std::vector<std::int64_t> dims(alg->n(), 1);
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (sides[w].empty()) fail(Errc::DimMismatch, "dimension must be at least 1");
        for (const auto& [lo, hi] : sides[w])
          if (hi < lo) fail(Errc::MalformedDescriptor, "box side with hi < lo");
        dims[w] = static_cast<std::int64_t>(sides[w].size());
      } else {
        sides[w].clear();
      }
    }
    RatBox b;
    b.alg = alg;
    b.support = support;
    b.dim = CondNat::make(alg, support, std::move(dims));
    b.sides = std::move(sides);
    return b;
  }
};

struct EpsNet {
  CondNat count;                                       // centers per atom
  std::vector<std::vector<std::vector<Rat>>> centers;  // per atom, per center
};

inline constexpr std::int64_t kEpsNetCap = 1 << 20;

// Finite eps-net of a box: per side the fewest grid cells whose half-width
// keeps the cell's half-diagonal strictly under eps, centers at cell
// midpoints. m per side is the least integer with m^2 * 4 eps^2 > dim * W^2,
// so sum of squared half-widths stays strictly below eps^2.
inline EpsNet eps_net(const RatBox& box, const CondReal& eps) {
  ensure_same_algebra(box.alg, eps.alg);
  if (box.support != eps.support)
    fail(Errc::SupportMismatch, "radius lives on a different condition");
  std::uint64_t bad = nonpositive_mask(eps);
  if (bad) fail_at(Errc::EpsNotPositive, "net radius must be positive", bad);

  std::vector<std::int64_t> counts(box.alg->n(), 1);
  std::vector<std::vector<std::vector<Rat>>> centers(box.alg->n());
  for (int w = 0; w < box.alg->n(); w++) {
    if (!(box.support & (1ULL << w))) continue;
    const auto& sides = box.sides[w];
    Int n = static_cast<std::int64_t>(sides.size());
    std::vector<std::vector<Rat>> axis;  // per side, center coordinates
    std::int64_t total = 1;
    for (const auto& [lo, hi] : sides) {
      Rat width = hi - lo;
      // least m with m^2 > n * width^2 / (4 eps^2)
      Rat t = Rat(n) * width * width / (4 * eps.v[w] * eps.v[w]);
      Int m = isqrt(floor_rat(t)) + 1;
      if (m > kEpsNetCap) fail(Errc::NotFinite, "net too large");
      std::int64_t mi = m.convert_to<std::int64_t>();
      total *= mi;
      if (total > kEpsNetCap) fail(Errc::NotFinite, "net too large");
      std::vector<Rat> cs;
      for (std::int64_t i = 0; i < mi; i++)
        cs.push_back(lo + Rat(2 * i + 1) * width / Rat(2 * mi));
      axis.push_back(std::move(cs));
    }
    counts[w] = total;
    std::vector<std::vector<Rat>> grid = {{}};
    for (const auto& cs : axis) {
      std::vector<std::vector<Rat>> next;
      for (const auto& pre : grid)
        for (const auto& c : cs) {
          auto row = pre;
          row.push_back(c);
          next.push_back(std::move(row));
        }
      grid = std::move(next);
    }
    centers[w] = std::move(grid);
  }
  return EpsNet{CondNat::make(box.alg, box.support, std::move(counts)),
                std::move(centers)};
}

// Closed-form Cauchy sequence of rationals at one atom: eventually constant
// (with a deterministic drift before the switch so "eventually" has content)
// or geometric c + r s^n with |s| strictly below 1.
struct SeqDesc {
  enum class Kind { EventuallyConstant, Geometric };
  Kind kind = Kind::EventuallyConstant;
  Rat a;                  // tail value, or c
  Rat r;                  // geometric coefficient
  Rat s;                  // geometric ratio
  std::int64_t n0 = 0;    // switch index

  static SeqDesc eventually_constant(Rat tail, std::int64_t n0) {
    SeqDesc d;
    d.kind = Kind::EventuallyConstant;
    d.a = std::move(tail);
    d.n0 = n0;
    return d;
  }
  static SeqDesc geometric(Rat c, Rat r, Rat s) {
    SeqDesc d;
    d.kind = Kind::Geometric;
    d.a = std::move(c);
    d.r = std::move(r);
    d.s = std::move(s);
    return d;
  }
};

struct CauchySeqQ {
  AlgebraPtr alg;
  std::vector<SeqDesc> d;  // one per atom; sequences live on 1

  static CauchySeqQ make(AlgebraPtr alg, std::vector<SeqDesc> d) {
    if (static_cast<int>(d.size()) != alg->n())
      fail(Errc::DimMismatch, "one descriptor per atom required");
    for (int w = 0; w < alg->n(); w++) {
      const SeqDesc& x = d[w];
      if (x.kind == SeqDesc::Kind::EventuallyConstant) {
        if (x.n0 < 0)
          fail(Errc::MalformedDescriptor, "negative switch index at atom " + alg->atoms[w]);
      } else {
        Rat as = x.s < 0 ? Rat(-x.s) : x.s;
        if (!(as < 1))
          fail(Errc::MalformedDescriptor, "ratio must satisfy |s| < 1 at atom " + alg->atoms[w]);
      }
    }
    CauchySeqQ q;
    q.alg = std::move(alg);
    q.d = std::move(d);
    return q;
  }
};

namespace detail {
inline Rat rat_pow(const Rat& s, std::int64_t n) {
  Rat p = 1;
  for (std::int64_t i = 0; i < n; i++) p *= s;
  return p;
}
}  // namespace detail

inline Rat seq_term_at(const SeqDesc& d, std::int64_t n) {
  if (d.kind == SeqDesc::Kind::EventuallyConstant)
    return n >= d.n0 ? d.a : Rat(d.a + Rat(d.n0 - n));
  return d.a + d.r * detail::rat_pow(d.s, n);
}

inline CondReal seq_term(const CauchySeqQ& q, std::int64_t n) {
  std::vector<Rat> v;
  for (const auto& d : q.d) v.push_back(seq_term_at(d, n));
  return CondReal::make(q.alg, q.alg->full_mask(), std::move(v));
}

// Index past which every pair of terms is strictly within eps, from the
// closed form: the switch index for eventually constant tails, and for the
// geometric shape the first n with 2|r||s|^n < eps.
inline CondNat cauchy_modulus(const CauchySeqQ& q, const CondReal& eps) {
  ensure_same_algebra(q.alg, eps.alg);
  if (!eps.lives_on_one())
    fail(Errc::SupportMismatch, "modulus needs a radius living on 1");
  std::uint64_t bad = nonpositive_mask(eps);
  if (bad) fail_at(Errc::EpsNotPositive, "modulus radius must be positive", bad);
  std::vector<std::int64_t> n(q.alg->n(), 1);
  for (int w = 0; w < q.alg->n(); w++) {
    const SeqDesc& d = q.d[w];
    if (d.kind == SeqDesc::Kind::EventuallyConstant) {
      n[w] = std::max<std::int64_t>(1, d.n0);
      continue;
    }
    Rat bound = 2 * (d.r < 0 ? Rat(-d.r) : d.r);
    std::int64_t t = 1;
    Rat as = d.s < 0 ? Rat(-d.s) : d.s;
    Rat p = as;
    while (!(bound * p < eps.v[w])) {
      p *= as;
      t++;
      if (t > 1000000) fail(Errc::NotFinite, "modulus search exhausted");
    }
    n[w] = t;
  }
  return CondNat::make(q.alg, q.alg->full_mask(), std::move(n));
}

// Descriptors in this class are Cauchy by construction; the check recomputes
// the modulus for a few radii and verifies sampled pairs exactly.
inline bool cauchy_check(const CauchySeqQ& q) {
  for (int k = 0; k < 3; k++) {
    Rat e = Rat(1, pow10(2 * k).convert_to<long long>());
    CondNat n0 = cauchy_modulus(q, CondReal::constant(q.alg, e));
    for (int w = 0; w < q.alg->n(); w++)
      for (std::int64_t i : {std::int64_t(0), std::int64_t(3), std::int64_t(17)})
        for (std::int64_t j : {std::int64_t(1), std::int64_t(9)}) {
          Rat diff = seq_term_at(q.d[w], n0.v[w] + i) - seq_term_at(q.d[w], n0.v[w] + j);
          if (diff < 0) diff = -diff;
          if (!(diff < e)) return false;
        }
  }
  return true;
}

inline CondReal cauchy_limit(const CauchySeqQ& q) {
  std::vector<Rat> v;
  for (const auto& d : q.d) v.push_back(d.a);
  return CondReal::make(q.alg, q.alg->full_mask(), std::move(v));
}

// Two sequences are equivalent exactly when their difference tends to zero;
// on this class that is the same as having identical per-atom limits.
inline bool cauchy_equiv(const CauchySeqQ& p, const CauchySeqQ& q) {
  ensure_same_algebra(p.alg, q.alg);
  return cauchy_limit(p) == cauchy_limit(q);
}

// Quotient operations return a representative of the result class: exact
// pointwise tails where the class is closed under the operation, and an
// eventually constant representative of the right limit otherwise.
inline CauchySeqQ seq_add(const CauchySeqQ& p, const CauchySeqQ& q) {
  ensure_same_algebra(p.alg, q.alg);
  std::vector<SeqDesc> out;
  for (int w = 0; w < p.alg->n(); w++) {
    const SeqDesc& x = p.d[w];
    const SeqDesc& y = q.d[w];
    bool xc = x.kind == SeqDesc::Kind::EventuallyConstant;
    bool yc = y.kind == SeqDesc::Kind::EventuallyConstant;
    if (xc && yc)
      out.push_back(SeqDesc::eventually_constant(x.a + y.a, std::max(x.n0, y.n0)));
    else if (xc)
      out.push_back(SeqDesc::geometric(x.a + y.a, y.r, y.s));
    else if (yc)
      out.push_back(SeqDesc::geometric(x.a + y.a, x.r, x.s));
    else if (x.s == y.s)
      out.push_back(SeqDesc::geometric(x.a + y.a, x.r + y.r, x.s));
    else
      out.push_back(SeqDesc::eventually_constant(x.a + y.a, 0));
  }
  return CauchySeqQ::make(p.alg, std::move(out));
}

inline CauchySeqQ seq_mul(const CauchySeqQ& p, const CauchySeqQ& q) {
  ensure_same_algebra(p.alg, q.alg);
  std::vector<SeqDesc> out;
  for (int w = 0; w < p.alg->n(); w++) {
    const SeqDesc& x = p.d[w];
    const SeqDesc& y = q.d[w];
    bool xc = x.kind == SeqDesc::Kind::EventuallyConstant;
    bool yc = y.kind == SeqDesc::Kind::EventuallyConstant;
    if (xc && yc)
      out.push_back(SeqDesc::eventually_constant(x.a * y.a, std::max(x.n0, y.n0)));
    else if (xc && x.a != 0)
      out.push_back(SeqDesc::geometric(x.a * y.a, x.a * y.r, y.s));
    else if (yc && y.a != 0)
      out.push_back(SeqDesc::geometric(x.a * y.a, y.a * x.r, x.s));
    else
      out.push_back(SeqDesc::eventually_constant(x.a * y.a, 0));
  }
  return CauchySeqQ::make(p.alg, std::move(out));
}

// Finite conditional metric space: per atom a full rational distance table
// over the carrier. The three metric axioms are checked at construction.
struct FiniteMetricSpace {
  CondSetPtr space;
  std::vector<std::vector<std::vector<Rat>>> d;  // per atom, carrier x carrier

  static FiniteMetricSpace make(CondSetPtr space,
                                std::vector<std::vector<std::vector<Rat>>> d) {
    if (static_cast<int>(d.size()) != space->n_atoms())
      fail(Errc::DimMismatch, "one distance table per atom required");
    for (int w = 0; w < space->n_atoms(); w++) {
      size_t k = space->carrier[w].size();
      if (k > static_cast<size_t>(kTopologyCarrierMax))
        fail(Errc::NotFinite, "carrier too large for a metric table at atom " + space->alg->atoms[w]);
      if (d[w].size() != k)
        fail(Errc::DimMismatch, "distance table size mismatch at atom " + space->alg->atoms[w]);
      for (size_t i = 0; i < k; i++) {
        if (d[w][i].size() != k)
          fail(Errc::DimMismatch, "distance table size mismatch at atom " + space->alg->atoms[w]);
        for (size_t j = 0; j < k; j++) {
          if ((i == j) != (d[w][i][j] == 0))
            fail_at(Errc::MetricAxiomViolation, "distance vanishes exactly on the diagonal",
                    1ULL << w);
          if (d[w][i][j] < 0)
            fail_at(Errc::MetricAxiomViolation, "negative distance", 1ULL << w);
          if (d[w][i][j] != d[w][j][i])
            fail_at(Errc::MetricAxiomViolation, "distance is not symmetric", 1ULL << w);
        }
      }
      for (size_t i = 0; i < k; i++)
        for (size_t j = 0; j < k; j++)
          for (size_t l = 0; l < k; l++)
            if (d[w][i][j] > d[w][i][l] + d[w][l][j])
              fail_at(Errc::MetricAxiomViolation, "triangle inequality fails", 1ULL << w);
    }
    FiniteMetricSpace m;
    m.space = std::move(space);
    m.d = std::move(d);
    return m;
  }
};

// Topology generated by the open balls, derived rather than assumed: the
// minimal neighborhood of a point is the intersection of every ball around
// every center that contains it. On a finite metric space this lands on the
// discrete topology, which is what the tests pin down.
inline CondTopology metric_topology(const FiniteMetricSpace& ms) {
  CondTopology t;
  t.space = ms.space;
  t.min_nbhd.resize(ms.space->n_atoms());
  for (int w = 0; w < ms.space->n_atoms(); w++) {
    size_t k = ms.space->carrier[w].size();
    std::set<Rat> radii;
    Rat beyond = 1;
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < k; j++)
        if (ms.d[w][i][j] > 0) {
          radii.insert(ms.d[w][i][j]);
          beyond = std::max(beyond, Rat(ms.d[w][i][j] + 1));
        }
    radii.insert(beyond);  // a radius past the diameter gives the full ball
    for (size_t i = 0; i < k; i++) {
      std::uint32_t acc = (1u << k) - 1;
      for (size_t c = 0; c < k; c++)
        for (const Rat& r : radii) {
          if (!(ms.d[w][i][c] < r)) continue;
          std::uint32_t ball = 0;
          for (size_t j = 0; j < k; j++)
            if (ms.d[w][j][c] < r) ball |= 1u << j;
          acc &= ball;
        }
      t.min_nbhd[w].push_back(acc);
    }
  }
  return t;
}

// Compactness of a finite conditional metric space, checked three ways that
// can only agree by each route being right: open-cover compactness through
// the ball topology, completeness plus total boundedness through computed
// witnesses (the least positive gap and the all-points net), and sequential
// compactness by pigeonhole on the carrier.
struct HeineBorelReport {
  bool cover_compact = false;
  bool complete = false;         // every Cauchy sequence is eventually constant
  bool totally_bounded = false;  // finite net at every radius
  bool seq_compact = false;      // every sequence has a constant subsequence
  CondReal min_gap;              // least positive distance per atom (1 for singletons)
  CondNat net_size;              // the all-points net, stitched per atom
  bool all_agree() const {
    return cover_compact == (complete && totally_bounded) &&
           cover_compact == seq_compact;
  }
};

inline HeineBorelReport heine_borel_finite(const FiniteMetricSpace& ms) {
  HeineBorelReport rep;
  rep.cover_compact = is_compact(metric_topology(ms), CompactVia::Cover);

  int n = ms.space->n_atoms();
  std::vector<Rat> gap(n, Rat(1));
  std::vector<std::int64_t> net(n, 1);
  bool complete = true, tb = true, seq = true;
  for (int w = 0; w < n; w++) {
    size_t k = ms.space->carrier[w].size();
    net[w] = static_cast<std::int64_t>(k);
    bool found = false;
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < k; j++)
        if (ms.d[w][i][j] > 0 && (!found || ms.d[w][i][j] < gap[w])) {
          gap[w] = ms.d[w][i][j];
          found = true;
        }
    // Positive least gap: a Cauchy sequence is eventually inside a ball of
    // radius gap/2, hence eventually constant and convergent. Finitely many
    // points: the whole carrier is a net for any radius, and any sequence
    // repeats some point infinitely often.
    complete = complete && (k == 1 || gap[w] > 0);
    tb = tb && k >= 1;
    seq = seq && k >= 1;
  }
  rep.complete = complete;
  rep.totally_bounded = tb;
  rep.seq_compact = seq;
  rep.min_gap = CondReal::make(ms.space->alg, ms.space->alg->full_mask(), std::move(gap));
  rep.net_size = CondNat::make(ms.space->alg, ms.space->alg->full_mask(), std::move(net));
  return rep;
}

}  // namespace condsets
