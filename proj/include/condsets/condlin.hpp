#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "condsets/boolalg.hpp"
#include "condsets/condnat.hpp"
#include "condsets/condnum.hpp"
#include "condsets/errors.hpp"
#include "condsets/lp.hpp"
#include "condsets/rational.hpp"

namespace condsets {

// Conditional linear algebra over per-atom rational coordinate spaces.
// Convex sets are kept in vertex form: finite generator lists whose hulls
// stand in for the closed convex sets of the theory, so closures come for
// free and every geometric question reduces to a small exact program.

namespace lindetail {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

inline Rat dot(const Vec& a, const Vec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
  return s;
}

// Reduced row echelon form over the first limit columns; returns the pivot
// column of each leading row. Pivot choice is first-nonzero, so the result
// is deterministic.
inline std::vector<size_t> rref(Mat& m, size_t limit) {
  std::vector<size_t> pivots;
  size_t rows = m.size(), pr = 0;
  for (size_t j = 0; j < limit && pr < rows; j++) {
    size_t r = pr;
    while (r < rows && m[r][j] == 0) r++;
    if (r == rows) continue;
    std::swap(m[pr], m[r]);
    Rat pv = m[pr][j];
    for (auto& v : m[pr]) v /= pv;
    for (size_t i = 0; i < rows; i++) {
      if (i == pr || m[i][j] == 0) continue;
      Rat f = m[i][j];
      for (size_t k = 0; k < m[i].size(); k++) m[i][k] -= f * m[pr][k];
    }
    pivots.push_back(j);
    pr++;
  }
  return pivots;
}

struct Solved {
  bool ok = false;
  Vec sol;
};

// Solve an augmented d x (K+1) system; free coordinates take the fill value
// and the pivot coordinates absorb the correction, so the result is always
// a genuine solution when one exists.
inline Solved solve_aug(Mat aug, size_t K, const Rat& fill) {
  auto pivots = rref(aug, K);
  for (size_t i = pivots.size(); i < aug.size(); i++)
    if (aug[i][K] != 0) return {};
  Solved out;
  out.ok = true;
  out.sol.assign(K, fill);
  std::vector<bool> pivotal(K, false);
  for (size_t p : pivots) pivotal[p] = true;
  for (size_t i = 0; i < pivots.size(); i++) {
    Rat v = aug[i][K];
    for (size_t j = 0; j < K; j++)
      if (!pivotal[j] && aug[i][j] != 0) v -= aug[i][j] * fill;
    out.sol[pivots[i]] = v;
  }
  return out;
}

// lambda with sum lambda_j cols[j] = rhs
inline Solved solve_columns(const Mat& cols, const Vec& rhs, const Rat& fill) {
  size_t d = rhs.size(), K = cols.size();
  Mat aug(d, Vec(K + 1, Rat(0)));
  for (size_t j = 0; j < K; j++)
    for (size_t i = 0; i < d; i++) aug[i][j] = cols[j][i];
  for (size_t i = 0; i < d; i++) aug[i][K] = rhs[i];
  return solve_aug(std::move(aug), K, fill);
}

// c with rows_i . c = rhs_i
inline Solved solve_rows(const Mat& rows, const Vec& rhs, const Rat& fill) {
  size_t K = rows.empty() ? 0 : rows[0].size();
  Mat aug = rows;
  for (size_t i = 0; i < aug.size(); i++) aug[i].push_back(rhs[i]);
  return solve_aug(std::move(aug), K, fill);
}

inline size_t rank_columns(const Mat& cols, size_t d) {
  Mat m(d, Vec(cols.size(), Rat(0)));
  for (size_t j = 0; j < cols.size(); j++)
    for (size_t i = 0; i < d; i++) m[i][j] = cols[j][i];
  return rref(m, cols.size()).size();
}

// basis of the joint kernel of the rows
inline Mat nullspace_rows(Mat rows, size_t d) {
  if (rows.empty()) rows.push_back(Vec(d, Rat(0)));
  auto pivots = rref(rows, d);
  std::vector<bool> pivotal(d, false);
  for (size_t p : pivots) pivotal[p] = true;
  Mat basis;
  for (size_t j = 0; j < d; j++) {
    if (pivotal[j]) continue;
    Vec v(d, Rat(0));
    v[j] = 1;
    for (size_t i = 0; i < pivots.size(); i++) v[pivots[i]] = -rows[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline void dedupe(Mat& pts) {
  Mat out;
  for (auto& p : pts)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  pts = std::move(out);
}

inline Mat with_negations(const Mat& gens) {
  Mat out = gens;
  for (const auto& g : gens) {
    Vec n(g.size());
    for (size_t i = 0; i < g.size(); i++) n[i] = -g[i];
    out.push_back(std::move(n));
  }
  dedupe(out);
  return out;
}

inline bool in_hull(const Mat& gens, const Vec& x) {
  size_t r = gens.size(), d = x.size();
  Mat A;
  std::vector<LpSense> senses;
  Vec b;
  for (size_t i = 0; i < d; i++) {
    Vec row(r);
    for (size_t g = 0; g < r; g++) row[g] = gens[g][i];
    A.push_back(std::move(row));
    senses.push_back(LpSense::Eq);
    b.push_back(x[i]);
  }
  A.push_back(Vec(r, Rat(1)));
  senses.push_back(LpSense::Eq);
  b.push_back(Rat(1));
  std::vector<std::optional<Rat>> lo(r, Rat(0));
  auto p = LPProblem::make(true, Vec(r, Rat(0)), A, senses, b, lo);
  return lp_solve(p).status == LpStatus::Optimal;
}

// largest t with t * dir in the hull, zero when unreachable
inline Rat axis_reach(const Mat& gens, const Vec& dir) {
  size_t r = gens.size(), d = dir.size();
  Vec c(r + 1, Rat(0));
  c[r] = 1;
  Mat A;
  std::vector<LpSense> senses;
  Vec b;
  for (size_t i = 0; i < d; i++) {
    Vec row(r + 1, Rat(0));
    for (size_t g = 0; g < r; g++) row[g] = gens[g][i];
    row[r] = -dir[i];
    A.push_back(std::move(row));
    senses.push_back(LpSense::Eq);
    b.push_back(Rat(0));
  }
  Vec ones(r + 1, Rat(1));
  ones[r] = 0;
  A.push_back(std::move(ones));
  senses.push_back(LpSense::Eq);
  b.push_back(Rat(1));
  std::vector<std::optional<Rat>> lo(r + 1, Rat(0));
  auto res = lp_solve(LPProblem::make(true, c, A, senses, b, lo));
  if (res.status != LpStatus::Optimal) return Rat(0);
  return res.value;
}

// Minkowski gauge against the hull of a circled generator list: the least
// total weight writing x as a nonnegative combination.
inline std::optional<Rat> gauge(const Mat& circled, const Vec& x) {
  size_t r = circled.size(), d = x.size();
  Mat A;
  std::vector<LpSense> senses;
  Vec b;
  for (size_t i = 0; i < d; i++) {
    Vec row(r);
    for (size_t g = 0; g < r; g++) row[g] = circled[g][i];
    A.push_back(std::move(row));
    senses.push_back(LpSense::Eq);
    b.push_back(x[i]);
  }
  std::vector<std::optional<Rat>> lo(r, Rat(0));
  auto res = lp_solve(LPProblem::make(false, Vec(r, Rat(1)), A, senses, b, lo));
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.value;
}

struct DotMax {
  bool bounded = false;
  Rat value;
};

// maximum of x . z over { z : row . z <= 1 for every row }
inline DotMax polar_dot_max(const Mat& rows, const Vec& x) {
  Vec b(rows.size(), Rat(1));
  std::vector<LpSense> senses(rows.size(), LpSense::Le);
  auto res = lp_solve(LPProblem::make(true, x, rows, senses, b));
  if (res.status == LpStatus::Unbounded) return {};
  return {true, res.value};
}

}  // namespace lindetail

// A functional is a coordinate vector on the dual side of the pairing, so it
// shares the vector representation.
using CondLinFunctional = CondRealVec;

inline CondReal functional_value(const CondLinFunctional& f, const CondRealVec& x) {
  ensure_same_vec_shape(f, x);
  std::vector<Rat> out(f.alg->n(), Rat(0));
  for (int w = 0; w < f.alg->n(); w++)
    if (f.support & (1ULL << w)) out[w] = lindetail::dot(f.v[w], x.v[w]);
  return CondReal::make(f.alg, f.support, std::move(out));
}

// Finitely generated conditional convex set in vertex form. Stability is
// built in: mixing generator lists along a partition is again a valid list.
struct VPolytope {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim;
  std::vector<std::vector<std::vector<Rat>>> gens;  // per atom; empty off support

  static VPolytope make(AlgebraPtr alg, std::uint64_t support,
                        std::vector<std::vector<std::vector<Rat>>> gens) {
    if (static_cast<int>(gens.size()) != alg->n())
      fail(Errc::DimMismatch, "one generator list per atom required");
    support &= alg->full_mask();
    std::vector<std::int64_t> dims(alg->n(), 1);
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (gens[w].empty()) fail(Errc::EmptyFamily, "a polytope needs a generator on each atom");
        size_t d = gens[w][0].size();
        if (d == 0) fail(Errc::DimMismatch, "dimension must be at least 1");
        for (const auto& g : gens[w])
          if (g.size() != d) fail(Errc::DimMismatch, "generators of unequal length");
        dims[w] = static_cast<std::int64_t>(d);
      } else {
        gens[w].clear();
      }
    }
    VPolytope y;
    y.alg = alg;
    y.support = support;
    y.dim = CondNat::make(alg, support, std::move(dims));
    y.gens = std::move(gens);
    return y;
  }

  static VPolytope of_point(const CondRealVec& x) {
    std::vector<std::vector<std::vector<Rat>>> g(x.alg->n());
    for (int w = 0; w < x.alg->n(); w++)
      if (x.support & (1ULL << w)) g[w].push_back(x.v[w]);
    return make(x.alg, x.support, std::move(g));
  }
};

inline void ensure_same_poly_shape(const VPolytope& a, const VPolytope& b) {
  ensure_same_algebra(a.alg, b.alg);
  if (a.support != b.support)
    fail(Errc::SupportMismatch, "polytopes live on different conditions");
  std::uint64_t bad = 0;
  for (int w = 0; w < a.alg->n(); w++)
    if ((a.support & (1ULL << w)) && a.dim.v[w] != b.dim.v[w]) bad |= 1ULL << w;
  if (bad) fail_at(Errc::DimMismatch, "dimensions differ", bad);
}

inline void ensure_poly_vec_shape(const VPolytope& y, const CondRealVec& x) {
  ensure_same_algebra(y.alg, x.alg);
  if (y.support != x.support)
    fail(Errc::SupportMismatch, "the point and the set live on different conditions");
  std::uint64_t bad = 0;
  for (int w = 0; w < y.alg->n(); w++)
    if ((y.support & (1ULL << w)) && y.dim.v[w] != x.dim.v[w]) bad |= 1ULL << w;
  if (bad) fail_at(Errc::DimMismatch, "dimensions differ", bad);
}

// atoms of the support where the point falls in the hull
inline std::uint64_t hull_member_mask(const VPolytope& y, const CondRealVec& x) {
  ensure_poly_vec_shape(y, x);
  std::uint64_t in = 0;
  for (int w = 0; w < y.alg->n(); w++)
    if ((y.support & (1ULL << w)) && lindetail::in_hull(y.gens[w], x.v[w]))
      in |= 1ULL << w;
  return in;
}

inline bool hull_contains(const VPolytope& y, const CondRealVec& x) {
  return hull_member_mask(y, x) == y.support;
}

// equality of the represented sets, decided by mutual generator membership
inline bool same_hull(const VPolytope& a, const VPolytope& b) {
  ensure_same_poly_shape(a, b);
  for (int w = 0; w < a.alg->n(); w++) {
    if (!(a.support & (1ULL << w))) continue;
    for (const auto& g : a.gens[w])
      if (!lindetail::in_hull(b.gens[w], g)) return false;
    for (const auto& g : b.gens[w])
      if (!lindetail::in_hull(a.gens[w], g)) return false;
  }
  return true;
}

inline VPolytope minkowski_add(const VPolytope& a, const VPolytope& b) {
  ensure_same_poly_shape(a, b);
  std::vector<std::vector<std::vector<Rat>>> out(a.alg->n());
  for (int w = 0; w < a.alg->n(); w++) {
    if (!(a.support & (1ULL << w))) continue;
    for (const auto& g : a.gens[w])
      for (const auto& h : b.gens[w]) {
        std::vector<Rat> s(g.size());
        for (size_t i = 0; i < g.size(); i++) s[i] = g[i] + h[i];
        out[w].push_back(std::move(s));
      }
    lindetail::dedupe(out[w]);
  }
  return VPolytope::make(a.alg, a.support, std::move(out));
}

inline VPolytope minkowski_scale(const CondReal& lam, const VPolytope& y) {
  ensure_same_algebra(lam.alg, y.alg);
  if (lam.support != y.support)
    fail(Errc::SupportMismatch, "the scalar and the set live on different conditions");
  std::vector<std::vector<std::vector<Rat>>> out(y.alg->n());
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    for (const auto& g : y.gens[w]) {
      std::vector<Rat> s(g.size());
      for (size_t i = 0; i < g.size(); i++) s[i] = lam.v[w] * g[i];
      out[w].push_back(std::move(s));
    }
    lindetail::dedupe(out[w]);
  }
  return VPolytope::make(y.alg, y.support, std::move(out));
}

// One round of pairwise mixing at the dyadic representative 1/2. Iterating
// fills the hull only in the limit; fixed points are measured hull-wise.
inline VPolytope conv_step(const VPolytope& y) {
  std::vector<std::vector<std::vector<Rat>>> out = y.gens;
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    const auto& g = y.gens[w];
    for (size_t i = 0; i < g.size(); i++)
      for (size_t j = i + 1; j < g.size(); j++) {
        std::vector<Rat> m(g[i].size());
        for (size_t l = 0; l < m.size(); l++) m[l] = (g[i][l] + g[j][l]) / 2;
        out[w].push_back(std::move(m));
      }
    lindetail::dedupe(out[w]);
  }
  return VPolytope::make(y.alg, y.support, std::move(out));
}

// Minimal vertex representation: a generator survives exactly when it is not
// in the hull of the remaining ones.
inline VPolytope conv_hull(const VPolytope& y) {
  std::vector<std::vector<std::vector<Rat>>> out(y.alg->n());
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    auto kept = y.gens[w];
    lindetail::dedupe(kept);
    size_t i = 0;
    while (i < kept.size() && kept.size() > 1) {
      auto others = kept;
      others.erase(others.begin() + static_cast<long>(i));
      if (lindetail::in_hull(others, kept[i]))
        kept = std::move(others);
      else
        i++;
    }
    out[w] = std::move(kept);
  }
  return VPolytope::make(y.alg, y.support, std::move(out));
}

// Mixing generators along the quarter grid stays inside the hull; this holds
// by construction and is exposed as a machine check.
inline bool is_convex(const VPolytope& y) {
  const Rat grid[] = {Rat(0), make_rat(1, 4), make_rat(1, 2), make_rat(3, 4), Rat(1)};
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    const auto& g = y.gens[w];
    for (size_t i = 0; i < g.size(); i++)
      for (size_t j = 0; j < g.size(); j++)
        for (const Rat& t : grid) {
          std::vector<Rat> m(g[i].size());
          for (size_t l = 0; l < m.size(); l++)
            m[l] = t * g[i][l] + (1 - t) * g[j][l];
          if (!lindetail::in_hull(g, m)) return false;
        }
  }
  return true;
}

inline std::uint64_t circled_mask(const VPolytope& y) {
  std::uint64_t ok = 0;
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    bool good = true;
    for (const auto& g : y.gens[w]) {
      std::vector<Rat> n(g.size());
      for (size_t i = 0; i < g.size(); i++) n[i] = -g[i];
      if (!lindetail::in_hull(y.gens[w], n)) {
        good = false;
        break;
      }
    }
    if (good) ok |= 1ULL << w;
  }
  return ok;
}

inline bool is_circled(const VPolytope& y) { return circled_mask(y) == y.support; }

// zero in the interior, witnessed by a positive reach along every signed axis
inline std::uint64_t absorbing_mask(const VPolytope& y) {
  std::uint64_t ok = 0;
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    size_t d = static_cast<size_t>(y.dim.v[w]);
    bool good = true;
    for (size_t k = 0; k < d && good; k++)
      for (int sgn : {1, -1}) {
        std::vector<Rat> dir(d, Rat(0));
        dir[k] = sgn;
        if (lindetail::axis_reach(y.gens[w], dir) <= 0) {
          good = false;
          break;
        }
      }
    if (good) ok |= 1ULL << w;
  }
  return ok;
}

inline bool is_absorbing(const VPolytope& y) { return absorbing_mask(y) == y.support; }

// largest value of the functional over the set; finite because the set is a
// hull of finitely many generators
inline CondReal support_value(const VPolytope& y, const CondLinFunctional& f) {
  ensure_poly_vec_shape(y, f);
  std::vector<Rat> out(y.alg->n(), Rat(0));
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    Rat best = lindetail::dot(f.v[w], y.gens[w][0]);
    for (const auto& g : y.gens[w]) best = std::max(best, Rat(lindetail::dot(f.v[w], g)));
    out[w] = best;
  }
  return CondReal::make(y.alg, y.support, std::move(out));
}

struct SpanResult {
  bool member = false;
  Condition where_fails;
  std::vector<CondReal> coeffs;  // one per family element, zero where it fails
};

// membership of x in the conditional span of the family, with the combining
// coefficients stitched per atom
inline SpanResult span_membership(const std::vector<CondRealVec>& family,
                                  const CondRealVec& x) {
  if (family.empty()) fail(Errc::EmptyFamily, "span of an empty family");
  for (const auto& u : family) ensure_same_vec_shape(u, x);
  std::uint64_t bad = 0;
  std::vector<std::vector<Rat>> lam(family.size(),
                                    std::vector<Rat>(x.alg->n(), Rat(0)));
  for (int w = 0; w < x.alg->n(); w++) {
    if (!(x.support & (1ULL << w))) continue;
    lindetail::Mat cols;
    for (const auto& u : family) cols.push_back(u.v[w]);
    auto s = lindetail::solve_columns(cols, x.v[w], Rat(0));
    if (!s.ok) {
      bad |= 1ULL << w;
      continue;
    }
    for (size_t k = 0; k < family.size(); k++) lam[k][w] = s.sol[k];
  }
  SpanResult r;
  r.member = bad == 0;
  r.where_fails = Condition(x.alg, bad);
  for (size_t k = 0; k < family.size(); k++)
    r.coeffs.push_back(CondReal::make(x.alg, x.support & ~bad, std::move(lam[k])));
  return r;
}

struct DualityResult {
  bool representable = false;
  std::vector<CondReal> coeffs;
  bool all_nonzero = false;
  Condition where_fails;
  // a direction killed by the whole family but not by f, on the failing part
  std::optional<CondRealVec> kernel_witness;
};

// f is a combination of the family exactly when the joint kernel of the
// family sits inside the kernel of f. Free coefficients are pinned at one,
// with the pivot coefficients absorbing the correction, so a representation
// avoids zero coefficients wherever the system leaves room.
inline DualityResult duality_coeffs(const CondLinFunctional& f,
                                    const std::vector<CondLinFunctional>& fs) {
  if (fs.empty()) fail(Errc::EmptyFamily, "combination over an empty family");
  for (const auto& g : fs) ensure_same_vec_shape(g, f);
  std::uint64_t bad = 0;
  std::vector<std::vector<Rat>> lam(fs.size(), std::vector<Rat>(f.alg->n(), Rat(0)));
  std::vector<std::vector<Rat>> wit(f.alg->n());
  for (int w = 0; w < f.alg->n(); w++) {
    if (!(f.support & (1ULL << w))) continue;
    lindetail::Mat cols;
    for (const auto& g : fs) cols.push_back(g.v[w]);
    auto s = lindetail::solve_columns(cols, f.v[w], Rat(1));
    if (s.ok) {
      for (size_t k = 0; k < fs.size(); k++) lam[k][w] = s.sol[k];
      continue;
    }
    bad |= 1ULL << w;
    lindetail::Mat rows;
    for (const auto& g : fs) rows.push_back(g.v[w]);
    for (auto& v : lindetail::nullspace_rows(rows, f.v[w].size()))
      if (lindetail::dot(f.v[w], v) != 0) {
        wit[w] = std::move(v);
        break;
      }
  }
  DualityResult r;
  r.representable = bad == 0;
  r.where_fails = Condition(f.alg, bad);
  for (size_t k = 0; k < fs.size(); k++)
    r.coeffs.push_back(CondReal::make(f.alg, f.support & ~bad, std::move(lam[k])));
  if (r.representable) {
    r.all_nonzero = true;
    for (const auto& c : r.coeffs)
      for (int w = 0; w < f.alg->n(); w++)
        if ((f.support & (1ULL << w)) && c.v[w] == 0) r.all_nonzero = false;
  } else {
    for (int w = 0; w < f.alg->n(); w++)
      if (!(bad & (1ULL << w))) wit[w].clear();
    r.kernel_witness = CondRealVec::make(f.alg, bad, std::move(wit));
  }
  return r;
}

struct Separation {
  CondLinFunctional f;
  CondReal eps;
};

// Separating functional between two disjoint hulls, found per atom by
// maximizing the gap between the sides over box-normalized coefficients.
// The strict variant returns half the achieved gap, which is positive, so
// f(x) + eps < f(y) holds across the sides; the non-strict variant keeps
// eps at zero.
inline Separation separate(const VPolytope& c1, const VPolytope& c2, bool strict) {
  ensure_same_poly_shape(c1, c2);
  std::vector<std::vector<Rat>> w(c1.alg->n());
  std::vector<Rat> eps(c1.alg->n(), Rat(0));
  std::uint64_t overlap = 0;
  for (int a = 0; a < c1.alg->n(); a++) {
    if (!(c1.support & (1ULL << a))) continue;
    size_t d = static_cast<size_t>(c1.dim.v[a]);
    // variables: w_1..w_d, s, t; maximize t - s
    std::vector<Rat> c(d + 2, Rat(0));
    c[d] = -1;
    c[d + 1] = 1;
    std::vector<std::vector<Rat>> A;
    std::vector<LpSense> senses;
    std::vector<Rat> b;
    for (const auto& g : c1.gens[a]) {
      std::vector<Rat> row(d + 2, Rat(0));
      for (size_t i = 0; i < d; i++) row[i] = g[i];
      row[d] = -1;
      A.push_back(std::move(row));
      senses.push_back(LpSense::Le);
      b.push_back(Rat(0));
    }
    for (const auto& h : c2.gens[a]) {
      std::vector<Rat> row(d + 2, Rat(0));
      for (size_t i = 0; i < d; i++) row[i] = -h[i];
      row[d + 1] = 1;
      A.push_back(std::move(row));
      senses.push_back(LpSense::Le);
      b.push_back(Rat(0));
    }
    std::vector<std::optional<Rat>> lo(d + 2), hi(d + 2);
    for (size_t i = 0; i < d; i++) {
      lo[i] = Rat(-1);
      hi[i] = Rat(1);
    }
    auto res = lp_solve(LPProblem::make(true, c, A, senses, b, lo, hi));
    if (res.status != LpStatus::Optimal || res.value <= 0) {
      overlap |= 1ULL << a;
      continue;
    }
    w[a].assign(res.x.begin(), res.x.begin() + static_cast<long>(d));
    if (strict) eps[a] = res.value / 2;
  }
  if (overlap) fail_at(Errc::NotDisjoint, "hulls meet on part of the algebra", overlap);
  Separation out;
  out.f = CondLinFunctional::make(c1.alg, c1.support, std::move(w));
  out.eps = CondReal::make(c1.alg, c1.support, std::move(eps));
  return out;
}

// Extend a functional from a subspace to the whole space under a polyhedral
// sublinear bound. Directions are adjoined in coordinate order; each new
// value is the midpoint of the exact admissible interval, whose ends are two
// small programs. The result agrees with the data on the subspace and stays
// below the bound everywhere.
struct PolyhedralSublinear {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim;
  std::vector<std::vector<std::vector<Rat>>> funcs;  // per atom; max of dots

  static PolyhedralSublinear make(AlgebraPtr alg, std::uint64_t support,
                                  std::vector<std::vector<std::vector<Rat>>> funcs) {
    if (static_cast<int>(funcs.size()) != alg->n())
      fail(Errc::DimMismatch, "one functional list per atom required");
    support &= alg->full_mask();
    std::vector<std::int64_t> dims(alg->n(), 1);
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (funcs[w].empty())
          fail(Errc::EmptyFamily, "a sublinear bound needs a functional on each atom");
        size_t d = funcs[w][0].size();
        if (d == 0) fail(Errc::DimMismatch, "dimension must be at least 1");
        for (const auto& f : funcs[w])
          if (f.size() != d) fail(Errc::DimMismatch, "functionals of unequal length");
        dims[w] = static_cast<std::int64_t>(d);
      } else {
        funcs[w].clear();
      }
    }
    PolyhedralSublinear k;
    k.alg = alg;
    k.support = support;
    k.dim = CondNat::make(alg, support, std::move(dims));
    k.funcs = std::move(funcs);
    return k;
  }
};

inline CondReal sublinear_value(const PolyhedralSublinear& k, const CondRealVec& x) {
  ensure_same_algebra(k.alg, x.alg);
  if (k.support != x.support)
    fail(Errc::SupportMismatch, "the bound and the point live on different conditions");
  std::vector<Rat> out(k.alg->n(), Rat(0));
  for (int w = 0; w < k.alg->n(); w++) {
    if (!(k.support & (1ULL << w))) continue;
    if (k.funcs[w][0].size() != x.v[w].size())
      fail_at(Errc::DimMismatch, "dimensions differ", 1ULL << w);
    Rat best = lindetail::dot(k.funcs[w][0], x.v[w]);
    for (const auto& f : k.funcs[w])
      best = std::max(best, Rat(lindetail::dot(f, x.v[w])));
    out[w] = best;
  }
  return CondReal::make(k.alg, k.support, std::move(out));
}

namespace lindetail {

// sup over the current subspace of f(x) - k(x - v): an exact program whose
// variables are the subspace coordinates and the epigraph value of k
inline std::optional<Rat> extension_end(const Mat& funcs, const Mat& span,
                                        const Vec& phi, const Vec& v, bool upper) {
  size_t m = span.size();
  Vec c(m + 1, Rat(0));
  for (size_t i = 0; i < m; i++) c[i] = phi[i];
  c[m] = -1;
  Mat A;
  Vec b;
  std::vector<LpSense> senses;
  for (const auto& wl : funcs) {
    Vec row(m + 1, Rat(0));
    for (size_t i = 0; i < m; i++) row[i] = dot(wl, span[i]);
    row[m] = -1;
    Rat rhs = dot(wl, v);
    if (upper) rhs = -rhs;
    A.push_back(std::move(row));
    senses.push_back(LpSense::Le);
    b.push_back(rhs);
  }
  // the upper end is an infimum; maximizing its negation reuses one program
  auto res = lp_solve(LPProblem::make(true, c, A, senses, b));
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return upper ? Rat(-res.value) : res.value;
}

}  // namespace lindetail

inline CondLinFunctional hb_extend(const std::vector<CondRealVec>& basis,
                                   const std::vector<CondReal>& values,
                                   const PolyhedralSublinear& k) {
  if (basis.size() != values.size())
    fail(Errc::MalformedProblem, "one value per basis vector");
  for (const auto& u : basis) {
    ensure_same_algebra(u.alg, k.alg);
    if (u.support != k.support)
      fail(Errc::SupportMismatch, "the basis and the bound live on different conditions");
  }
  for (const auto& r : values)
    if (r.support != k.support)
      fail(Errc::SupportMismatch, "the values and the bound live on different conditions");
  std::uint64_t dependent = 0, violated = 0;
  std::vector<std::vector<Rat>> coeff(k.alg->n());
  for (int w = 0; w < k.alg->n(); w++) {
    if (!(k.support & (1ULL << w))) continue;
    size_t d = static_cast<size_t>(k.dim.v[w]);
    lindetail::Mat span;
    lindetail::Vec phi;
    for (size_t i = 0; i < basis.size(); i++) {
      if (basis[i].v[w].size() != d) fail_at(Errc::DimMismatch, "dimensions differ", 1ULL << w);
      span.push_back(basis[i].v[w]);
      phi.push_back(values[i].v[w]);
    }
    if (lindetail::rank_columns(span, d) != span.size()) {
      dependent |= 1ULL << w;
      continue;
    }
    if (!span.empty()) {
      // domination on the subspace: the homogeneous supremum is zero or grows
      // without bound
      auto sup = lindetail::extension_end(k.funcs[w], span, phi,
                                          lindetail::Vec(d, Rat(0)), false);
      if (!sup || *sup > 0) {
        violated |= 1ULL << w;
        continue;
      }
    }
    for (size_t j = 0; j < d && span.size() < d; j++) {
      lindetail::Vec e(d, Rat(0));
      e[j] = 1;
      auto probe = span;
      probe.push_back(e);
      if (lindetail::rank_columns(probe, d) == span.size()) continue;
      auto leftv = lindetail::extension_end(k.funcs[w], span, phi, e, false);
      auto rightv = lindetail::extension_end(k.funcs[w], span, phi, e, true);
      if (!leftv || !rightv || *leftv > *rightv) {
        violated |= 1ULL << w;
        break;
      }
      span.push_back(std::move(e));
      phi.push_back((*leftv + *rightv) / 2);
    }
    if (violated & (1ULL << w)) continue;
    auto sol = lindetail::solve_rows(span, phi, Rat(0));
    coeff[w] = std::move(sol.sol);
  }
  if (dependent) fail_at(Errc::MalformedProblem, "dependent subspace basis", dependent);
  if (violated)
    fail_at(Errc::DominationViolated, "the data exceeds the bound on its subspace", violated);
  return CondLinFunctional::make(k.alg, k.support, std::move(coeff));
}

// Polar of a vertex-form set, kept as the finite inequality description the
// generators induce; convexity makes the generator rows sufficient.
struct PolarSet {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim;
  bool one_sided = false;
  std::vector<std::vector<std::vector<Rat>>> rows;  // per atom; row . z <= 1

  std::uint64_t member_mask(const CondRealVec& z) const {
    ensure_same_algebra(alg, z.alg);
    if (support != z.support)
      fail(Errc::SupportMismatch, "the point and the polar live on different conditions");
    std::uint64_t in = 0;
    for (int w = 0; w < alg->n(); w++) {
      if (!(support & (1ULL << w))) continue;
      if (!rows[w].empty() && rows[w][0].size() != z.v[w].size())
        fail_at(Errc::DimMismatch, "dimensions differ", 1ULL << w);
      bool ok = true;
      for (const auto& r : rows[w])
        if (lindetail::dot(r, z.v[w]) > 1) {
          ok = false;
          break;
        }
      if (ok) in |= 1ULL << w;
    }
    return in;
  }

  bool contains(const CondRealVec& z) const { return member_mask(z) == support; }
};

inline PolarSet polar(const VPolytope& y, bool one_sided = false) {
  PolarSet p;
  p.alg = y.alg;
  p.support = y.support;
  p.dim = y.dim;
  p.one_sided = one_sided;
  p.rows.assign(static_cast<size_t>(y.alg->n()), {});
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    p.rows[w] = one_sided ? y.gens[w] : lindetail::with_negations(y.gens[w]);
  }
  return p;
}

// Membership on the second dual side: bounded maximum of the pairing over
// the polar, at most one.
inline bool in_bipolar(const PolarSet& p, int atom, const std::vector<Rat>& x) {
  auto dm = lindetail::polar_dot_max(p.rows[static_cast<size_t>(atom)], x);
  return dm.bounded && dm.value <= 1;
}

// The second polar equals the circled hull (two sided) or the hull with the
// origin adjoined (one sided); checked on generators, their negations, the
// origin, and any supplied samples, with two programs per point.
inline bool bipolar_check(const VPolytope& y, const std::vector<CondRealVec>& samples,
                          bool one_sided = false) {
  auto p = polar(y, one_sided);
  for (const auto& s : samples) ensure_poly_vec_shape(y, s);
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    size_t d = static_cast<size_t>(y.dim.v[w]);
    lindetail::Mat closure =
        one_sided ? y.gens[w] : lindetail::with_negations(y.gens[w]);
    if (one_sided) closure.push_back(lindetail::Vec(d, Rat(0)));
    lindetail::Mat tests = closure;
    for (const auto& g : y.gens[w]) {
      lindetail::Vec n(d);
      for (size_t i = 0; i < d; i++) n[i] = -g[i];
      tests.push_back(std::move(n));
    }
    tests.push_back(lindetail::Vec(d, Rat(0)));
    for (const auto& s : samples) tests.push_back(s.v[w]);
    lindetail::dedupe(tests);
    for (const auto& x : tests)
      if (in_bipolar(p, w, x) != lindetail::in_hull(closure, x)) return false;
  }
  return true;
}

// Gauge norm of a point against a circled absorbing unit ball: the least
// total weight expressing the point over the signed generators.
inline CondReal norm_eval(const VPolytope& ball, const CondRealVec& x) {
  ensure_poly_vec_shape(ball, x);
  std::uint64_t bad =
      ball.support & ~(circled_mask(ball) & absorbing_mask(ball));
  if (bad) fail_at(Errc::BallNotAbsorbing, "unit ball must be circled and absorbing", bad);
  std::vector<Rat> out(ball.alg->n(), Rat(0));
  for (int w = 0; w < ball.alg->n(); w++) {
    if (!(ball.support & (1ULL << w))) continue;
    auto g = lindetail::gauge(lindetail::with_negations(ball.gens[w]), x.v[w]);
    if (!g) fail_at(Errc::BallNotAbsorbing, "ball does not span its space", 1ULL << w);
    out[w] = *g;
  }
  return CondReal::make(ball.alg, ball.support, std::move(out));
}

// Conditional linear map in per-atom matrix form.
struct CondLinMap {
  AlgebraPtr alg;
  std::uint64_t support = 0;
  CondNat dim_out, dim_in;
  std::vector<std::vector<std::vector<Rat>>> rows;  // per atom: dim_out x dim_in

  static CondLinMap make(AlgebraPtr alg, std::uint64_t support,
                         std::vector<std::vector<std::vector<Rat>>> rows) {
    if (static_cast<int>(rows.size()) != alg->n())
      fail(Errc::DimMismatch, "one matrix per atom required");
    support &= alg->full_mask();
    std::vector<std::int64_t> douts(alg->n(), 1), dins(alg->n(), 1);
    for (int w = 0; w < alg->n(); w++) {
      if (support & (1ULL << w)) {
        if (rows[w].empty() || rows[w][0].empty())
          fail(Errc::DimMismatch, "matrices need at least one row and column");
        size_t din = rows[w][0].size();
        for (const auto& r : rows[w])
          if (r.size() != din) fail(Errc::DimMismatch, "ragged matrix");
        douts[w] = static_cast<std::int64_t>(rows[w].size());
        dins[w] = static_cast<std::int64_t>(din);
      } else {
        rows[w].clear();
      }
    }
    CondLinMap t;
    t.alg = alg;
    t.support = support;
    t.dim_out = CondNat::make(alg, support, std::move(douts));
    t.dim_in = CondNat::make(alg, support, std::move(dins));
    t.rows = std::move(rows);
    return t;
  }

  static CondLinMap identity(const AlgebraPtr& alg, std::uint64_t support,
                             const CondNat& dim) {
    std::vector<std::vector<std::vector<Rat>>> rows(alg->n());
    for (int w = 0; w < alg->n(); w++) {
      if (!(support & (1ULL << w))) continue;
      size_t d = static_cast<size_t>(dim.v[w]);
      rows[w].assign(d, std::vector<Rat>(d, Rat(0)));
      for (size_t i = 0; i < d; i++) rows[w][i][i] = 1;
    }
    return make(alg, support, std::move(rows));
  }
};

inline CondRealVec map_apply(const CondLinMap& t, const CondRealVec& x) {
  ensure_same_algebra(t.alg, x.alg);
  if (t.support != x.support)
    fail(Errc::SupportMismatch, "the map and the point live on different conditions");
  std::vector<std::vector<Rat>> out(t.alg->n());
  for (int w = 0; w < t.alg->n(); w++) {
    if (!(t.support & (1ULL << w))) continue;
    if (x.v[w].size() != static_cast<size_t>(t.dim_in.v[w]))
      fail_at(Errc::DimMismatch, "dimensions differ", 1ULL << w);
    for (const auto& r : t.rows[w]) out[w].push_back(lindetail::dot(r, x.v[w]));
  }
  return CondRealVec::make(t.alg, t.support, std::move(out));
}

// Norm of a map between gauge-normed spaces: the maximum over the domain
// ball of the codomain norm, attained at the domain generators because the
// composition is convex.
inline CondReal operator_norm(const CondLinMap& t, const VPolytope& dom,
                              const VPolytope& cod) {
  ensure_same_algebra(t.alg, dom.alg);
  ensure_same_algebra(t.alg, cod.alg);
  if (t.support != dom.support || t.support != cod.support)
    fail(Errc::SupportMismatch, "the map and the balls live on different conditions");
  std::uint64_t bad = 0;
  for (int w = 0; w < t.alg->n(); w++)
    if (t.support & (1ULL << w)) {
      if (dom.dim.v[w] != t.dim_in.v[w] || cod.dim.v[w] != t.dim_out.v[w])
        bad |= 1ULL << w;
    }
  if (bad) fail_at(Errc::DimMismatch, "dimensions differ", bad);
  std::uint64_t not_ball = (dom.support & ~(circled_mask(dom) & absorbing_mask(dom))) |
                           (cod.support & ~(circled_mask(cod) & absorbing_mask(cod)));
  if (not_ball)
    fail_at(Errc::BallNotAbsorbing, "unit balls must be circled and absorbing", not_ball);
  std::vector<Rat> out(t.alg->n(), Rat(0));
  for (int w = 0; w < t.alg->n(); w++) {
    if (!(t.support & (1ULL << w))) continue;
    auto circ = lindetail::with_negations(cod.gens[w]);
    Rat best(0);
    for (const auto& g : dom.gens[w]) {
      lindetail::Vec img;
      for (const auto& r : t.rows[w]) img.push_back(lindetail::dot(r, g));
      auto n = lindetail::gauge(circ, img);
      if (!n) fail_at(Errc::BallNotAbsorbing, "ball does not span its space", 1ULL << w);
      best = std::max(best, Rat(*n));
    }
    out[w] = best;
  }
  return CondReal::make(t.alg, t.support, std::move(out));
}

}  // namespace condsets
