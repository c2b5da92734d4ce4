#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "condsets/errors.hpp"
#include "condsets/rational.hpp"

namespace condsets {

// Exact rational linear programming, one classical instance at a time. The
// conditional machinery dispatches per atom and stitches; nothing here knows
// about algebras.

enum class LpSense { Le, Ge, Eq };

struct LPProblem {
  bool maximize = true;
  std::vector<Rat> c;                     // objective, size n
  std::vector<std::vector<Rat>> A;        // m rows of size n
  std::vector<LpSense> senses;            // size m
  std::vector<Rat> b;                     // size m
  std::vector<std::optional<Rat>> lower;  // size n, or empty for all free
  std::vector<std::optional<Rat>> upper;

  static LPProblem make(bool maximize, std::vector<Rat> c,
                        std::vector<std::vector<Rat>> A, std::vector<LpSense> senses,
                        std::vector<Rat> b,
                        std::vector<std::optional<Rat>> lower = {},
                        std::vector<std::optional<Rat>> upper = {}) {
    size_t n = c.size(), m = A.size();
    if (senses.size() != m || b.size() != m)
      fail(Errc::MalformedProblem, "row count mismatch");
    for (const auto& row : A)
      if (row.size() != n) fail(Errc::MalformedProblem, "ragged constraint matrix");
    if (!lower.empty() && lower.size() != n)
      fail(Errc::MalformedProblem, "lower bound count mismatch");
    if (!upper.empty() && upper.size() != n)
      fail(Errc::MalformedProblem, "upper bound count mismatch");
    LPProblem p;
    p.maximize = maximize;
    p.c = std::move(c);
    p.A = std::move(A);
    p.senses = std::move(senses);
    p.b = std::move(b);
    p.lower = std::move(lower);
    p.upper = std::move(upper);
    if (p.lower.empty()) p.lower.assign(n, std::nullopt);
    if (p.upper.empty()) p.upper.assign(n, std::nullopt);
    return p;
  }
};

// Canonical form: maximize c.y subject to A y <= b, y >= 0, plus the affine
// map back to the original variables. Certificates refer to canonical rows.
// Row order: original rows in input order (an equality contributes its <=
// row then its >= row negated), then one bound row per variable that has
// both bounds. Variable map: x_j = shift + sign * y[pos] - y[neg] (neg = -1
// when absent); lower bounds shift, upper-only bounds flip, free variables
// split into a difference.
struct CanonicalLP {
  std::vector<Rat> c;
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  struct VarMap {
    Rat shift;
    int sign = 1;
    int pos = -1;
    int neg = -1;
  };
  std::vector<VarMap> vars;
};

inline CanonicalLP canonicalize(const LPProblem& p) {
  size_t n = p.c.size();
  CanonicalLP cp;
  cp.vars.resize(n);
  size_t cols = 0;
  for (size_t j = 0; j < n; j++) {
    auto& vm = cp.vars[j];
    if (p.lower[j]) {
      vm.shift = *p.lower[j];
      vm.sign = 1;
      vm.pos = static_cast<int>(cols++);
    } else if (p.upper[j]) {
      vm.shift = *p.upper[j];
      vm.sign = -1;
      vm.pos = static_cast<int>(cols++);
    } else {
      vm.sign = 1;
      vm.pos = static_cast<int>(cols++);
      vm.neg = static_cast<int>(cols++);
    }
  }
  cp.c.assign(cols, Rat(0));
  for (size_t j = 0; j < n; j++) {
    Rat cj = p.maximize ? p.c[j] : Rat(-p.c[j]);
    const auto& vm = cp.vars[j];
    cp.c[vm.pos] += Rat(vm.sign) * cj;
    if (vm.neg >= 0) cp.c[vm.neg] -= cj;
  }
  auto push_le = [&](const std::vector<Rat>& row, const Rat& rhs) {
    // substitute the variable maps into a row a.x <= rhs
    std::vector<Rat> out(cols, Rat(0));
    Rat r = rhs;
    for (size_t j = 0; j < n; j++) {
      const auto& vm = cp.vars[j];
      r -= row[j] * vm.shift;
      out[vm.pos] += Rat(vm.sign) * row[j];
      if (vm.neg >= 0) out[vm.neg] -= row[j];
    }
    cp.A.push_back(std::move(out));
    cp.b.push_back(std::move(r));
  };
  for (size_t i = 0; i < p.A.size(); i++) {
    if (p.senses[i] == LpSense::Le || p.senses[i] == LpSense::Eq)
      push_le(p.A[i], p.b[i]);
    if (p.senses[i] == LpSense::Ge || p.senses[i] == LpSense::Eq) {
      std::vector<Rat> negrow(p.A[i]);
      for (auto& v : negrow) v = -v;
      push_le(negrow, Rat(-p.b[i]));
    }
  }
  for (size_t j = 0; j < n; j++) {
    if (p.lower[j] && p.upper[j]) {
      std::vector<Rat> row(n, Rat(0));
      row[j] = 1;
      push_le(row, *p.upper[j]);
    }
  }
  return cp;
}

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  std::vector<Rat> x;       // optimal point, or a feasible point when unbounded
  Rat value;                // objective at x, in the original orientation
  std::vector<Rat> dual;    // canonical row prices: y >= 0, yA >= c, yb = value
  std::vector<Rat> farkas;  // canonical row prices: y >= 0, yA >= 0, yb < 0
  std::vector<Rat> ray;     // improving direction in original variables
  std::vector<size_t> basis;
  CanonicalLP canon;
};

namespace detail {

// Dense rational tableau. Row 0 holds the objective as z + sum d_j col_j =
// rhs; an improving column has d_j < 0. Bland's rule throughout: smallest
// improving column enters, smallest basic variable leaves on ties, which
// rules out cycling.
struct Tableau {
  std::vector<std::vector<Rat>> t;  // (m+1) x (cols+1), rhs last
  std::vector<int> basis;           // size m
  size_t cols;

  size_t rows() const { return t.size() - 1; }

  void pivot(size_t r, size_t j) {
    Rat piv = t[r][j];
    for (auto& v : t[r]) v /= piv;
    for (size_t i = 0; i < t.size(); i++) {
      if (i == r || t[i][j] == 0) continue;
      Rat f = t[i][j];
      for (size_t k = 0; k <= cols; k++) t[i][k] -= f * t[r][k];
    }
    basis[r - 1] = static_cast<int>(j);
  }

  // returns false when the chosen column is unbounded
  bool bland_step(bool& moved) {
    moved = false;
    size_t enter = cols;
    for (size_t j = 0; j < cols; j++)
      if (t[0][j] < 0) { enter = j; break; }
    if (enter == cols) return true;  // optimal
    size_t leave = 0;
    bool found = false;
    Rat best;
    for (size_t r = 1; r <= rows(); r++) {
      if (t[r][enter] <= 0) continue;
      Rat ratio = t[r][cols] / t[r][enter];
      if (!found || ratio < best ||
          (ratio == best && basis[r - 1] < basis[leave - 1])) {
        best = ratio;
        leave = r;
        found = true;
      }
    }
    if (!found) {
      t[0][cols] = Rat(enter);  // stash the unbounded column for the caller
      return false;
    }
    pivot(leave, enter);
    moved = true;
    return true;
  }

  void run_simplex() {
    for (;;) {
      bool moved;
      if (!bland_step(moved)) fail(Errc::DegenerateSystem, "unexpected unbounded phase");
      if (!moved) return;
    }
  }
};

}  // namespace detail

inline LpResult lp_solve(const LPProblem& p) {
  LpResult res;
  res.canon = canonicalize(p);
  const auto& cp = res.canon;
  size_t N = cp.c.size(), m = cp.A.size();

  detail::Tableau tab;
  tab.cols = N + m;  // vars then slacks; x0 appended for phase 1
  bool need_phase1 = false;
  for (const auto& bi : cp.b)
    if (bi < 0) need_phase1 = true;
  if (need_phase1) tab.cols++;

  tab.t.assign(m + 1, std::vector<Rat>(tab.cols + 1, Rat(0)));
  tab.basis.resize(m);
  for (size_t i = 0; i < m; i++) {
    for (size_t j = 0; j < N; j++) tab.t[i + 1][j] = cp.A[i][j];
    tab.t[i + 1][N + i] = 1;
    if (need_phase1) tab.t[i + 1][N + m] = -1;
    tab.t[i + 1][tab.cols] = cp.b[i];
    tab.basis[i] = static_cast<int>(N + i);
  }

  if (need_phase1) {
    tab.t[0][N + m] = 1;  // maximize -x0
    size_t worst = 1;
    for (size_t r = 2; r <= m; r++)
      if (tab.t[r][tab.cols] < tab.t[worst][tab.cols]) worst = r;
    tab.pivot(worst, N + m);
    tab.run_simplex();
    if (tab.t[0][tab.cols] < 0) {
      res.status = LpStatus::Infeasible;
      for (size_t i = 0; i < m; i++) res.farkas.push_back(tab.t[0][N + i]);
      return res;
    }
    // drive x0 out of the basis if it lingers at value zero
    for (size_t r = 1; r <= m; r++) {
      if (tab.basis[r - 1] != static_cast<int>(N + m)) continue;
      size_t j = 0;
      while (j < N + m && tab.t[r][j] == 0) j++;
      if (j < N + m) {
        tab.pivot(r, j);
      } else {
        // the row reduced to 0 = 0: the constraint is redundant
        tab.t.erase(tab.t.begin() + static_cast<long>(r));
        tab.basis.erase(tab.basis.begin() + static_cast<long>(r - 1));
        r--;
      }
    }
    for (auto& row : tab.t) row.erase(row.begin() + static_cast<long>(N + m));
    tab.cols--;
    // rebuild the objective row and price out the basic columns
    for (size_t j = 0; j <= tab.cols; j++) tab.t[0][j] = 0;
    for (size_t j = 0; j < N; j++) tab.t[0][j] = -cp.c[j];
    for (size_t r = 1; r < tab.t.size(); r++) {
      Rat d = tab.t[0][static_cast<size_t>(tab.basis[r - 1])];
      if (d == 0) continue;
      for (size_t k = 0; k <= tab.cols; k++) tab.t[0][k] -= d * tab.t[r][k];
    }
  } else {
    for (size_t j = 0; j < N; j++) tab.t[0][j] = -cp.c[j];
  }

  for (;;) {
    bool moved;
    if (!tab.bland_step(moved)) {
      size_t enter = tab.t[0][tab.cols].convert_to<size_t>();
      res.status = LpStatus::Unbounded;
      std::vector<Rat> d(N, Rat(0)), y(N, Rat(0));
      if (enter < N) d[enter] = 1;
      for (size_t r = 1; r < tab.t.size(); r++) {
        int bv = tab.basis[r - 1];
        if (bv < static_cast<int>(N)) {
          y[static_cast<size_t>(bv)] = tab.t[r][tab.cols];
          if (tab.t[r][enter] != 0)
            d[static_cast<size_t>(bv)] = -tab.t[r][enter];
        }
      }
      res.x.assign(p.c.size(), Rat(0));
      res.ray.assign(p.c.size(), Rat(0));
      for (size_t j = 0; j < p.c.size(); j++) {
        const auto& vm = cp.vars[j];
        res.x[j] = vm.shift + Rat(vm.sign) * y[static_cast<size_t>(vm.pos)];
        res.ray[j] = Rat(vm.sign) * d[static_cast<size_t>(vm.pos)];
        if (vm.neg >= 0) {
          res.x[j] -= y[static_cast<size_t>(vm.neg)];
          res.ray[j] -= d[static_cast<size_t>(vm.neg)];
        }
      }
      res.value = 0;
      for (size_t j = 0; j < p.c.size(); j++) res.value += p.c[j] * res.x[j];
      return res;
    }
    if (!moved) break;
  }

  res.status = LpStatus::Optimal;
  std::vector<Rat> y(N, Rat(0));
  for (size_t r = 1; r < tab.t.size(); r++) {
    int bv = tab.basis[r - 1];
    if (bv < static_cast<int>(N)) y[static_cast<size_t>(bv)] = tab.t[r][tab.cols];
    res.basis.push_back(static_cast<size_t>(bv));
  }
  std::sort(res.basis.begin(), res.basis.end());
  res.x.assign(p.c.size(), Rat(0));
  for (size_t j = 0; j < p.c.size(); j++) {
    const auto& vm = cp.vars[j];
    res.x[j] = vm.shift + Rat(vm.sign) * y[static_cast<size_t>(vm.pos)];
    if (vm.neg >= 0) res.x[j] -= y[static_cast<size_t>(vm.neg)];
  }
  res.value = 0;
  for (size_t j = 0; j < p.c.size(); j++) res.value += p.c[j] * res.x[j];
  // the objective row is the initial one plus a price combination of the
  // initial constraint rows, so the slack columns read off the dual
  res.dual.assign(m, Rat(0));
  for (size_t i = 0; i < m; i++) res.dual[i] = tab.t[0][N + i];
  return res;
}

}  // namespace condsets
