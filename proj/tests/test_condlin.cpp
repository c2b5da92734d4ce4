#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <vector>

#include "checks.hpp"
#include "condsets/condlin.hpp"
#include "condsets/rng.hpp"

using namespace condsets;

namespace {

AlgebraPtr alg1() { return Algebra::make({"w"}); }
AlgebraPtr alg2() { return Algebra::make({"w1", "w2"}); }
AlgebraPtr alg3() { return Algebra::make({"w1", "w2", "w3"}); }

using Pt = std::vector<Rat>;
using Gens = std::vector<Pt>;

VPolytope P(const AlgebraPtr& a, std::vector<Gens> gens) {
  return VPolytope::make(a, a->full_mask(), std::move(gens));
}

CondRealVec V(const AlgebraPtr& a, std::vector<Pt> rows) {
  return CondRealVec::make(a, a->full_mask(), std::move(rows));
}

CondReal R(const AlgebraPtr& a, std::vector<Rat> v) {
  return CondReal::make(a, a->full_mask(), std::move(v));
}

Gens box_corners(size_t d) {
  Gens out;
  for (size_t m = 0; m < (1ull << d); m++) {
    Pt p(d);
    for (size_t i = 0; i < d; i++) p[i] = (m >> i & 1) ? Rat(1) : Rat(-1);
    out.push_back(p);
  }
  return out;
}

VPolytope box_ball(const AlgebraPtr& a, const std::vector<size_t>& dims) {
  std::vector<Gens> g(a->n());
  for (int w = 0; w < a->n(); w++) g[w] = box_corners(dims[w]);
  return P(a, std::move(g));
}

VPolytope random_poly(Rng& rng, const AlgebraPtr& a, const std::vector<size_t>& dims,
                      size_t gmax) {
  std::vector<Gens> gens(a->n());
  for (int w = 0; w < a->n(); w++) {
    size_t cnt = rng.below(gmax) + 1;
    for (size_t i = 0; i < cnt; i++) {
      Pt p;
      for (size_t l = 0; l < dims[w]; l++) p.push_back(rng.rat(4, 2));
      gens[w].push_back(p);
    }
  }
  return P(a, std::move(gens));
}

Pt hull_sample(Rng& rng, const Gens& gens) {
  std::vector<Rat> wts;
  Rat tot(0);
  for (size_t i = 0; i < gens.size(); i++) {
    Rat t(static_cast<int>(rng.below(5)));
    wts.push_back(t);
    tot += t;
  }
  if (tot == 0) {
    wts[0] = 1;
    tot = 1;
  }
  Pt p(gens[0].size(), Rat(0));
  for (size_t i = 0; i < gens.size(); i++)
    for (size_t l = 0; l < p.size(); l++) p[l] += wts[i] / tot * gens[i][l];
  return p;
}

CondRealVec hull_sample_vec(Rng& rng, const VPolytope& y) {
  std::vector<Pt> rows(y.alg->n());
  for (int w = 0; w < y.alg->n(); w++) rows[w] = hull_sample(rng, y.gens[w]);
  return V(y.alg, std::move(rows));
}

CondRealVec random_vec(Rng& rng, const AlgebraPtr& a, const std::vector<size_t>& dims) {
  std::vector<Pt> rows(a->n());
  for (int w = 0; w < a->n(); w++)
    for (size_t l = 0; l < dims[w]; l++) rows[w].push_back(rng.rat());
  return V(a, std::move(rows));
}

Rat dotr(const Pt& a, const Pt& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("vertex form sets add and scale exactly") {
  auto a = alg2();
  auto seg1 = P(a, {{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}},
                    {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}});
  auto seg2 = P(a, {{{Rat(0), Rat(0)}, {Rat(0), Rat(1)}},
                    {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}}});
  auto square = minkowski_add(seg1, seg2);
  auto expect = P(a, {{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}},
                      {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}}});
  CHECK(same_hull(square, expect));

  auto zero = VPolytope::of_point(V(a, {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}));
  CHECK(same_hull(minkowski_add(square, zero), square));
  CHECK(same_hull(minkowski_scale(R(a, {Rat(0), Rat(0)}), square), zero));

  auto one_d = P(a, {{{Rat(1)}}, {{Rat(1)}}});
  CHECK_THROWS_MATCHES(minkowski_add(square, one_d), CondError,
                       ErrcIs(Errc::DimMismatch));

  Rng rng{0x5eedc0defull};
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 40; iter++) {
    auto y = random_poly(rng, a, dims, 4);
    auto z = random_poly(rng, a, dims, 4);
    auto sum = minkowski_add(y, z);
    auto f = random_vec(rng, a, dims);
    // support values add across a sum of sets
    auto sv = add(support_value(y, f), support_value(z, f));
    CHECK(support_value(sum, f) == sv);
    // scaling by a pointwise nonzero factor carries membership both ways
    std::vector<Rat> lv;
    for (int w = 0; w < a->n(); w++) {
      Rat t = rng.rat(4, 2);
      lv.push_back(t == 0 ? Rat(1) : t);
    }
    auto lam = R(a, lv);
    auto scaled = minkowski_scale(lam, y);
    auto x = hull_sample_vec(rng, y);
    std::vector<Pt> sx(a->n());
    for (int w = 0; w < a->n(); w++)
      for (const auto& c : x.v[w]) sx[w].push_back(lam.v[w] * c);
    CHECK(hull_contains(y, x));
    CHECK(hull_contains(scaled, V(a, std::move(sx))));
  }
}

TEST_CASE("hulls reach their fixed point with minimal vertices") {
  auto a = alg1();
  auto tri = P(a, {{{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(0), Rat(4)},
                    {Rat(2), Rat(0)}, {make_rat(4, 3), make_rat(4, 3)}}});
  auto hull = conv_hull(tri);
  CHECK(hull.gens[0].size() == 3);
  CHECK(same_hull(hull, tri));
  for (const auto& g : hull.gens[0])
    CHECK((g == Pt{Rat(0), Rat(0)} || g == Pt{Rat(4), Rat(0)} || g == Pt{Rat(0), Rat(4)}));

  // one mixing round adds nothing new hull-wise
  auto step = conv_step(tri);
  CHECK(step.gens[0].size() > tri.gens[0].size());
  CHECK(same_hull(step, tri));
  CHECK(same_hull(conv_hull(step), hull));
  CHECK(is_convex(tri));

  Rng rng{0xabcdef12ull};
  auto b = alg2();
  std::vector<size_t> dims{2, 3};
  for (int iter = 0; iter < 25; iter++) {
    auto y = random_poly(rng, b, dims, 4);
    auto h = conv_hull(y);
    CHECK(same_hull(h, y));
    CHECK(same_hull(conv_step(y), y));
    auto again = conv_hull(h);
    CHECK(again.gens == h.gens);
    CHECK(is_convex(y));
  }
}

TEST_CASE("circled and absorbing are decided per atom") {
  auto a = alg2();
  auto seg = P(a, {{{Rat(-1), Rat(0)}, {Rat(1), Rat(0)}},
                   {{Rat(-1), Rat(0)}, {Rat(1), Rat(0)}}});
  CHECK(is_circled(seg));
  CHECK_FALSE(is_absorbing(seg));
  CHECK(absorbing_mask(seg) == 0);

  auto ball = box_ball(a, {2, 2});
  CHECK(is_circled(ball));
  CHECK(is_absorbing(ball));

  auto shifted = P(a, {{{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}, {Rat(2), Rat(2)}},
                       box_corners(2)});
  CHECK(circled_mask(shifted) == 0b10);
  CHECK(absorbing_mask(shifted) == 0b10);
  CHECK_FALSE(is_circled(shifted));

  auto origin = VPolytope::of_point(V(a, {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}));
  CHECK(is_circled(origin));
  CHECK_FALSE(is_absorbing(origin));
}

TEST_CASE("span membership stitches exact coefficients") {
  auto a = alg2();
  auto u1 = V(a, {{Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(0), Rat(0)}});
  auto u2 = V(a, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(3), Rat(0)}});
  auto r = span_membership({u1, u2}, u1);
  CHECK(r.member);
  CHECK(r.where_fails.mask == 0);
  CHECK(r.coeffs[0] == R(a, {Rat(1), Rat(1)}));
  CHECK(r.coeffs[1] == R(a, {Rat(0), Rat(0)}));

  auto out = V(a, {{Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(0)}});
  auto miss = span_membership({u1, u2}, out);
  CHECK_FALSE(miss.member);
  CHECK(miss.where_fails.mask == 0b01);  // the zero vector still combines on w2

  CHECK_THROWS_MATCHES(span_membership({}, u1), CondError, ErrcIs(Errc::EmptyFamily));

  Rng rng{0x77aa55cc01ull};
  std::vector<size_t> dims{3, 2};
  for (int iter = 0; iter < 60; iter++) {
    std::vector<CondRealVec> fam;
    size_t k = rng.below(3) + 1;
    for (size_t i = 0; i < k; i++) fam.push_back(random_vec(rng, a, dims));
    // build x as a known combination, then demand an exact recombination
    std::vector<Pt> rows(a->n());
    std::vector<std::vector<Rat>> mix;
    for (size_t i = 0; i < k; i++) {
      std::vector<Rat> c;
      for (int w = 0; w < a->n(); w++) c.push_back(rng.rat(3, 2));
      mix.push_back(c);
    }
    for (int w = 0; w < a->n(); w++) {
      rows[w].assign(dims[w], Rat(0));
      for (size_t i = 0; i < k; i++)
        for (size_t l = 0; l < dims[w]; l++)
          rows[w][l] += mix[i][w] * fam[i].v[w][l];
    }
    auto x = V(a, std::move(rows));
    auto res = span_membership(fam, x);
    CHECK(res.member);
    for (int w = 0; w < a->n(); w++) {
      Pt back(dims[w], Rat(0));
      for (size_t i = 0; i < k; i++)
        for (size_t l = 0; l < dims[w]; l++)
          back[l] += res.coeffs[i].v[w] * fam[i].v[w][l];
      CHECK(back == x.v[w]);
    }
  }
}

TEST_CASE("a functional combines over a family exactly when kernels include") {
  auto a = alg2();
  auto f1 = V(a, {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}});
  auto f2 = V(a, {{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}});
  std::vector<Pt> comb(a->n());
  for (int w = 0; w < a->n(); w++)
    for (size_t l = 0; l < 2; l++)
      comb[w].push_back(Rat(2) * f1.v[w][l] + Rat(3) * f2.v[w][l]);
  auto f = V(a, std::move(comb));
  auto res = duality_coeffs(f, {f1, f2});
  CHECK(res.representable);
  CHECK(res.all_nonzero);
  CHECK(res.coeffs[0] == R(a, {Rat(2), Rat(2)}));
  CHECK(res.coeffs[1] == R(a, {Rat(3), Rat(3)}));

  // a repeated generator leaves a free coefficient, pinned at one
  std::vector<Pt> twice(a->n());
  for (int w = 0; w < a->n(); w++)
    for (size_t l = 0; l < 2; l++) twice[w].push_back(Rat(2) * f1.v[w][l]);
  auto rep = duality_coeffs(V(a, std::move(twice)), {f1, f1});
  CHECK(rep.representable);
  CHECK(rep.all_nonzero);
  CHECK(rep.coeffs[0] == R(a, {Rat(1), Rat(1)}));
  CHECK(rep.coeffs[1] == R(a, {Rat(1), Rat(1)}));

  // forced zero coefficient is reported
  auto e1 = V(a, {{Rat(1), Rat(0)}, {Rat(1), Rat(0)}});
  auto e2 = V(a, {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}});
  auto forced = duality_coeffs(e1, {e1, e2});
  CHECK(forced.representable);
  CHECK_FALSE(forced.all_nonzero);

  // failure carries a direction the family kills but f does not
  auto bad = duality_coeffs(e2, {e1});
  CHECK_FALSE(bad.representable);
  CHECK(bad.where_fails.mask == a->full_mask());
  REQUIRE(bad.kernel_witness.has_value());
  for (int w = 0; w < a->n(); w++) {
    CHECK(dotr(e1.v[w], bad.kernel_witness->v[w]) == 0);
    CHECK(dotr(e2.v[w], bad.kernel_witness->v[w]) != 0);
  }

  Rng rng{0x2468ace135ull};
  std::vector<size_t> dims{2, 3};
  for (int iter = 0; iter < 60; iter++) {
    size_t k = rng.below(3) + 1;
    std::vector<CondLinFunctional> fam;
    for (size_t i = 0; i < k; i++) fam.push_back(random_vec(rng, a, dims));
    auto g = random_vec(rng, a, dims);
    auto r = duality_coeffs(g, fam);
    if (r.representable) {
      // the coefficients rebuild the functional everywhere
      for (int w = 0; w < a->n(); w++) {
        Pt back(dims[w], Rat(0));
        for (size_t i = 0; i < k; i++)
          for (size_t l = 0; l < dims[w]; l++)
            back[l] += r.coeffs[i].v[w] * fam[i].v[w][l];
        CHECK(back == g.v[w]);
      }
    } else {
      REQUIRE(r.kernel_witness.has_value());
      const auto& wit = *r.kernel_witness;
      for (int w = 0; w < a->n(); w++) {
        if (!(r.where_fails.mask & (1ULL << w))) continue;
        for (size_t i = 0; i < k; i++) CHECK(dotr(fam[i].v[w], wit.v[w]) == 0);
        CHECK(dotr(g.v[w], wit.v[w]) != 0);
      }
    }
    // every functional combines over the coordinate functionals
    std::vector<CondLinFunctional> units;
    for (size_t l = 0; l < dims[0]; l++) {
      std::vector<Pt> rows(a->n());
      for (int w = 0; w < a->n(); w++) {
        rows[w].assign(dims[w], Rat(0));
        if (l < dims[w]) rows[w][l] = 1;
      }
      units.push_back(V(a, std::move(rows)));
    }
    if (dims[0] >= dims[1]) {
      auto all = duality_coeffs(g, units);
      CHECK(all.representable);
    }
  }
}

TEST_CASE("disjoint hulls separate with a positive margin") {
  auto a = alg1();
  auto zero = P(a, {{{Rat(0)}}});
  auto one = P(a, {{{Rat(1)}}});
  auto sep = separate(zero, one, true);
  CHECK(sep.f.v[0] == Pt{Rat(1)});
  CHECK(sep.eps.v[0] == make_rat(1, 2));

  auto weak = separate(zero, one, false);
  CHECK(weak.eps.v[0] == 0);

  // overlap is reported with the offending condition
  auto b = alg2();
  auto c1 = P(b, {box_corners(2), {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}});
  auto c2 = P(b, {box_corners(2), {{Rat(3), Rat(0)}, {Rat(4), Rat(0)}}});
  try {
    separate(c1, c2, true);
    FAIL("expected an overlap failure");
  } catch (const CondError& e) {
    CHECK(e.code == Errc::NotDisjoint);
    CHECK(e.where_mask == 0b01);
  }

  Rng rng{0x13579bdf02468aceull};
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 40; iter++) {
    auto y = random_poly(rng, b, dims, 3);
    // push a second set strictly past y along a per-atom axis
    std::vector<Gens> shifted(b->n());
    for (int w = 0; w < b->n(); w++) {
      size_t axis = rng.below(dims[w]);
      Rat top = y.gens[w][0][axis];
      for (const auto& g : y.gens[w]) top = std::max(top, g[axis]);
      size_t cnt = rng.below(3) + 1;
      for (size_t i = 0; i < cnt; i++) {
        Pt p;
        for (size_t l = 0; l < dims[w]; l++) p.push_back(rng.rat(4, 2));
        p[axis] = top + 1 + rng.rat_pos(3, 2);
        shifted[w].push_back(p);
      }
    }
    auto z = P(b, std::move(shifted));
    bool strict = rng.coin();
    auto s = separate(y, z, strict);
    for (int w = 0; w < b->n(); w++) {
      if (strict) CHECK(s.eps.v[w] > 0);
      for (const auto& g : y.gens[w])
        for (const auto& h : z.gens[w])
          CHECK(dotr(s.f.v[w], g) + s.eps.v[w] < dotr(s.f.v[w], h));
    }
  }
}

TEST_CASE("extension under a sublinear bound lands on interval midpoints") {
  auto a = alg1();
  // the bound is the max over all sign patterns, the absolute sum
  auto k = PolyhedralSublinear::make(
      a, a->full_mask(),
      {{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}, {Rat(-1), Rat(1)}, {Rat(-1), Rat(-1)}}});
  auto e1 = V(a, {{Rat(1), Rat(0)}});
  auto f = hb_extend({e1}, {R(a, {Rat(1)})}, k);
  CHECK(f.v[0] == Pt{Rat(1), Rat(0)});

  // the whole-space extension of nothing under a symmetric bound is zero
  auto z = hb_extend({}, {}, k);
  CHECK(z.v[0] == Pt{Rat(0), Rat(0)});

  CHECK_THROWS_MATCHES(hb_extend({e1}, {R(a, {Rat(2)})}, k), CondError,
                       ErrcIs(Errc::DominationViolated));
  auto e1twice = V(a, {{Rat(2), Rat(0)}});
  CHECK_THROWS_MATCHES(hb_extend({e1, e1twice}, {R(a, {Rat(1)}), R(a, {Rat(2)})}, k),
                       CondError, ErrcIs(Errc::MalformedProblem));

  Rng rng{0xfeedbead77ull};
  auto b = alg2();
  std::vector<size_t> dims{2, 3};
  for (int iter = 0; iter < 30; iter++) {
    // random polyhedral bound and one admissible datum on a random line
    std::vector<Gens> funcs(b->n());
    for (int w = 0; w < b->n(); w++) {
      size_t cnt = rng.below(3) + 2;
      for (size_t i = 0; i < cnt; i++) {
        Pt p;
        for (size_t l = 0; l < dims[w]; l++) p.push_back(rng.rat(3, 2));
        funcs[w].push_back(p);
      }
    }
    auto bound = PolyhedralSublinear::make(b, b->full_mask(), std::move(funcs));
    auto u = random_vec(rng, b, dims);
    bool degenerate = false;
    for (int w = 0; w < b->n(); w++)
      if (std::all_of(u.v[w].begin(), u.v[w].end(), [](const Rat& r) { return r == 0; }))
        degenerate = true;
    if (degenerate) continue;
    auto ku = sublinear_value(bound, u);
    std::vector<Pt> negrows(b->n());
    for (int w = 0; w < b->n(); w++)
      for (const auto& c : u.v[w]) negrows[w].push_back(-c);
    auto kneg = sublinear_value(bound, V(b, std::move(negrows)));
    // pick the value inside the admissible closed interval
    std::vector<Rat> val;
    for (int w = 0; w < b->n(); w++) {
      Rat lo = -kneg.v[w], hi = ku.v[w];
      Rat t(static_cast<int>(rng.below(5)), 4);
      val.push_back(lo + t * (hi - lo));
    }
    auto fr = hb_extend({u}, {R(b, val)}, bound);
    // agreement on the subspace and domination everywhere, both exact
    for (int w = 0; w < b->n(); w++) CHECK(dotr(fr.v[w], u.v[w]) == val[w]);
    for (int s = 0; s < 12; s++) {
      auto x = random_vec(rng, b, dims);
      auto fx = functional_value(fr, x);
      auto kx = sublinear_value(bound, x);
      for (int w = 0; w < b->n(); w++) CHECK(fx.v[w] <= kx.v[w]);
    }
  }
}

TEST_CASE("polars carry the expected inequality descriptions") {
  auto a = alg1();
  auto ball = box_ball(a, {2});
  auto p = polar(ball);
  CHECK(p.rows[0].size() == 4);  // the corner rows are already symmetric
  CHECK(p.contains(V(a, {{make_rat(1, 2), make_rat(1, 2)}})));
  CHECK_FALSE(p.contains(V(a, {{make_rat(3, 4), make_rat(1, 2)}})));

  // polar of the origin is everything
  auto zero = VPolytope::of_point(V(a, {{Rat(0), Rat(0)}}));
  CHECK(polar(zero).contains(V(a, {{Rat(100), Rat(-100)}})));

  // polar of a segment is the dual slab, free in the orthogonal direction
  auto seg = P(a, {{{Rat(-1), Rat(0)}, {Rat(1), Rat(0)}}});
  auto slab = polar(seg);
  CHECK(slab.contains(V(a, {{Rat(1), Rat(100)}})));
  CHECK_FALSE(slab.contains(V(a, {{Rat(2), Rat(0)}})));

  // one sided polar of a point is a halfspace
  auto half = polar(P(a, {{{Rat(1), Rat(0)}}}), true);
  CHECK(half.contains(V(a, {{Rat(-100), Rat(5)}})));
  CHECK_FALSE(half.contains(V(a, {{Rat(2), Rat(0)}})));

  Rng rng{0x0ddba11deadull};
  auto b = alg2();
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 30; iter++) {
    auto y = random_poly(rng, b, dims, 3);
    auto z = random_poly(rng, b, dims, 3);
    auto py = polar(y);
    // antitone: summing with a set through the origin grows the hull over y,
    // so the polar shrinks
    auto z0g = z.gens;
    for (int w = 0; w < b->n(); w++) z0g[w].push_back(Pt(dims[w], Rat(0)));
    auto pz = polar(minkowski_add(y, P(b, std::move(z0g))));
    auto sample = random_vec(rng, b, dims);
    std::uint64_t in_sum = pz.member_mask(sample);
    CHECK((in_sum & ~py.member_mask(sample)) == 0);

    // scaling the set scales the polar inversely
    std::vector<Rat> lv;
    for (int w = 0; w < b->n(); w++) {
      Rat t = rng.rat(3, 2);
      lv.push_back(t == 0 ? Rat(1) : t);
    }
    auto lam = R(b, lv);
    auto pscaled = polar(minkowski_scale(lam, y));
    std::vector<Pt> zray(b->n());
    for (int w = 0; w < b->n(); w++)
      for (const auto& c : sample.v[w]) zray[w].push_back(lam.v[w] * c);
    auto scaled_sample = V(b, std::move(zray));
    CHECK(pscaled.member_mask(sample) == py.member_mask(scaled_sample));

    // union of generators dualizes to intersection
    std::vector<Gens> ug(b->n());
    for (int w = 0; w < b->n(); w++) {
      ug[w] = y.gens[w];
      for (const auto& g : z.gens[w]) ug[w].push_back(g);
    }
    auto uni = P(b, std::move(ug));
    auto puni = polar(uni);
    CHECK(puni.member_mask(sample) ==
          (py.member_mask(sample) & polar(z).member_mask(sample)));

    // polars are circled convex sets around the origin
    std::vector<Pt> zrows(b->n());
    for (int w = 0; w < b->n(); w++) zrows[w].assign(dims[w], Rat(0));
    CHECK(py.contains(V(b, std::move(zrows))));
    std::vector<Pt> nrows(b->n());
    for (int w = 0; w < b->n(); w++)
      for (const auto& c : sample.v[w]) nrows[w].push_back(-c);
    CHECK(py.member_mask(sample) == py.member_mask(V(b, std::move(nrows))));
    auto s2 = random_vec(rng, b, dims);
    std::uint64_t both = py.member_mask(sample) & py.member_mask(s2);
    std::vector<Pt> mid(b->n());
    for (int w = 0; w < b->n(); w++)
      for (size_t l = 0; l < dims[w]; l++)
        mid[w].push_back((sample.v[w][l] + s2.v[w][l]) / 2);
    CHECK((both & ~py.member_mask(V(b, std::move(mid)))) == 0);
  }
}

TEST_CASE("the second polar is the smallest circled closed hull") {
  auto a = alg2();
  // a single off-center point: its two sided bipolar must pull in -g and 0
  auto pt = P(a, {{{Rat(1), Rat(0)}}, {{Rat(0), Rat(2)}}});
  CHECK(bipolar_check(pt, {}));
  CHECK(bipolar_check(pt, {}, true));

  auto ball = box_ball(a, {2, 2});
  CHECK(bipolar_check(ball, {}));

  Rng rng{0xcafe00cafe01ull};
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 20; iter++) {
    auto y = random_poly(rng, a, dims, 3);
    std::vector<CondRealVec> samples;
    for (int s = 0; s < 4; s++) samples.push_back(random_vec(rng, a, dims));
    samples.push_back(hull_sample_vec(rng, y));
    CHECK(bipolar_check(y, samples));
    CHECK(bipolar_check(y, samples, true));
  }
}

TEST_CASE("gauge norms measure against a polyhedral unit ball") {
  auto a = alg1();
  auto ball = box_ball(a, {2});
  CHECK(norm_eval(ball, V(a, {{Rat(3), Rat(-4)}})).v[0] == 4);
  CHECK(norm_eval(ball, V(a, {{Rat(0), Rat(0)}})).v[0] == 0);
  for (const auto& g : ball.gens[0]) {
    auto n = norm_eval(ball, V(a, {g}));
    CHECK(n.v[0] == 1);
  }

  auto b = alg2();
  auto seg = P(b, {box_corners(2),
                   {{Rat(-1), Rat(0)}, {Rat(1), Rat(0)}}});
  try {
    norm_eval(seg, V(b, {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}));
    FAIL("expected a ball failure");
  } catch (const CondError& e) {
    CHECK(e.code == Errc::BallNotAbsorbing);
    CHECK(e.where_mask == 0b10);
  }

  Rng rng{0x600df00d11ull};
  auto ball2 = box_ball(b, {2, 2});
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 40; iter++) {
    auto x = random_vec(rng, b, dims);
    auto y = random_vec(rng, b, dims);
    auto nx = norm_eval(ball2, x);
    for (int w = 0; w < b->n(); w++) {
      bool zero = std::all_of(x.v[w].begin(), x.v[w].end(),
                              [](const Rat& r) { return r == 0; });
      CHECK((nx.v[w] == 0) == zero);
    }
    // absolute homogeneity, exactly
    std::vector<Rat> lv;
    for (int w = 0; w < b->n(); w++) lv.push_back(rng.rat(4, 2));
    std::vector<Pt> sx(b->n());
    for (int w = 0; w < b->n(); w++)
      for (const auto& c : x.v[w]) sx[w].push_back(lv[w] * c);
    auto nsx = norm_eval(ball2, V(b, std::move(sx)));
    for (int w = 0; w < b->n(); w++) {
      Rat abs = lv[w] < 0 ? Rat(-lv[w]) : lv[w];
      CHECK(nsx.v[w] == abs * nx.v[w]);
    }
    // triangle, exactly
    std::vector<Pt> sum(b->n());
    for (int w = 0; w < b->n(); w++)
      for (size_t l = 0; l < dims[w]; l++) sum[w].push_back(x.v[w][l] + y.v[w][l]);
    auto nsum = norm_eval(ball2, V(b, std::move(sum)));
    auto ny = norm_eval(ball2, y);
    for (int w = 0; w < b->n(); w++) CHECK(nsum.v[w] <= nx.v[w] + ny.v[w]);
  }
}

TEST_CASE("operator norms are attained at ball vertices") {
  auto a = alg2();
  auto ball = box_ball(a, {2, 2});
  auto id = CondLinMap::identity(a, a->full_mask(), ball.dim);
  CHECK(operator_norm(id, ball, ball) == R(a, {Rat(1), Rat(1)}));

  auto row = CondLinMap::make(a, a->full_mask(),
                              {{{Rat(1), Rat(1)}}, {{Rat(1), Rat(1)}}});
  auto line = P(a, {{{Rat(-1)}, {Rat(1)}}, {{Rat(-1)}, {Rat(1)}}});
  CHECK(operator_norm(row, ball, line) == R(a, {Rat(2), Rat(2)}));

  auto x = V(a, {{Rat(3), Rat(-1)}, {Rat(0), Rat(5)}});
  auto img = map_apply(row, x);
  CHECK(img.v[0] == Pt{Rat(2)});
  CHECK(img.v[1] == Pt{Rat(5)});

  Rng rng{0xb0a710adedull};
  std::vector<size_t> dims{2, 2};
  for (int iter = 0; iter < 25; iter++) {
    std::vector<Gens> rows(a->n());
    for (int w = 0; w < a->n(); w++) {
      rows[w].assign(2, Pt(2));
      for (auto& r : rows[w])
        for (auto& c : r) c = rng.rat(3, 2);
    }
    auto t = CondLinMap::make(a, a->full_mask(), rows);
    auto nt = operator_norm(t, ball, ball);
    // scaling the map scales the norm
    Rat lam = rng.rat(3, 2);
    Rat abs = lam < 0 ? Rat(-lam) : lam;
    std::vector<Gens> srows = rows;
    for (auto& m : srows)
      for (auto& r : m)
        for (auto& c : r) c *= lam;
    auto st = CondLinMap::make(a, a->full_mask(), srows);
    auto nst = operator_norm(st, ball, ball);
    for (int w = 0; w < a->n(); w++) CHECK(nst.v[w] == abs * nt.v[w]);
    // the norm bounds every image, exactly
    auto p = random_vec(rng, a, dims);
    auto np = norm_eval(ball, p);
    auto nim = norm_eval(ball, map_apply(t, p));
    for (int w = 0; w < a->n(); w++) CHECK(nim.v[w] <= nt.v[w] * np.v[w]);
  }
}

TEST_CASE("the polar of the unit ball is certifiably compact") {
  auto a = alg2();
  auto ball = box_ball(a, {2, 2});
  auto p = polar(ball);

  // closed: a finite inequality description exists on every atom
  for (int w = 0; w < a->n(); w++) {
    CHECK(!p.rows[w].empty());
    CHECK(p.rows[w].size() == 4);
  }

  // bounded: the pairing stays finite along every signed axis
  std::vector<std::vector<std::pair<Rat, Rat>>> sides(a->n());
  for (int w = 0; w < a->n(); w++) {
    for (size_t k = 0; k < 2; k++) {
      Pt dir(2, Rat(0));
      dir[k] = 1;
      auto up = lindetail::polar_dot_max(p.rows[w], dir);
      dir[k] = -1;
      auto dn = lindetail::polar_dot_max(p.rows[w], dir);
      REQUIRE(up.bounded);
      REQUIRE(dn.bounded);
      sides[w].push_back({Rat(-dn.value), up.value});
      CHECK(up.value == 1);
      CHECK(dn.value == 1);
    }
  }

  // totally bounded: an eps net of the bounding box covers every member
  auto box = RatBox::make(a, a->full_mask(), sides);
  auto eps = R(a, {make_rat(1, 4), make_rat(1, 4)});
  auto net = eps_net(box, eps);
  Rng rng{0x00c0ffee42ull};
  for (int iter = 0; iter < 60; iter++) {
    // sample the polar through convex mixes of its axis vertices
    std::vector<Pt> rows(a->n());
    for (int w = 0; w < a->n(); w++) {
      Gens verts = {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
      rows[w] = hull_sample(rng, verts);
    }
    auto z = V(a, std::move(rows));
    REQUIRE(p.contains(z));
    for (int w = 0; w < a->n(); w++) {
      bool covered = false;
      for (const auto& c : net.centers[w]) {
        Rat d2(0);
        for (size_t l = 0; l < 2; l++) {
          Rat d = z.v[w][l] - c[l];
          d2 += d * d;
        }
        if (d2 < eps.v[w] * eps.v[w]) {
          covered = true;
          break;
        }
      }
      CHECK(covered);
    }
  }
}

TEST_CASE("pairings against a fixed set are uniformly bounded") {
  Rng rng{0x5ca1ab1e00ull};
  auto a = alg3();
  std::vector<size_t> dims{2, 3, 2};
  for (int iter = 0; iter < 30; iter++) {
    auto y = random_poly(rng, a, dims, 4);
    auto f = random_vec(rng, a, dims);
    auto hi = support_value(y, f);
    std::vector<Pt> nf(a->n());
    for (int w = 0; w < a->n(); w++)
      for (const auto& c : f.v[w]) nf[w].push_back(-c);
    auto lo = support_value(y, V(a, std::move(nf)));
    auto bound = cond_sup({hi, lo});
    for (int s = 0; s < 6; s++) {
      auto x = hull_sample_vec(rng, y);
      auto val = functional_value(f, x);
      for (int w = 0; w < a->n(); w++) {
        Rat abs = val.v[w] < 0 ? Rat(-val.v[w]) : val.v[w];
        CHECK(abs <= bound.v[w]);
      }
    }
  }
}
