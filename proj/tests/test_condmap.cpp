#include <catch2/catch_amalgamated.hpp>

#include "condsets/condmap.hpp"
#include "condsets/rng.hpp"

using namespace condsets;

namespace {

AlgebraPtr alg2() { return Algebra::make({"w1", "w2"}); }

CondSubset S(const CondSetPtr& x, std::vector<std::vector<Value>> pw) {
  return CondSubset::make(x, std::move(pw));
}

CondElement E2(const CondSetPtr& x, const Value& v1, const Value& v2) {
  return CondElement::make(x, x->alg->full_mask(), {v1, v2});
}

// random function between random small conditional sets
struct FnCase {
  CondSetPtr dom, cod;
  CondFunction f;
};

FnCase random_fn(Rng& rng, int max_atoms = 3, int max_carrier = 4) {
  int n = static_cast<int>(rng.range(1, max_atoms));
  std::vector<std::string> names;
  for (int i = 0; i < n; i++) names.push_back("w" + std::to_string(i + 1));
  auto a = Algebra::make(names);
  auto mkset = [&]() {
    std::vector<std::vector<Value>> c(n);
    for (int w = 0; w < n; w++) {
      int m = static_cast<int>(rng.range(1, max_carrier));
      for (int i = 0; i < m; i++) c[w].push_back(Value(i));
    }
    return CondSet::make(a, std::move(c));
  };
  FnCase fc{mkset(), mkset(), CondFunction{}};
  std::vector<std::map<Value, Value>> tbl(n);
  for (int w = 0; w < n; w++)
    for (const auto& v : fc.dom->carrier[w])
      tbl[w][v] = rng.pick(fc.cod->carrier[w]);
  fc.f = CondFunction::make(fc.dom, fc.cod, std::move(tbl));
  return fc;
}

CondSubset random_subset(Rng& rng, const CondSetPtr& x) {
  std::vector<std::vector<Value>> pw(x->n_atoms());
  for (int w = 0; w < x->n_atoms(); w++)
    for (const auto& v : x->carrier[w])
      if (rng.coin()) pw[w].push_back(v);
  return CondSubset::make(x, std::move(pw));
}

}  // namespace

TEST_CASE("apply and composition act atomwise") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  auto id = CondFunction::identity(x);
  CondElement e = E2(x, Value("p"), Value("q"));
  CHECK(id.apply(e) == e);

  // swap at w1, identity at w2
  std::vector<std::map<Value, Value>> tbl(2);
  tbl[0][Value("p")] = Value("q");
  tbl[0][Value("q")] = Value("p");
  tbl[1][Value("p")] = Value("p");
  tbl[1][Value("q")] = Value("q");
  auto f = CondFunction::make(x, x, tbl);
  CHECK(f.apply(e) == E2(x, Value("q"), Value("q")));
  CHECK(compose(f, f).apply(e) == e);

  // partial tables are rejected
  std::vector<std::map<Value, Value>> part(2);
  part[0][Value("p")] = Value("q");
  part[1][Value("p")] = Value("p");
  CHECK_THROWS_AS(CondFunction::make(x, x, part), CondError);
}

TEST_CASE("projections glue pairs back to their coordinates") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  auto y = CondSet::generate(a, {Value(1), Value(2)});
  auto prod = CondSet::product({x, y});
  auto pi1 = CondFunction::projection(prod, x, 0);
  auto pi2 = CondFunction::projection(prod, y, 1);

  CondElement pair = E2(prod, Value(Value::Tuple{Value("p"), Value(2)}),
                        Value(Value::Tuple{Value("q"), Value(1)}));
  CHECK(pi1.apply(pair) == E2(x, Value("p"), Value("q")));
  CHECK(pi2.apply(pair) == E2(y, Value(2), Value(1)));
}

TEST_CASE("apply commutes with amalgamation") {
  Rng rng(0xa11a);
  for (int it = 0; it < 100; it++) {
    FnCase fc = random_fn(rng);
    const auto& alg = fc.dom->alg;
    auto elems = elements_of(CondSubset::full(fc.dom));
    CondElement x1 = rng.pick(elems), x2 = rng.pick(elems);
    Condition b(alg, rng.next() & alg->full_mask());
    Partition p = make_partition(Condition::one(alg), {b, b.complement()});
    CHECK(fc.f.apply(amalgamate(p, {x1, x2})) ==
          amalgamate(p, {fc.f.apply(x1), fc.f.apply(x2)}));
  }
}

TEST_CASE("image frozen examples") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  auto u = S(x, {{Value("p")}, {Value("p"), Value("q")}});
  CHECK(image(CondFunction::identity(x), u) == u);

  // constant per atom
  std::vector<std::map<Value, Value>> tbl(2);
  for (const char* v : {"p", "q"}) {
    tbl[0][Value(v)] = Value("q");
    tbl[1][Value(v)] = Value("p");
  }
  auto c = CondFunction::make(x, x, tbl);
  CHECK(image(c, CondSubset::full(x)) == S(x, {{Value("q")}, {Value("p")}}));

  // distinct per-atom maps, computed atomwise
  std::vector<std::map<Value, Value>> tbl2(2);
  tbl2[0][Value("p")] = Value("q");
  tbl2[0][Value("q")] = Value("q");
  tbl2[1][Value("p")] = Value("p");
  tbl2[1][Value("q")] = Value("p");
  auto f = CondFunction::make(x, x, tbl2);
  CHECK(image(f, u) == S(x, {{Value("q")}, {Value("p")}}));
}

TEST_CASE("preimage support joins the atoms that are hit") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  auto y = CondSet::generate(a, {Value(1), Value(2)});

  CHECK(preimage(CondFunction::identity(x), CondSubset::full(x)) == CondSubset::full(x));

  // f hits 2 only at w2: preimage of {2} lives on {w2} only
  std::vector<std::map<Value, Value>> tbl(2);
  tbl[0][Value("p")] = Value(1);
  tbl[0][Value("q")] = Value(1);
  tbl[1][Value("p")] = Value(1);
  tbl[1][Value("q")] = Value(2);
  auto f = CondFunction::make(x, y, tbl);
  CondSubset v = S(y, {{Value(2)}, {Value(2)}});
  CondSubset pre = preimage(f, v);
  CHECK(pre == S(x, {{}, {Value("q")}}));
  CHECK(pre.support_cond() == Condition::atom(a, 1));
}

TEST_CASE("injectivity and surjectivity are per-atom") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  CHECK(is_bijective(CondFunction::identity(x)));

  // injective at w1, collapsing at w2
  std::vector<std::map<Value, Value>> tbl(2);
  tbl[0][Value("p")] = Value("q");
  tbl[0][Value("q")] = Value("p");
  tbl[1][Value("p")] = Value("p");
  tbl[1][Value("q")] = Value("p");
  auto f = CondFunction::make(x, x, tbl);
  CHECK_FALSE(is_injective(f));
  CHECK_FALSE(is_surjective(f));

  // generated by a classical injection
  std::map<Value, Value> inj{{Value("p"), Value(1)}, {Value("q"), Value(2)}};
  auto y = CondSet::generate(a, {Value(1), Value(2), Value(3)});
  CHECK(is_injective(CondFunction::from_classical(x, y, inj)));

  // surjectivity equals primal-level surjectivity: image of X is the codomain
  Rng rng(0x5035);
  for (int it = 0; it < 100; it++) {
    FnCase fc = random_fn(rng);
    CHECK(is_surjective(fc.f) ==
          (image(fc.f, CondSubset::full(fc.dom)) == CondSubset::full(fc.cod)));
  }
}

TEST_CASE("function identities hold exactly") {
  Rng rng(0xf051);
  for (int it = 0; it < 200; it++) {
    FnCase fc = random_fn(rng);
    CondSubset u1 = random_subset(rng, fc.dom), u2 = random_subset(rng, fc.dom);
    CondSubset v1 = random_subset(rng, fc.cod), v2 = random_subset(rng, fc.cod);
    const auto& f = fc.f;
    CondSubset fx = image(f, CondSubset::full(fc.dom));

    // joins
    CHECK(image(f, cond_union(u1, u2)) == cond_union(image(f, u1), image(f, u2)));
    CHECK(preimage(f, cond_union(v1, v2)) ==
          cond_union(preimage(f, v1), preimage(f, v2)));
    // meets
    CHECK(subset_leq(image(f, cond_intersection(u1, u2)),
                     cond_intersection(image(f, u1), image(f, u2))));
    CHECK(preimage(f, cond_intersection(v1, v2)) ==
          cond_intersection(preimage(f, v1), preimage(f, v2)));
    // complements
    CHECK(subset_leq(cond_intersection(cond_complement(image(f, u1)), fx),
                     image(f, cond_complement(u1))));
    CHECK(preimage(f, cond_complement(v1)) == cond_complement(preimage(f, v1)));
    // monotonicity
    CondSubset u12 = cond_union(u1, u2), v12 = cond_union(v1, v2);
    CHECK(subset_leq(image(f, u1), image(f, u12)));
    CHECK(subset_leq(preimage(f, v1), preimage(f, v12)));
    // round trips
    CHECK(subset_leq(u1, preimage(f, image(f, u1))));
    CHECK(subset_leq(image(f, preimage(f, v1)), v1));
    if (is_injective(f)) CHECK(preimage(f, image(f, u1)) == u1);
    CHECK(image(f, preimage(f, v1)) == cond_intersection(v1, fx));
    if (subset_leq(v1, fx)) CHECK(image(f, preimage(f, v1)) == v1);
  }
}

TEST_CASE("trichotomy comparison under generated total orders") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value(1), Value(2), Value(3)});
  CondOrder ord = CondOrder::natural(x);

  CondElement e1 = E2(x, Value(1), Value(2));
  Trichotomy t = compare_total(ord, e1, e1);
  CHECK(t.eq == Condition::one(a));
  CHECK(t.lt.is_zero());
  CHECK(t.gt.is_zero());

  Trichotomy t2 = compare_total(ord, e1, E2(x, Value(2), Value(3)));
  CHECK(t2.lt == Condition::one(a));

  // frozen mixed case: (1,3) vs (2,2) -> lt on w1, gt on w2, eq nowhere
  Trichotomy t3 = compare_total(ord, E2(x, Value(1), Value(3)), E2(x, Value(2), Value(2)));
  CHECK(t3.lt == Condition::atom(a, 0));
  CHECK(t3.gt == Condition::atom(a, 1));
  CHECK(t3.eq.is_zero());
  CHECK(is_partition(t3.as_partition()));

  Rng rng(0x731);
  for (int it = 0; it < 100; it++) {
    auto es = elements_of(CondSubset::full(x));
    Trichotomy tr = compare_total(ord, rng.pick(es), rng.pick(es));
    CHECK(is_partition(tr.as_partition()));
  }
}

TEST_CASE("a conditionally total order needs a trivial algebra") {
  // two elements crossing each other are incomparable over any proper
  // condition: totality on the primal level forces one atom
  auto a = alg2();
  auto x = CondSet::generate(a, {Value(1), Value(2)});
  CondOrder ord = CondOrder::natural(x);
  CondElement e = E2(x, Value(1), Value(2));
  CondElement g = E2(x, Value(2), Value(1));
  Trichotomy t = compare_total(ord, e, g);
  // neither e <= g nor g <= e on the whole of 1
  CHECK(t.lt != Condition::one(a));
  CHECK(t.gt != Condition::one(a));
  CHECK(t.eq != Condition::one(a));
  // on the trivial algebra every pair is comparable
  auto a1 = Algebra::make({"w"});
  auto x1 = CondSet::generate(a1, {Value(1), Value(2)});
  CondOrder ord1 = CondOrder::natural(x1);
  for (const auto& p : elements_of(CondSubset::full(x1)))
    for (const auto& q : elements_of(CondSubset::full(x1))) {
      Trichotomy tq = compare_total(ord1, p, q);
      CHECK((tq.lt.is_one() || tq.gt.is_one() || tq.eq.is_one()));
    }
}

TEST_CASE("conditional sup and inf") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value(1), Value(2), Value(3)});
  CondOrder ord = CondOrder::natural(x);

  CondElement single = E2(x, Value(2), Value(1));
  CHECK(cond_sup(ord, CondSubset::of_element(single)) == single);
  CHECK(cond_inf(ord, CondSubset::of_element(single)) == single);

  // frozen: pointwise {1,3} at w1 and {2} at w2 -> sup (3,2), inf (1,2)
  CondSubset y = S(x, {{Value(1), Value(3)}, {Value(2)}});
  CHECK(cond_sup(ord, y) == E2(x, Value(3), Value(2)));
  CHECK(cond_inf(ord, y) == E2(x, Value(1), Value(2)));

  auto bounds = cond_bounds(ord, y);
  REQUIRE(bounds.has_value());
  CHECK(bounds->first == E2(x, Value(1), Value(2)));
  CHECK(bounds->second == E2(x, Value(3), Value(2)));

  // a flat partial order (only reflexive pairs) has no sup of a doubleton
  std::vector<std::set<std::pair<Value, Value>>> rel(2);
  for (int w = 0; w < 2; w++)
    for (const auto& v : x->carrier[w]) rel[w].insert({v, v});
  CondOrder flat =
      CondOrder::make(CondRelation::make(x, a->full_mask(), rel), false);
  CondSubset two = S(x, {{Value(1), Value(2)}, {Value(1)}});
  CHECK_THROWS_AS(cond_sup(flat, two), CondError);
  CHECK_FALSE(cond_bounds(flat, two).has_value());
  // and compare_total refuses partial orders
  CHECK_THROWS_AS(compare_total(flat, single, single), CondError);
}

TEST_CASE("conditional cardinality and finite enumeration") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q"), Value("r")});

  // frozen: per-atom sizes (2,3)
  CondSubset y = S(x, {{Value("p"), Value("q")}, {Value("p"), Value("q"), Value("r")}});
  CondNat n = cond_card(y);
  CHECK(n.v == std::vector<std::int64_t>{2, 3});

  CHECK(cond_card(CondSubset::of_element(E2(x, Value("p"), Value("q")))) ==
        CondNat::constant(a, 1));

  FiniteEnumeration fe = cond_finite_bijection(y);
  CHECK(is_bijective(fe.to_idx));
  CHECK(is_bijective(fe.from_idx));
  auto round = compose(fe.from_idx, fe.to_idx);
  for (const auto& e : elements_of(CondSubset::full(fe.sub)))
    CHECK(round.apply(e) == e);

  // the interval target is {1..n} pointwise
  auto iv = interval_condset(n);
  CHECK(iv->carrier[0] == std::vector<Value>{Value(1), Value(2)});
  CHECK(iv->carrier[1] == std::vector<Value>{Value(1), Value(2), Value(3)});

  CHECK_THROWS_AS(cond_card(S(x, {{Value("p")}, {}})), CondError);
}

TEST_CASE("stitched finite unions match the pointwise route") {
  Rng rng(0x4ef1);
  for (int it = 0; it < 100; it++) {
    int na = static_cast<int>(rng.range(1, 3));
    std::vector<std::string> names;
    for (int i = 0; i < na; i++) names.push_back("w" + std::to_string(i + 1));
    auto a = Algebra::make(names);
    auto x = CondSet::generate(a, {Value(0), Value(1), Value(2)});

    // n = sum a_i n_i with random per-atom counts
    std::vector<std::int64_t> counts(na);
    for (auto& c : counts) c = rng.range(1, 3);
    CondNat n = CondNat::make(a, a->full_mask(), counts);
    auto idx = interval_condset(n);

    std::vector<std::map<Value, std::vector<Value>>> sets(na);
    for (int w = 0; w < na; w++)
      for (std::int64_t k = 1; k <= counts[w]; k++) {
        std::vector<Value> pts;
        while (pts.empty())
          for (const auto& v : x->carrier[w])
            if (rng.coin()) pts.push_back(v);
        sets[w][Value(k)] = pts;
      }
    SubsetFamily fam = SubsetFamily::make(idx, x, sets);

    CondSubset direct = finite_union(fam, n);

    // stitched route: group atoms by their count, take uniform finite unions
    // per group, then amalgamate the pieces
    std::map<std::int64_t, std::uint64_t> groups;
    for (int w = 0; w < na; w++) groups[counts[w]] |= 1ULL << w;
    std::vector<Condition> parts;
    std::vector<CondSubset> picks;
    for (const auto& [k, mask] : groups) {
      Condition part(a, mask);
      std::vector<CondSubset> members;
      for (std::int64_t j = 1; j <= k; j++) {
        std::vector<std::vector<Value>> pw(na);
        for (int w = 0; w < na; w++)
          if (mask & (1ULL << w)) pw[w] = sets[w].at(Value(j));
        members.push_back(CondSubset::make(x, pw));
      }
      parts.push_back(part);
      picks.push_back(cond_union(x, members).restrict(part));
    }
    CondSubset stitched =
        amalgamate_subsets(make_partition(Condition::one(a), parts), picks);
    CHECK(stitched == direct);

    // conditionally finite unions stay conditionally finite
    CHECK(cond_card(direct).lives_on_one());
  }
}

TEST_CASE("constructive choice") {
  auto a = alg2();
  auto x = CondSet::generate(a, {Value("p"), Value("q")});
  auto idx = CondSet::generate(a, {Value(1), Value(2)});

  // family of singletons: the unique selection
  std::vector<std::map<Value, std::vector<Value>>> sets(2);
  for (int w = 0; w < 2; w++) {
    sets[w][Value(1)] = {Value("p")};
    sets[w][Value(2)] = {Value("q")};
  }
  SubsetFamily singles = SubsetFamily::make(idx, x, sets);
  CondFunction pick = choice(singles);
  for (int w = 0; w < 2; w++) {
    CHECK(pick.at(w, Value(1)) == Value("p"));
    CHECK(pick.at(w, Value(2)) == Value("q"));
  }

  // {p,q} everywhere picks the least point, constantly p
  std::vector<std::map<Value, std::vector<Value>>> sets2(2);
  for (int w = 0; w < 2; w++)
    for (int i = 1; i <= 2; i++) sets2[w][Value(i)] = {Value("p"), Value("q")};
  SubsetFamily both = SubsetFamily::make(idx, x, sets2);
  CondFunction pick2 = choice(both);
  for (int w = 0; w < 2; w++)
    for (int i = 1; i <= 2; i++) CHECK(pick2.at(w, Value(i)) == Value("p"));

  // membership and stability: y^i belongs to Y^i and choice commutes with
  // restriction
  Rng rng(0xc401ce);
  for (int it = 0; it < 50; it++) {
    std::vector<std::map<Value, std::vector<Value>>> sets3(2);
    for (int w = 0; w < 2; w++)
      for (int i = 1; i <= 2; i++) {
        std::vector<Value> pts;
        while (pts.empty())
          for (const auto& v : x->carrier[w])
            if (rng.coin()) pts.push_back(v);
        sets3[w][Value(i)] = pts;
      }
    SubsetFamily fam = SubsetFamily::make(idx, x, sets3);
    CondFunction sel = choice(fam);
    for (const auto& i : elements_of(CondSubset::full(idx))) {
      CondElement yi = sel.apply(i);
      CHECK(fam.member(i).contains(yi));
      Condition cut(a, rng.next() & a->full_mask());
      CHECK(sel.apply(i.restrict(cut)) == yi.restrict(cut));
    }
  }
}
