#include <catch2/catch_amalgamated.hpp>

#include "condsets/boolalg.hpp"
#include "condsets/rng.hpp"

using namespace condsets;

namespace {
AlgebraPtr alg3() { return Algebra::make({"w1", "w2", "w3"}); }

Condition C(const AlgebraPtr& a, std::initializer_list<const char*> names) {
  std::vector<std::string> v;
  for (auto* n : names) v.emplace_back(n);
  return Condition::of_atoms(a, v);
}
}  // namespace

TEST_CASE("lattice operations on conditions") {
  auto a = alg3();
  CHECK((C(a, {"w1", "w2"}) & C(a, {"w2", "w3"})) == C(a, {"w2"}));
  CHECK((C(a, {"w1"}) | C(a, {"w2"})) == C(a, {"w1", "w2"}));
  CHECK(C(a, {"w1"}).complement() == C(a, {"w2", "w3"}));
  CHECK(C(a, {"w1"}).leq(C(a, {"w1", "w2"})));
  CHECK_FALSE(C(a, {"w1", "w3"}).leq(C(a, {"w1", "w2"})));

  Condition x = C(a, {"w1", "w3"});
  CHECK((x & Condition::one(a)) == x);
  CHECK((x & x.complement()) == Condition::zero(a));
  CHECK((x | x.complement()) == Condition::one(a));
}

TEST_CASE("algebra mismatch is rejected") {
  auto a = alg3();
  auto b = Algebra::make({"u1", "u2"});
  CHECK_THROWS_AS(C(a, {"w1"}) & Condition::one(b), CondError);
  try {
    (void)(C(a, {"w1"}) | Condition::one(b));
    FAIL("expected AlgebraMismatch");
  } catch (const CondError& e) {
    CHECK(e.code == Errc::AlgebraMismatch);
  }
}

TEST_CASE("algebra validation") {
  CHECK_THROWS_AS(Algebra::make({}), CondError);
  CHECK_THROWS_AS(Algebra::make({"w", "w"}), CondError);
  CHECK_THROWS_AS(Algebra::make({"w1", "w2"}, {Rat(1)}), CondError);
  CHECK_THROWS_AS(Algebra::make({"w1", "w2"}, {Rat(1), Rat(1)}), CondError);
  CHECK_THROWS_AS(Algebra::make({"w1", "w2"}, {Rat(3, 2), Rat(-1, 2)}), CondError);
  auto a = Algebra::make({"w1", "w2"}, {make_rat(1, 3), make_rat(2, 3)});
  CHECK(Condition::one(a).weight() == 1);
  CHECK(Condition::atom(a, 1).weight() == make_rat(2, 3));
  CHECK_THROWS_AS(Condition::one(alg3()).weight(), CondError);
}

TEST_CASE("disjointify follows the well-ordering recipe") {
  auto a = alg3();

  // frozen: [{w1,w2},{w2,w3}] -> ({w1,w2},{w3}) on base {w1,w2,w3}
  Partition p = disjointify(a, {C(a, {"w1", "w2"}), C(a, {"w2", "w3"})});
  REQUIRE(p.parts.size() == 2);
  CHECK(p.base == Condition::one(a));
  CHECK(p.parts[0] == C(a, {"w1", "w2"}));
  CHECK(p.parts[1] == C(a, {"w3"}));

  // singleton family
  Partition q = disjointify(a, {C(a, {"w1", "w3"})});
  REQUIRE(q.parts.size() == 1);
  CHECK(q.parts[0] == C(a, {"w1", "w3"}));

  // frozen: [{w1},{w1}] -> ({w1}, 0): the second part is forced to zero
  Partition r = disjointify(a, {C(a, {"w1"}), C(a, {"w1"})});
  REQUIRE(r.parts.size() == 2);
  CHECK(r.parts[0] == C(a, {"w1"}));
  CHECK(r.parts[1].is_zero());
  CHECK(r.base == C(a, {"w1"}));
}

TEST_CASE("refine produces all pairwise meets in i-major order") {
  auto a = alg3();
  Partition p = make_partition(Condition::one(a), {C(a, {"w1"}), C(a, {"w2", "w3"})});
  Partition q = make_partition(Condition::one(a), {C(a, {"w1", "w2"}), C(a, {"w3"})});

  Partition r = refine(p, q);
  REQUIRE(r.parts.size() == 4);
  CHECK(r.parts[0] == C(a, {"w1"}));
  CHECK(r.parts[1].is_zero());
  CHECK(r.parts[2] == C(a, {"w2"}));
  CHECK(r.parts[3] == C(a, {"w3"}));
  CHECK(is_partition(r));

  // refining with the trivial partition gives p back (up to zero parts)
  Partition t = refine(p, Partition(Condition::one(a), {Condition::one(a)}));
  REQUIRE(t.parts.size() == p.parts.size());
  for (size_t i = 0; i < t.parts.size(); i++) CHECK(t.parts[i] == p.parts[i]);

  CHECK_FALSE(is_partition(Partition(C(a, {"w1"}), {C(a, {"w1"}), C(a, {"w1"})})));
  CHECK_THROWS_AS(refine(p, Partition(C(a, {"w1"}), {C(a, {"w1"})})), CondError);
}

TEST_CASE("boolean algebra axioms hold on random conditions") {
  Rng rng(0xb001a1ull);
  for (int n = 1; n <= 4; n++) {
    std::vector<std::string> names;
    for (int i = 0; i < n; i++) names.push_back("w" + std::to_string(i + 1));
    auto a = Algebra::make(names);
    for (int it = 0; it < 200; it++) {
      Condition x(a, rng.next() & a->full_mask());
      Condition y(a, rng.next() & a->full_mask());
      Condition z(a, rng.next() & a->full_mask());
      CHECK(((x & y) & z) == (x & (y & z)));
      CHECK(((x | y) | z) == (x | (y | z)));
      CHECK((x & y) == (y & x));
      CHECK((x | y) == (y | x));
      CHECK((x & (x | y)) == x);
      CHECK((x | (x & y)) == x);
      CHECK((x & (y | z)) == ((x & y) | (x & z)));
      CHECK((x | (y & z)) == ((x | y) & (x | z)));
      CHECK((x & y).complement() == (x.complement() | y.complement()));
      CHECK((x | y).complement() == (x.complement() & y.complement()));
      CHECK(x.complement().complement() == x);
    }
  }
}

TEST_CASE("disjointify postconditions on random families") {
  Rng rng(0xd15c0ull);
  auto a = Algebra::make({"w1", "w2", "w3", "w4"});
  for (int it = 0; it < 300; it++) {
    std::vector<Condition> fam;
    int k = static_cast<int>(rng.range(1, 5));
    for (int i = 0; i < k; i++) fam.push_back(Condition(a, rng.next() & a->full_mask()));
    Partition p = disjointify(a, fam);
    CHECK(is_partition(p));
    CHECK(p.base == join_all(a, fam));
    for (int i = 0; i < k; i++) CHECK(p.parts[i].leq(fam[i]));
  }
  CHECK_THROWS_AS(disjointify(a, {}), CondError);
}

TEST_CASE("refine parts sit below both inputs") {
  Rng rng(0x4e71e);
  auto a = Algebra::make({"w1", "w2", "w3", "w4"});
  for (int it = 0; it < 200; it++) {
    Condition base(a, rng.next() & a->full_mask());
    auto random_partition = [&](Condition b) {
      std::vector<Condition> fam;
      int k = static_cast<int>(rng.range(1, 4));
      for (int i = 0; i < k; i++)
        fam.push_back(Condition(a, rng.next() & b.mask));
      Partition d = disjointify(a, fam);
      // pad the remainder so the join equals b
      d.parts.push_back(b - d.base);
      return Partition(b, d.parts);
    };
    Partition p = random_partition(base), q = random_partition(base);
    REQUIRE(is_partition(p));
    REQUIRE(is_partition(q));
    Partition r = refine(p, q);
    CHECK(is_partition(r));
    for (size_t i = 0; i < p.parts.size(); i++)
      for (size_t j = 0; j < q.parts.size(); j++) {
        const Condition& part = r.parts[i * q.parts.size() + j];
        CHECK(part.leq(p.parts[i]));
        CHECK(part.leq(q.parts[j]));
      }
  }
}

TEST_CASE("subconditions enumerate the relative algebra") {
  auto a = alg3();
  auto subs = subconditions(C(a, {"w1", "w3"}));
  REQUIRE(subs.size() == 4);
  CHECK(subs[0].is_zero());
  CHECK(subs.back() == C(a, {"w1", "w3"}));
  auto all = subconditions(Condition::one(a));
  CHECK(all.size() == 8);
}
