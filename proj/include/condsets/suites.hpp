#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "condsets/gen.hpp"
#include "condsets/json_io.hpp"
#include "condsets/powerset.hpp"

namespace condsets {

// One violated law per failing case; the counterexample is the shrunken
// instance, serialized so the failure can be reproduced and re-checked.
struct SuiteFailure {
  std::size_t case_index = 0;
  std::string law;
  Json counterexample;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_ms = 0;  // informational; excluded from reports unless asked for
};

// fault selects a deliberately broken operation so the failure pipeline
// (detection, shrinking, reporting) can itself be exercised end to end.
inline constexpr int kFaultNone = 0;
inline constexpr int kFaultComplementSupport = 1;

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  int atoms_max = 3;
  int carrier_max = 4;
  int fault = kFaultNone;
  unsigned threads = 0;  // 0 picks a hardware default
};

// Every case draws from its own stream derived from (seed, index), so the
// work pool's scheduling cannot change what any case sees.
inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return r.next();
}

namespace detail {

inline void parallel_cases(std::size_t cases, unsigned threads,
                           const std::function<void(std::size_t)>& body) {
  unsigned n = threads ? threads : std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  if (n <= 1 || cases < 2) {
    for (std::size_t i = 0; i < cases; i++) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; t++)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < cases;) body(i);
    });
  for (auto& th : pool) th.join();
}

// Greedy shrink: take the first candidate that still fails, repeat until
// none does. Every accepted candidate fails, so shrinking preserves failure.
template <class Inst, class Fails, class Shrinks>
Inst minimize_instance(Inst inst, Fails&& fails, Shrinks&& shrinks) {
  for (int rounds = 0; rounds < 256; rounds++) {
    bool progress = false;
    for (auto& cand : shrinks(inst))
      if (fails(cand)) {
        inst = std::move(cand);
        progress = true;
        break;
      }
    if (!progress) break;
  }
  return inst;
}

}  // namespace detail

// ----- power set suite -----

struct PowersetInstance {
  CondSetPtr x;
  CondSubset y, z, w;
};

using ComplementFn = std::function<CondSubset(const CondSubset&)>;

inline ComplementFn honest_complement() {
  return [](const CondSubset& y) { return cond_complement(y); };
}

// The injected fault: per-atom set difference on the support only. It
// forgets that off its support a subset is missing entirely, so the
// complement there must be the whole slice.
inline ComplementFn complement_without_support_fix() {
  return [](const CondSubset& y) {
    std::vector<std::vector<Value>> pw(y.parent->n_atoms());
    for (int w = 0; w < y.parent->n_atoms(); w++)
      if (y.support & (1ULL << w))
        std::set_difference(y.parent->carrier[w].begin(), y.parent->carrier[w].end(),
                            y.pw[w].begin(), y.pw[w].end(), std::back_inserter(pw[w]));
    return CondSubset::make(y.parent, std::move(pw));
  };
}

inline ComplementFn complement_for_fault(int fault) {
  return fault == kFaultComplementSupport ? complement_without_support_fix()
                                          : honest_complement();
}

inline Json powerset_instance_json(const PowersetInstance& in) {
  return Json{{"set", condset_json(in.x)},
              {"y", subset_json(in.y)},
              {"z", subset_json(in.z)},
              {"w", subset_json(in.w)}};
}

inline PowersetInstance powerset_instance_from_json(const Json& j) {
  PowersetInstance in{condset_from_json(j.at("set")), CondSubset{}, CondSubset{}, CondSubset{}};
  in.y = subset_from_json(in.x, j.at("y"));
  in.z = subset_from_json(in.x, j.at("z"));
  in.w = subset_from_json(in.x, j.at("w"));
  return in;
}

inline PowersetInstance gen_powerset_instance(Rng& rng, const GenShape& sh) {
  PowersetInstance in;
  in.x = gen_condset(rng, gen_algebra(rng, sh), sh);
  in.y = gen_subset(rng, in.x);
  in.z = gen_subset(rng, in.x);
  in.w = gen_subset(rng, in.x);
  return in;
}

// First violated law, or nothing. The complement hook feeds both the lattice
// laws and the representation cross-check, so a broken complement loses both
// against the other route.
inline std::optional<std::string> powerset_violated_law(const PowersetInstance& in,
                                                        const ComplementFn& compl_op) {
  const CondSubset& y = in.y;
  const CondSubset& z = in.z;
  const CondSubset& w = in.w;
  CondSubset cy = compl_op(y);
  if (compl_op(cy) != y) return "double-complement";
  if (!cond_intersection(y, cy).is_zero()) return "complement-meet-zero";
  if (cond_union(y, cy) != CondSubset::full(in.x)) return "complement-join-full";
  if (compl_op(cond_union(y, z)) != cond_intersection(cy, compl_op(z)))
    return "de-morgan-union";
  if (compl_op(cond_intersection(y, z)) != cond_union(cy, compl_op(z)))
    return "de-morgan-inter";
  if (cond_union(cond_union(y, z), w) != cond_union(y, cond_union(z, w)))
    return "union-assoc";
  if (cond_intersection(cond_intersection(y, z), w) !=
      cond_intersection(y, cond_intersection(z, w)))
    return "inter-assoc";
  if (cond_union(y, z) != cond_union(z, y)) return "union-comm";
  if (cond_intersection(y, z) != cond_intersection(z, y)) return "inter-comm";
  if (cond_intersection(y, cond_union(z, w)) !=
      cond_union(cond_intersection(y, z), cond_intersection(y, w)))
    return "distrib-inter-union";
  if (cond_union(y, cond_intersection(z, w)) !=
      cond_intersection(cond_union(y, z), cond_union(y, w)))
    return "distrib-union-inter";
  if (to_atoms(formula_union_pair(from_atoms(y), from_atoms(z))) != cond_union(y, z))
    return "formula-union";
  if (to_atoms(formula_intersection_pair(from_atoms(y), from_atoms(z))) !=
      cond_intersection(y, z))
    return "formula-inter";
  if (to_atoms(formula_complement(from_atoms(y))) != compl_op(y))
    return "formula-complement";
  return std::nullopt;
}

// Shrink candidates, strongest cuts first: drop an atom, blank a subset,
// drop a carrier point, drop a single subset point.
inline std::vector<PowersetInstance> powerset_shrinks(const PowersetInstance& in) {
  std::vector<PowersetInstance> out;
  int n = in.x->n_atoms();

  auto rebuild = [&](const CondSetPtr& nx, int skip) {
    auto project = [&](const CondSubset& s) {
      std::vector<std::vector<Value>> pw;
      for (int w = 0; w < n; w++)
        if (w != skip) pw.push_back(s.pw[w]);
      return CondSubset::make(nx, std::move(pw));
    };
    out.push_back({nx, project(in.y), project(in.z), project(in.w)});
  };
  if (n > 1)
    for (int drop = 0; drop < n; drop++) {
      std::vector<std::string> names;
      std::vector<std::vector<Value>> carrier;
      for (int w = 0; w < n; w++)
        if (w != drop) {
          names.push_back(in.x->alg->atoms[w]);
          carrier.push_back(in.x->carrier[w]);
        }
      rebuild(CondSet::make(Algebra::make(names), std::move(carrier)), drop);
    }

  for (const CondSubset* s : {&in.z, &in.w, &in.y})
    if (!s->is_zero()) {
      PowersetInstance c = in;
      (s == &in.y ? c.y : s == &in.z ? c.z : c.w) = CondSubset::zero(in.x);
      out.push_back(std::move(c));
    }

  for (int w = 0; w < n; w++) {
    if (in.x->carrier[w].size() < 2) continue;
    for (const auto& v : in.x->carrier[w]) {
      std::vector<std::vector<Value>> carrier = in.x->carrier;
      carrier[w].erase(std::find(carrier[w].begin(), carrier[w].end(), v));
      CondSetPtr nx = CondSet::make(in.x->alg, std::move(carrier));
      auto strip = [&](const CondSubset& s) {
        std::vector<std::vector<Value>> pw = s.pw;
        auto it = std::find(pw[w].begin(), pw[w].end(), v);
        if (it != pw[w].end()) pw[w].erase(it);
        return CondSubset::make(nx, std::move(pw));
      };
      out.push_back({nx, strip(in.y), strip(in.z), strip(in.w)});
    }
  }

  for (const CondSubset* s : {&in.y, &in.z, &in.w})
    for (int w = 0; w < n; w++)
      for (const auto& v : s->pw[w]) {
        PowersetInstance c = in;
        std::vector<std::vector<Value>> pw = s->pw;
        pw[w].erase(std::find(pw[w].begin(), pw[w].end(), v));
        (s == &in.y ? c.y : s == &in.z ? c.z : c.w) = CondSubset::make(in.x, std::move(pw));
        out.push_back(std::move(c));
      }
  return out;
}

inline std::optional<SuiteFailure> run_powerset_case(Rng& rng, const GenShape& sh,
                                                     const ComplementFn& compl_op) {
  PowersetInstance in = gen_powerset_instance(rng, sh);
  auto law = powerset_violated_law(in, compl_op);
  if (!law) return std::nullopt;
  auto fails = [&](const PowersetInstance& c) {
    return powerset_violated_law(c, compl_op).has_value();
  };
  PowersetInstance small = detail::minimize_instance(in, fails, powerset_shrinks);
  SuiteFailure f;
  f.law = *powerset_violated_law(small, compl_op);
  f.counterexample = powerset_instance_json(small);
  return f;
}

// ----- function suite -----

struct FunctionsInstance {
  CondSetPtr dom, cod, cod2;
  CondFunction f, g;
  CondSubset u1, u2, v1, v2, v3;
};

inline Json functions_instance_json(const FunctionsInstance& in) {
  return Json{{"dom", condset_json(in.dom)},   {"cod", condset_json(in.cod)},
              {"cod2", condset_json(in.cod2)}, {"f", function_json(in.f)},
              {"g", function_json(in.g)},      {"u1", subset_json(in.u1)},
              {"u2", subset_json(in.u2)},      {"v1", subset_json(in.v1)},
              {"v2", subset_json(in.v2)},      {"v3", subset_json(in.v3)}};
}

inline FunctionsInstance gen_functions_instance(Rng& rng, const GenShape& sh) {
  AlgebraPtr a = gen_algebra(rng, sh);
  CondSetPtr dom = gen_condset(rng, a, sh);
  CondSetPtr cod = gen_condset(rng, a, sh);
  CondSetPtr cod2 = gen_condset(rng, a, sh);
  FunctionsInstance in{dom,
                       cod,
                       cod2,
                       gen_function(rng, dom, cod),
                       gen_function(rng, cod, cod2),
                       gen_subset(rng, dom),
                       gen_subset(rng, dom),
                       gen_subset(rng, cod),
                       gen_subset(rng, cod),
                       gen_subset(rng, cod2)};
  return in;
}

inline std::optional<std::string> functions_violated_law(const FunctionsInstance& in) {
  const CondFunction& f = in.f;
  CondSubset fx = image(f, CondSubset::full(in.dom));
  if (image(f, cond_union(in.u1, in.u2)) != cond_union(image(f, in.u1), image(f, in.u2)))
    return "image-union";
  if (preimage(f, cond_union(in.v1, in.v2)) !=
      cond_union(preimage(f, in.v1), preimage(f, in.v2)))
    return "preimage-union";
  if (!subset_leq(image(f, cond_intersection(in.u1, in.u2)),
                  cond_intersection(image(f, in.u1), image(f, in.u2))))
    return "image-inter-below";
  if (preimage(f, cond_intersection(in.v1, in.v2)) !=
      cond_intersection(preimage(f, in.v1), preimage(f, in.v2)))
    return "preimage-inter";
  if (preimage(f, cond_complement(in.v1)) != cond_complement(preimage(f, in.v1)))
    return "preimage-complement";
  if (!subset_leq(cond_intersection(cond_complement(image(f, in.u1)), fx),
                  image(f, cond_complement(in.u1))))
    return "image-complement-trace";
  CondSubset u12 = cond_union(in.u1, in.u2);
  if (!subset_leq(image(f, in.u1), image(f, u12))) return "image-monotone";
  if (!subset_leq(preimage(f, in.v1), preimage(f, cond_union(in.v1, in.v2))))
    return "preimage-monotone";
  if (!subset_leq(in.u1, preimage(f, image(f, in.u1)))) return "unit";
  if (!subset_leq(image(f, preimage(f, in.v1)), in.v1)) return "counit";
  if (image(f, preimage(f, in.v1)) != cond_intersection(in.v1, fx)) return "counit-trace";
  if (is_injective(f)) {
    if (preimage(f, image(f, in.u1)) != in.u1) return "injective-cancel";
    if (image(f, in.u1) == image(f, in.u2) && in.u1 != in.u2) return "injective-image-equality";
  }
  if (subset_leq(in.v1, fx) && image(f, preimage(f, in.v1)) != in.v1) return "onto-slice";
  CondFunction gf = compose(in.g, f);
  if (image(gf, in.u1) != image(in.g, image(f, in.u1))) return "compose-image";
  if (preimage(gf, in.v3) != preimage(f, preimage(in.g, in.v3))) return "compose-preimage";
  return std::nullopt;
}

inline std::vector<FunctionsInstance> functions_shrinks(const FunctionsInstance& in) {
  std::vector<FunctionsInstance> out;
  auto subsets = {&FunctionsInstance::u1, &FunctionsInstance::u2, &FunctionsInstance::v1,
                  &FunctionsInstance::v2, &FunctionsInstance::v3};
  for (auto m : subsets) {
    const CondSubset& s = in.*m;
    if (!s.is_zero()) {
      FunctionsInstance c = in;
      (c.*m) = CondSubset::zero(s.parent);
      out.push_back(std::move(c));
    }
    for (int w = 0; w < s.parent->n_atoms(); w++)
      for (const auto& v : s.pw[w]) {
        FunctionsInstance c = in;
        std::vector<std::vector<Value>> pw = s.pw;
        pw[w].erase(std::find(pw[w].begin(), pw[w].end(), v));
        (c.*m) = CondSubset::make(s.parent, std::move(pw));
        out.push_back(std::move(c));
      }
  }
  return out;
}

inline std::optional<SuiteFailure> run_functions_case(Rng& rng, const GenShape& sh) {
  FunctionsInstance in = gen_functions_instance(rng, sh);
  auto law = functions_violated_law(in);
  if (!law) return std::nullopt;
  auto fails = [&](const FunctionsInstance& c) {
    return functions_violated_law(c).has_value();
  };
  FunctionsInstance small = detail::minimize_instance(in, fails, functions_shrinks);
  SuiteFailure f;
  f.law = *functions_violated_law(small);
  f.counterexample = functions_instance_json(small);
  return f;
}

// ----- filter suite -----

struct FiltersInstance {
  CondSetPtr x;
  std::vector<CondSubset> gens;
};

inline Json filters_instance_json(const FiltersInstance& in) {
  Json gens = Json::array();
  for (const auto& g : in.gens) gens.push_back(subset_json(g));
  return Json{{"set", condset_json(in.x)}, {"generators", gens}};
}

// Clause checks enumerate every filter of the space, so the shape stays
// under the materialization caps: three atoms force two-point carriers.
inline FiltersInstance gen_filters_instance(Rng& rng, const GenShape& sh) {
  GenShape capped{std::min(sh.atoms_max, 3), std::min(sh.carrier_max, 4)};
  Rng probe = rng.fork();
  int n = static_cast<int>(probe.range(1, std::max(1, capped.atoms_max)));
  if (n >= 3) capped.carrier_max = std::min(capped.carrier_max, 2);
  capped.atoms_max = n;
  FiltersInstance in;
  std::vector<std::string> names;
  for (int i = 0; i < n; i++) names.push_back("w" + std::to_string(i + 1));
  in.x = gen_condset(rng, Algebra::make(names), capped);
  in.gens.push_back(gen_full_support_subset(rng, in.x));
  if (rng.coin())
    in.gens.push_back(cond_union(in.gens[0], gen_full_support_subset(rng, in.x)));
  return in;
}

inline std::optional<std::string> filters_violated_law(const FiltersInstance& in) {
  CondFilter f = generate_filter(CondFilterBase::make(in.x, in.gens));
  CondFilter u = ultrafilter_extend(f);
  for (const auto& m : f.members)
    if (!u.members.count(m)) return "extension-refines";
  if (!is_ultrafilter(u, UltraClause::Maximal)) return "extension-ultra-maximal";
  if (!is_ultrafilter(u, UltraClause::UnionSplit)) return "extension-ultra-union-split";
  if (!is_ultrafilter(u, UltraClause::ComplementSplit))
    return "extension-ultra-complement-split";
  if (!is_ultrafilter(u, UltraClause::MeetsAll)) return "extension-ultra-meets-all";
  if (ultrafilter_extend(u).members != u.members) return "extension-idempotent";
  return std::nullopt;
}

inline std::vector<FiltersInstance> filters_shrinks(const FiltersInstance& in) {
  std::vector<FiltersInstance> out;
  if (in.gens.size() > 1)
    for (std::size_t k = 0; k < in.gens.size(); k++) {
      FiltersInstance c = in;
      c.gens.erase(c.gens.begin() + static_cast<std::ptrdiff_t>(k));
      out.push_back(std::move(c));
    }
  return out;
}

inline std::optional<SuiteFailure> run_filters_case(Rng& rng, const GenShape& sh) {
  FiltersInstance in = gen_filters_instance(rng, sh);
  auto law = filters_violated_law(in);
  if (!law) return std::nullopt;
  auto fails = [&](const FiltersInstance& c) {
    try {
      return filters_violated_law(c).has_value();
    } catch (const CondError&) {
      return false;  // a shrink that breaks the base is not a counterexample
    }
  };
  FiltersInstance small = detail::minimize_instance(in, fails, filters_shrinks);
  SuiteFailure f;
  f.law = *filters_violated_law(small);
  f.counterexample = filters_instance_json(small);
  return f;
}

// ----- topology suite -----

struct TopologyInstance {
  CondSetPtr x;
  CondTopology t;
  CondSubset y, z;
  CondSetPtr x2;
  CondTopology t2;
  CondFunction f;
  // compactness block runs on a separately capped space
  CondSetPtr xs;
  CondTopology ts, ts2;
  CondSubset g, g2;
};

inline Json topology_instance_json(const TopologyInstance& in) {
  return Json{{"set", condset_json(in.x)},   {"topology", topology_json(in.t)},
              {"y", subset_json(in.y)},      {"z", subset_json(in.z)},
              {"map", function_json(in.f)},  {"topology2", topology_json(in.t2)},
              {"small_set", condset_json(in.xs)}, {"small_topology", topology_json(in.ts)},
              {"g", subset_json(in.g)},      {"g2", subset_json(in.g2)}};
}

inline TopologyInstance gen_topology_instance(Rng& rng, const GenShape& sh) {
  TopologyInstance in;
  AlgebraPtr a = gen_algebra(rng, sh);
  in.x = gen_condset(rng, a, sh);
  in.t = gen_topology(rng, in.x);
  in.y = gen_subset(rng, in.x);
  in.z = gen_subset(rng, in.x);
  in.x2 = gen_condset(rng, a, sh);
  in.t2 = gen_topology(rng, in.x2);
  in.f = gen_function(rng, in.x, in.x2);
  // limit sets and filter enumeration materialize the space, so cap harder
  GenShape small{std::min(sh.atoms_max, 2), std::min(sh.carrier_max, 3)};
  AlgebraPtr as = gen_algebra(rng, small);
  in.xs = gen_condset(rng, as, small);
  in.ts = gen_topology(rng, in.xs);
  in.ts2 = gen_topology(rng, in.xs);
  in.g = gen_full_support_subset(rng, in.xs);
  in.g2 = gen_full_support_subset(rng, in.xs);
  return in;
}

namespace detail {

inline bool compact_routes_agree(const CondTopology& t, bool& value) {
  bool cover = is_compact(t, CompactVia::Cover);
  bool ultra = is_compact(t, CompactVia::Ultrafilter);
  if (cover != ultra) return false;
  try {
    if (is_compact(t, CompactVia::Fip) != cover) return false;
  } catch (const CondError& e) {
    if (e.code != Errc::NotFinite) throw;  // over the fip pool budget; the others stand
  }
  value = cover;
  return true;
}

// Cover built from every minimal neighborhood, arranged differently per
// atom, so the greedy picks disagree across atoms and stitching has to
// produce a nontrivial partition.
inline std::vector<CondSubset> engineered_cover(Rng& rng, const CondTopology& t) {
  const CondSetPtr& x = t.space;
  int n = x->n_atoms();
  std::size_t kmax = 0;
  std::vector<std::vector<std::size_t>> order(n);
  for (int w = 0; w < n; w++) {
    for (std::size_t i = 0; i < x->carrier[w].size(); i++) order[w].push_back(i);
    for (std::size_t i = order[w].size(); i > 1; i--)
      std::swap(order[w][i - 1], order[w][rng.below(i)]);
    kmax = std::max(kmax, order[w].size());
  }
  std::vector<CondSubset> cover;
  for (std::size_t k = 0; k < kmax; k++) {
    std::vector<std::vector<Value>> pw(n);
    for (int w = 0; w < n; w++) {
      std::size_t i = order[w][k % order[w].size()];
      pw[w] = mask_point_set(x, w, t.min_nbhd[w][i]);
    }
    cover.push_back(CondSubset::make(x, std::move(pw)));
  }
  return cover;
}

inline bool stitched_subcover_valid(const CondTopology& t,
                                    const std::vector<CondSubset>& cover) {
  StitchedSubcover s = find_finite_subcover(t, cover);
  if (!is_partition(s.parts)) return false;
  if (s.parts.base.mask != t.space->alg->full_mask()) return false;
  if (s.indexes.size() != s.parts.parts.size()) return false;
  for (std::size_t g = 0; g < s.indexes.size(); g++)
    for (int w = 0; w < t.space->n_atoms(); w++) {
      if (!(s.parts.parts[g].mask & (1ULL << w))) continue;
      std::uint32_t covered = 0;
      for (std::size_t j : s.indexes[g])
        if (cover[j].support & (1ULL << w))
          covered |= point_set_mask(t.space, w, cover[j].pw[w]);
      if (covered != CondTopology::carrier_mask(t.space, w)) return false;
    }
  return true;
}

}  // namespace detail

inline std::optional<std::string> topology_violated_law(const TopologyInstance& in,
                                                        Rng& rng) {
  const CondTopology& t = in.t;
  CondSubset iy = interior(t, in.y), cyc = closure(t, in.y);
  if (!t.is_open(iy)) return "interior-open";
  if (!subset_leq(iy, in.y)) return "interior-below";
  if (interior(t, iy) != iy) return "interior-idempotent";
  if (!t.is_closed(cyc)) return "closure-closed";
  if (!subset_leq(in.y, cyc)) return "closure-above";
  if (closure(t, cyc) != cyc) return "closure-idempotent";
  if (t.is_open(in.y) != (iy == in.y)) return "open-fixed-point";
  if (t.is_closed(in.y) != (cyc == in.y)) return "closed-fixed-point";
  if (cond_complement(cyc) != interior(t, cond_complement(in.y)))
    return "interior-closure-dual";
  if (cond_complement(iy) != closure(t, cond_complement(in.y)))
    return "closure-interior-dual";
  if (closure(t, cond_union(in.y, in.z)) !=
      cond_union(closure(t, in.y), closure(t, in.z)))
    return "closure-union";
  if (interior(t, cond_intersection(in.y, in.z)) !=
      cond_intersection(interior(t, in.y), interior(t, in.z)))
    return "interior-inter";

  std::vector<std::set<std::uint32_t>> opens(in.x->n_atoms());
  for (int w = 0; w < in.x->n_atoms(); w++) opens[w] = t.opens_at(w);
  if (CondTopology::make(in.x, opens).min_nbhd != t.min_nbhd) return "opens-round-trip";

  bool oracle = true;
  for (int w = 0; w < in.x->n_atoms() && oracle; w++)
    for (std::uint32_t m : in.t2.opens_at(w)) {
      std::vector<Value> pre;
      for (const auto& v : in.x->carrier[w])
        if (m & (1u << in.x2->carrier_index(w, in.f.at(w, v)))) pre.push_back(v);
      if (!t.open_at(w, point_set_mask(in.x, w, pre))) {
        oracle = false;
        break;
      }
    }
  if (is_continuous(in.f, t, in.t2) != oracle) return "continuity-preimage";

  if (!detail::stitched_subcover_valid(t, detail::engineered_cover(rng, t)))
    return "stitched-subcover";

  // compactness and convergence on the capped space
  bool cs = false, c2 = false, cp = false;
  if (!detail::compact_routes_agree(in.ts, cs)) return "compact-triple";
  if (!detail::compact_routes_agree(in.ts2, c2)) return "compact-triple";
  CondTopology prod = product_topology({in.ts, in.ts2});
  if (!detail::compact_routes_agree(prod, cp)) return "compact-triple-product";
  if (cp != (cs && c2)) return "tychonoff-two-factors";
  std::size_t widest = 0;
  for (int w = 0; w < in.xs->n_atoms(); w++)
    widest = std::max(widest, in.xs->carrier[w].size());
  if (widest * widest * widest <= static_cast<std::size_t>(kTopologyCarrierMax)) {
    CondTopology prod3 = product_topology({in.ts, in.ts2, CondTopology::indiscrete(in.xs)});
    if (is_compact(prod3, CompactVia::Cover) != (cs && c2)) return "tychonoff-three-factors";
  }

  CondFilter fr = generate_filter(CondFilterBase::make(in.xs, {in.g}));
  CondSubset lim = limit_set(in.ts, fr);
  if (lim != closure(in.ts, in.g)) return "limit-set-closure";
  for (const auto& e : elements_of(CondSubset::full(in.xs))) {
    if (converges(in.ts, fr, e) && !lim.contains(e)) return "converges-in-limit";
    if (lim.contains(e)) {
      CondSubset mg = cond_intersection(minimal_neighborhood(in.ts, e), in.g);
      CondFilter fine = generate_filter(CondFilterBase::make(in.xs, {mg}));
      if (!converges(in.ts, fine, e)) return "cluster-refinement-converges";
      for (const auto& m : fr.members)
        if (!fine.contains(m)) return "cluster-refinement-finer";
    }
  }

  if (!is_compact(relative_topology(in.ts, closure(in.ts, in.g)), CompactVia::Cover))
    return "closed-subset-compact";
  if (!is_compact(relative_topology(in.ts, cond_union(in.g, in.g2)), CompactVia::Cover))
    return "compact-union";
  if (is_hausdorff(in.ts) && !in.ts.is_closed(in.g)) return "hausdorff-compact-closed";
  return std::nullopt;
}

inline std::vector<TopologyInstance> topology_shrinks(const TopologyInstance& in) {
  std::vector<TopologyInstance> out;
  for (const CondSubset* s : {&in.y, &in.z}) {
    if (!s->is_zero()) {
      TopologyInstance c = in;
      (s == &in.y ? c.y : c.z) = CondSubset::zero(in.x);
      out.push_back(std::move(c));
    }
    for (int w = 0; w < in.x->n_atoms(); w++)
      for (const auto& v : s->pw[w]) {
        TopologyInstance c = in;
        std::vector<std::vector<Value>> pw = s->pw;
        pw[w].erase(std::find(pw[w].begin(), pw[w].end(), v));
        (s == &in.y ? c.y : c.z) = CondSubset::make(in.x, std::move(pw));
        out.push_back(std::move(c));
      }
  }
  return out;
}

inline std::optional<SuiteFailure> run_topology_case(Rng& rng, const GenShape& sh) {
  TopologyInstance in = gen_topology_instance(rng, sh);
  // the cover arrangement draws from a forked stream so law evaluation is a
  // pure function of the instance plus one reusable stream
  Rng cover_rng = rng.fork();
  Rng probe = cover_rng;
  auto law = topology_violated_law(in, probe);
  if (!law) return std::nullopt;
  auto fails = [&](const TopologyInstance& c) {
    Rng r = cover_rng;
    return topology_violated_law(c, r).has_value();
  };
  TopologyInstance small = detail::minimize_instance(in, fails, topology_shrinks);
  Rng r = cover_rng;
  SuiteFailure f;
  f.law = *topology_violated_law(small, r);
  f.counterexample = topology_instance_json(small);
  return f;
}

// ----- number suite -----

struct NumbersInstance {
  AlgebraPtr a;
  CondReal x, y, z;
  CondRealVec va, vb, vc;
  bool with_metric = false;
  CondSetPtr space;  // metric block, every tenth case
};

inline Json numbers_instance_json(const NumbersInstance& in) {
  Json out{{"algebra", algebra_json(in.a)}, {"x", real_json(in.x)},
           {"y", real_json(in.y)},          {"z", real_json(in.z)},
           {"va", vec_json(in.va)},         {"vb", vec_json(in.vb)},
           {"vc", vec_json(in.vc)}};
  if (in.with_metric) out["metric_space"] = condset_json(in.space);
  return out;
}

inline NumbersInstance gen_numbers_instance(Rng& rng, const GenShape& sh, bool with_metric) {
  NumbersInstance in;
  in.a = gen_algebra(rng, sh);
  in.x = gen_real(rng, in.a);
  in.y = gen_real(rng, in.a);
  in.z = gen_real(rng, in.a);
  std::vector<int> dims = gen_dims(rng, in.a, 3);
  in.va = gen_vec(rng, in.a, dims);
  in.vb = gen_vec(rng, in.a, dims);
  in.vc = gen_vec(rng, in.a, dims);
  in.with_metric = with_metric;
  if (with_metric) {
    GenShape capped{sh.atoms_max, std::min(sh.carrier_max, 4)};
    in.space = gen_condset(rng, in.a, capped);
  }
  return in;
}

inline std::optional<std::string> numbers_violated_law(const NumbersInstance& in, Rng& rng) {
  const CondReal &x = in.x, &y = in.y, &z = in.z;
  CondReal zero = CondReal::constant(in.a, Rat(0));
  CondReal one = CondReal::constant(in.a, Rat(1));
  if (add(x, y) != add(y, x)) return "add-comm";
  if (add(add(x, y), z) != add(x, add(y, z))) return "add-assoc";
  if (mul(x, y) != mul(y, x)) return "mul-comm";
  if (mul(mul(x, y), z) != mul(x, mul(y, z))) return "mul-assoc";
  if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) return "distrib";
  if (add(x, zero) != x) return "add-zero";
  if (mul(x, one) != x) return "mul-one";
  if (add(x, neg(x)) != zero) return "add-inverse";
  std::uint64_t zmask = 0;
  std::vector<Rat> nzv(in.a->n());
  for (int w = 0; w < in.a->n(); w++) {
    if (x.v[w] == 0) zmask |= 1ULL << w;
    nzv[w] = x.v[w] == 0 ? Rat(1) : x.v[w];
  }
  CondReal xnz = CondReal::make(in.a, in.a->full_mask(), std::move(nzv));
  if (mul(xnz, inv(xnz)) != one) return "mul-inverse";
  if (zmask) {
    // inversion must refuse exactly on the zero set
    bool flagged = false;
    try {
      inv(x);
    } catch (const CondError& e) {
      flagged = e.code == Errc::NotInvertible && e.has_where && e.where_mask == zmask;
    }
    if (!flagged) return "inv-zero-detect";
  }

  Trichotomy cmp = compare(x, y);
  if (!is_partition(cmp.as_partition())) return "trichotomy-partition";
  if ((cmp.lt.mask | cmp.gt.mask | cmp.eq.mask) != in.a->full_mask())
    return "trichotomy-total";
  Trichotomy shifted = compare(add(x, z), add(y, z));
  if (shifted.lt.mask != cmp.lt.mask || shifted.gt.mask != cmp.gt.mask)
    return "order-translation";
  CondReal pos = add(cond_abs(z), one);
  Trichotomy scaled = compare(mul(x, pos), mul(y, pos));
  if (scaled.lt.mask != cmp.lt.mask || scaled.gt.mask != cmp.gt.mask)
    return "order-positive-scale";
  if (compare(cond_abs(add(x, y)), add(cond_abs(x), cond_abs(y))).gt.mask != 0)
    return "abs-triangle";

  CondReal s = cond_sup({x, y, z}), i = cond_inf({x, y, z});
  for (int w = 0; w < in.a->n(); w++) {
    Rat mx = std::max(std::max(x.v[w], y.v[w]), z.v[w]);
    Rat mn = std::min(std::min(x.v[w], y.v[w]), z.v[w]);
    if (s.v[w] != mx) return "sup-pointwise-max";
    if (i.v[w] != mn) return "inf-pointwise-min";
  }
  CondReal cand = gen_real(rng, in.a);
  bool upper = true;
  for (const CondReal* m : {&x, &y, &z})
    if (compare(*m, cand).gt.mask != 0) upper = false;
  if (upper && compare(s, cand).gt.mask != 0) return "sup-least";

  CondNat n = archimedean_bound(x);
  for (int w = 0; w < in.a->n(); w++) {
    if (n.v[w] < 1) return "archimedean-positive";
    if (!(Rat(Int(n.v[w])) > x.v[w])) return "archimedean-strict";
  }

  CondReal dab = dist2(in.va, in.vb), dba = dist2(in.vb, in.va);
  if (dab != dba) return "metric-symmetric";
  if (dist2(in.va, in.va) != CondReal::constant(in.a, Rat(0))) return "metric-identity";
  for (int w = 0; w < in.a->n(); w++) {
    if ((dab.v[w] == 0) != (in.va.v[w] == in.vb.v[w])) return "metric-definite";
    if (!sqrt_leq_sum(dist2(in.va, in.vc).v[w], dab.v[w], dist2(in.vb, in.vc).v[w]))
      return "metric-triangle";
  }

  if (in.with_metric) {
    FiniteMetricSpace ms = gen_metric_space(rng, in.space);
    if (!heine_borel_finite(ms).all_agree()) return "heine-borel-agree";

    std::vector<std::vector<std::pair<Rat, Rat>>> sides(in.a->n());
    for (int w = 0; w < in.a->n(); w++) {
      int d = static_cast<int>(rng.below(3)) + 1;
      for (int l = 0; l < d; l++) {
        Rat lo = rng.rat(4, 2);
        Rat width = rng.coin() ? Rat(0) : rng.rat_pos(3, 2);
        sides[w].push_back({lo, Rat(lo + width)});
      }
    }
    RatBox box = RatBox::make(in.a, in.a->full_mask(), std::move(sides));
    std::vector<Rat> ev(in.a->n());
    for (int w = 0; w < in.a->n(); w++) ev[w] = rng.rat_pos(3, 4);
    CondReal eps = CondReal::make(in.a, in.a->full_mask(), std::move(ev));
    EpsNet net = eps_net(box, eps);
    for (int w = 0; w < in.a->n(); w++) {
      Rat e2 = Rat(eps.v[w] * eps.v[w]);
      for (int probe = 0; probe < 6; probe++) {
        std::vector<Rat> p;
        for (const auto& [lo, hi] : box.sides[w])
          p.push_back(Rat(lo + Rat(Int(rng.below(5)), Int(4)) * (hi - lo)));
        bool hit = false;
        for (const auto& c : net.centers[w]) {
          Rat acc(0);
          for (std::size_t l = 0; l < p.size(); l++)
            acc += (p[l] - c[l]) * (p[l] - c[l]);
          if (acc < e2) {
            hit = true;
            break;
          }
        }
        if (!hit) return "eps-net-covers";
      }
    }
  }
  return std::nullopt;
}

inline std::optional<SuiteFailure> run_numbers_case(Rng& rng, const GenShape& sh,
                                                    bool with_metric) {
  NumbersInstance in = gen_numbers_instance(rng, sh, with_metric);
  Rng law_rng = rng.fork();
  Rng probe = law_rng;
  auto law = numbers_violated_law(in, probe);
  if (!law) return std::nullopt;
  SuiteFailure f;
  f.law = *law;
  f.counterexample = numbers_instance_json(in);
  return f;
}

// ----- linear suite -----

struct LinearInstance {
  AlgebraPtr a;
  std::vector<int> dims;
  std::vector<CondLinFunctional> family;
  CondLinFunctional f;
  bool built_as_combination = false;
  VPolytope y;
  CondRealVec u;       // extension basis vector
  VPolytope bound_gens;  // rows of the sublinear bound
};

inline Json linear_instance_json(const LinearInstance& in) {
  Json fam = Json::array();
  for (const auto& g : in.family) fam.push_back(vec_json(g));
  return Json{{"algebra", algebra_json(in.a)},
              {"family", fam},
              {"f", vec_json(in.f)},
              {"polytope", polytope_json(in.y)},
              {"basis", vec_json(in.u)},
              {"bound", polytope_json(in.bound_gens)}};
}

inline LinearInstance gen_linear_instance(Rng& rng, const GenShape& sh, int dim_max = 3) {
  LinearInstance in;
  in.a = gen_algebra(rng, sh);
  in.dims = gen_dims(rng, in.a, dim_max);
  int k = static_cast<int>(rng.range(1, 3));
  for (int j = 0; j < k; j++) in.family.push_back(gen_vec(rng, in.a, in.dims));
  in.built_as_combination = rng.coin();
  if (in.built_as_combination) {
    std::vector<std::vector<Rat>> acc(in.a->n());
    for (int w = 0; w < in.a->n(); w++) acc[w].assign(in.dims[w], Rat(0));
    for (const auto& g : in.family) {
      Rat lam = rng.rat(3, 2);
      for (int w = 0; w < in.a->n(); w++)
        for (int l = 0; l < in.dims[w]; l++) acc[w][l] += lam * g.v[w][l];
    }
    in.f = CondRealVec::make(in.a, in.a->full_mask(), std::move(acc));
  } else {
    in.f = gen_vec(rng, in.a, in.dims);
  }
  in.y = gen_polytope(rng, in.a, in.dims);
  in.u = gen_vec(rng, in.a, in.dims);
  // the extension block treats u as a one-vector subspace basis, which has
  // to stay independent (nonzero) on every atom
  for (int w = 0; w < in.a->n(); w++) {
    bool zero = true;
    for (const auto& c : in.u.v[w])
      if (c != 0) zero = false;
    if (zero) in.u.v[w][0] = Rat(1);
  }
  in.bound_gens = gen_polytope(rng, in.a, in.dims, 3, 3, 2);
  return in;
}

namespace detail {

inline Rat dot_rat(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat acc(0);
  for (std::size_t i = 0; i < a.size(); i++) acc += a[i] * b[i];
  return acc;
}

// max over the bound rows; the polyhedral sublinear functional evaluated raw
inline Rat bound_value(const VPolytope& rows, int w, const std::vector<Rat>& p) {
  Rat best = dot_rat(rows.gens[w][0], p);
  for (const auto& r : rows.gens[w]) best = std::max(best, Rat(dot_rat(r, p)));
  return best;
}

}  // namespace detail

inline std::optional<std::string> linear_violated_law(const LinearInstance& in, Rng& rng) {
  int n = in.a->n();

  DualityResult dr = duality_coeffs(in.f, in.family);
  if (in.built_as_combination && !dr.representable) return "duality-complete";
  if (dr.representable) {
    for (int w = 0; w < n; w++)
      for (int l = 0; l < in.dims[w]; l++) {
        Rat acc(0);
        for (std::size_t k = 0; k < in.family.size(); k++)
          acc += dr.coeffs[k].v[w] * in.family[k].v[w][l];
        if (acc != in.f.v[w][l]) return "duality-reconstruction";
      }
  } else {
    if (!dr.kernel_witness) return "duality-witness-missing";
    const CondRealVec& wit = *dr.kernel_witness;
    if (wit.support != dr.where_fails.mask) return "duality-witness-support";
    for (int w = 0; w < n; w++) {
      if (!(wit.support & (1ULL << w))) continue;
      for (const auto& g : in.family)
        if (detail::dot_rat(g.v[w], wit.v[w]) != 0) return "duality-witness-kernel";
      if (detail::dot_rat(in.f.v[w], wit.v[w]) == 0) return "duality-witness-separates";
    }
  }

  // extension: a one-vector subspace with a value drawn from the feasible
  // interval of the bound, then domination spot-checked around the ball
  PolyhedralSublinear k =
      PolyhedralSublinear::make(in.a, in.a->full_mask(), in.bound_gens.gens);
  std::vector<Rat> vals(n);
  bool degenerate = false;
  for (int w = 0; w < n; w++) {
    std::vector<Rat> nu(in.u.v[w]);
    for (auto& c : nu) c = -c;
    Rat hi = detail::bound_value(in.bound_gens, w, in.u.v[w]);
    Rat lo = -detail::bound_value(in.bound_gens, w, nu);
    if (lo > hi) degenerate = true;  // the zero functional is not dominated; skip
    else vals[w] = Rat(lo + Rat(Int(rng.below(5)), Int(4)) * (hi - lo));
  }
  if (!degenerate) {
    CondReal val = CondReal::make(in.a, in.a->full_mask(), vals);
    CondLinFunctional phi = hb_extend({in.u}, {val}, k);
    for (int w = 0; w < n; w++) {
      if (detail::dot_rat(phi.v[w], in.u.v[w]) != val.v[w]) return "extend-subspace";
      for (int probe = 0; probe < 4; probe++) {
        std::vector<Rat> p(in.dims[w]);
        for (auto& c : p) c = rng.rat(3, 2);
        if (detail::dot_rat(phi.v[w], p) > detail::bound_value(in.bound_gens, w, p))
          return "extend-dominated";
      }
      for (int l = 0; l < in.dims[w]; l++) {
        std::vector<Rat> e(in.dims[w], Rat(0));
        e[l] = Rat(1);
        if (detail::dot_rat(phi.v[w], e) > detail::bound_value(in.bound_gens, w, e))
          return "extend-dominated";
        e[l] = Rat(-1);
        if (detail::dot_rat(phi.v[w], e) > detail::bound_value(in.bound_gens, w, e))
          return "extend-dominated";
      }
    }
  }

  // separation across a gap that is wide by construction
  Rat span(1);
  for (int w = 0; w < n; w++)
    for (const auto& g : in.y.gens[w])
      for (const auto& c : g) span = std::max(span, Rat(c < 0 ? -c : c));
  Rat shift = Rat(2) * span + Rat(1);
  std::vector<std::vector<std::vector<Rat>>> moved = in.y.gens;
  for (int w = 0; w < n; w++)
    for (auto& g : moved[w]) g[0] += shift;
  VPolytope y2 = VPolytope::make(in.a, in.a->full_mask(), std::move(moved));
  bool strict = rng.coin();
  Separation sep = separate(in.y, y2, strict);
  if (strict && nonpositive_mask(sep.eps) != 0) return "separate-strict-eps";
  for (int w = 0; w < n; w++) {
    for (const auto& g : in.y.gens[w])
      for (const auto& h : y2.gens[w]) {
        Rat left = detail::dot_rat(sep.f.v[w], g) + sep.eps.v[w];
        Rat right = detail::dot_rat(sep.f.v[w], h);
        if (strict ? !(left < right) : !(left <= right)) return "separate-gap";
      }
  }

  // bipolar against the hull oracle on the circled closure
  PolarSet p = polar(in.y);
  VPolytope closure_poly = [&] {
    std::vector<std::vector<std::vector<Rat>>> gens = in.y.gens;
    for (int w = 0; w < n; w++) {
      std::vector<std::vector<Rat>> neg;
      for (const auto& g : gens[w]) {
        std::vector<Rat> m(g);
        for (auto& c : m) c = -c;
        neg.push_back(std::move(m));
      }
      gens[w].insert(gens[w].end(), neg.begin(), neg.end());
      gens[w].push_back(std::vector<Rat>(in.dims[w], Rat(0)));
    }
    return VPolytope::make(in.a, in.a->full_mask(), std::move(gens));
  }();
  for (int probe = 0; probe < 6; probe++) {
    CondRealVec pt = [&] {
      if (probe < 3) {  // hull members: random mixes of the closure generators
        std::vector<std::vector<Rat>> v(n);
        for (int w = 0; w < n; w++) {
          std::vector<Rat> acc(in.dims[w], Rat(0));
          Rat total(0);
          std::vector<Rat> weights;
          for (std::size_t g = 0; g < closure_poly.gens[w].size(); g++) {
            weights.push_back(Rat(Int(rng.below(4)), Int(1)));
            total += weights.back();
          }
          if (total == 0) weights[0] = total = Rat(1);
          for (std::size_t g = 0; g < closure_poly.gens[w].size(); g++)
            for (int l = 0; l < in.dims[w]; l++)
              acc[l] += weights[g] / total * closure_poly.gens[w][g][l];
          v[w] = std::move(acc);
        }
        return CondRealVec::make(in.a, in.a->full_mask(), std::move(v));
      }
      return gen_vec(rng, in.a, in.dims);
    }();
    std::uint64_t hull_mask = hull_member_mask(closure_poly, pt);
    for (int w = 0; w < n; w++) {
      bool in_hull = (hull_mask >> w) & 1;
      if (in_bipolar(p, w, pt.v[w]) != in_hull) return "bipolar-oracle";
    }
  }
  return std::nullopt;
}

inline std::optional<SuiteFailure> run_linear_case(Rng& rng, const GenShape& sh,
                                                   int dim_max = 3) {
  LinearInstance in = gen_linear_instance(rng, sh, dim_max);
  Rng law_rng = rng.fork();
  Rng probe = law_rng;
  auto law = linear_violated_law(in, probe);
  if (!law) return std::nullopt;
  auto fails = [&](const LinearInstance& c) {
    Rng r = law_rng;
    try {
      return linear_violated_law(c, r).has_value();
    } catch (const CondError&) {
      return false;
    }
  };
  auto shrinks = [](const LinearInstance& c) {
    std::vector<LinearInstance> out;
    if (c.family.size() > 1)
      for (std::size_t k = 0; k < c.family.size(); k++) {
        LinearInstance s = c;
        s.family.erase(s.family.begin() + static_cast<std::ptrdiff_t>(k));
        s.built_as_combination = false;  // membership no longer guaranteed
        out.push_back(std::move(s));
      }
    return out;
  };
  LinearInstance small = detail::minimize_instance(in, fails, shrinks);
  Rng r = law_rng;
  SuiteFailure f;
  f.law = *linear_violated_law(small, r);
  f.counterexample = linear_instance_json(small);
  return f;
}

// ----- driver -----

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"powerset", "functions", "filters",
                                                 "topology", "numbers",   "linear"};
  return names;
}

inline std::optional<SuiteFailure> run_suite_case(const std::string& name,
                                                  std::size_t index, Rng& rng,
                                                  const GenShape& sh, int fault) {
  try {
    if (name == "powerset") return run_powerset_case(rng, sh, complement_for_fault(fault));
    if (name == "functions") return run_functions_case(rng, sh);
    if (name == "filters") return run_filters_case(rng, sh);
    if (name == "topology") return run_topology_case(rng, sh);
    if (name == "numbers") return run_numbers_case(rng, sh, index % 10 == 0);
    if (name == "linear") return run_linear_case(rng, sh);
  } catch (const CondError& e) {
    SuiteFailure f;
    f.law = "unexpected-error";
    f.counterexample = Json{{"what", e.what()}};
    return f;
  }
  fail(Errc::UnknownSuite, "unknown suite '" + name + "'");
  return std::nullopt;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == name;
  if (!known) fail(Errc::UnknownSuite, "unknown suite '" + name + "'");
  auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = name;
  rep.seed = opts.seed;
  rep.cases = opts.cases;
  GenShape sh{opts.atoms_max, opts.carrier_max};
  std::vector<std::optional<SuiteFailure>> slots(opts.cases);
  detail::parallel_cases(opts.cases, opts.threads, [&](std::size_t i) {
    Rng rng(case_seed(opts.seed, i));
    slots[i] = run_suite_case(name, i, rng, sh, opts.fault);
    if (slots[i]) slots[i]->case_index = i;
  });
  for (auto& s : slots)
    if (s) rep.failures.push_back(std::move(*s));
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

inline std::vector<SuiteReport> run_all(const SuiteOptions& opts) {
  std::vector<SuiteReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, opts));
  return out;
}

// Cases roam across all suites with the shape knobs as the only limits.
inline SuiteReport run_fuzz(const SuiteOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = "fuzz";
  rep.seed = opts.seed;
  rep.cases = opts.cases;
  GenShape sh{opts.atoms_max, opts.carrier_max};
  std::vector<std::optional<SuiteFailure>> slots(opts.cases);
  detail::parallel_cases(opts.cases, opts.threads, [&](std::size_t i) {
    Rng rng(case_seed(opts.seed ^ 0xf0220000ULL, i));
    const std::string& pickname = suite_names()[rng.below(suite_names().size())];
    slots[i] = run_suite_case(pickname, i, rng, sh, opts.fault);
    if (slots[i]) {
      slots[i]->case_index = i;
      slots[i]->law = pickname + ":" + slots[i]->law;
    }
  });
  for (auto& s : slots)
    if (s) rep.failures.push_back(std::move(*s));
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

inline Json report_json(const SuiteReport& r, bool with_timing = false) {
  Json fails = Json::array();
  for (const auto& f : r.failures)
    fails.push_back(Json{{"case", f.case_index},
                         {"law", f.law},
                         {"counterexample", f.counterexample}});
  Json out{{"suite", r.suite},
           {"seed", r.seed},
           {"cases", r.cases},
           {"failure_count", r.failures.size()},
           {"failures", fails}};
  if (with_timing) out["wall_ms"] = r.wall_ms;
  return out;
}

inline std::string report_text(const SuiteReport& r, bool with_timing = false) {
  std::string out = "suite " + r.suite + ": seed=" + std::to_string(r.seed) +
                    " cases=" + std::to_string(r.cases) +
                    " failures=" + std::to_string(r.failures.size());
  if (with_timing) out += " wall_ms=" + std::to_string(r.wall_ms);
  out += "\n";
  for (const auto& f : r.failures)
    out += "  case " + std::to_string(f.case_index) + " violates " + f.law + ": " +
           f.counterexample.dump() + "\n";
  return out;
}

}  // namespace condsets
