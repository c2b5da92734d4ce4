#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "condsets/condfilter.hpp"
#include "condsets/condlin.hpp"
#include "condsets/condmap.hpp"
#include "condsets/condnum.hpp"
#include "condsets/condset.hpp"
#include "condsets/condtop.hpp"
#include "condsets/json_io.hpp"
#include "condsets/lp.hpp"
#include "condsets/sexpr.hpp"

namespace condsets {

// Evaluator over named objects. Programs are a sequence of s-expressions;
// (def name expr) binds, every other top-level form produces one JSON result.
struct EvalValue;
using EvalList = std::vector<EvalValue>;

struct EvalValue {
  std::variant<bool, Rat, std::string, AlgebraPtr, Condition, CondSetPtr, CondElement,
               CondSubset, CondFunction, CondTopology, CondFilter, CondReal, CondRealVec,
               VPolytope, PolarSet, PolyhedralSublinear, Trichotomy, Separation, Json,
               std::shared_ptr<EvalList>>
      v;
};

using Env = std::map<std::string, EvalValue>;

namespace evaldetail {

inline const char* kind_name(const EvalValue& e) {
  struct Namer {
    const char* operator()(const bool&) { return "bool"; }
    const char* operator()(const Rat&) { return "rational"; }
    const char* operator()(const std::string&) { return "string"; }
    const char* operator()(const AlgebraPtr&) { return "algebra"; }
    const char* operator()(const Condition&) { return "condition"; }
    const char* operator()(const CondSetPtr&) { return "set"; }
    const char* operator()(const CondElement&) { return "element"; }
    const char* operator()(const CondSubset&) { return "subset"; }
    const char* operator()(const CondFunction&) { return "function"; }
    const char* operator()(const CondTopology&) { return "topology"; }
    const char* operator()(const CondFilter&) { return "filter"; }
    const char* operator()(const CondReal&) { return "real"; }
    const char* operator()(const CondRealVec&) { return "vector"; }
    const char* operator()(const VPolytope&) { return "polytope"; }
    const char* operator()(const PolarSet&) { return "polar"; }
    const char* operator()(const PolyhedralSublinear&) { return "sublinear"; }
    const char* operator()(const Trichotomy&) { return "trichotomy"; }
    const char* operator()(const Separation&) { return "separation"; }
    const char* operator()(const Json&) { return "table"; }
    const char* operator()(const std::shared_ptr<EvalList>&) { return "list"; }
  };
  return std::visit(Namer{}, e.v);
}

[[noreturn]] inline void eval_fail(const SExpr& at, const std::string& msg) {
  fail(Errc::EvalError, msg + " at " + at.where());
}

template <class T>
const T& expect(const EvalValue& e, const SExpr& at, const char* what) {
  if (const T* p = std::get_if<T>(&e.v)) return *p;
  eval_fail(at, std::string("expected ") + what + ", got " + kind_name(e));
}

inline void need(const SExpr& node, std::size_t n) {
  if (node.items.size() != n + 1)
    eval_fail(node, "'" + node.items[0].text + "' takes " + std::to_string(n) +
                        " argument" + (n == 1 ? "" : "s"));
}

inline void need_at_least(const SExpr& node, std::size_t n) {
  if (node.items.size() < n + 1)
    eval_fail(node, "'" + node.items[0].text + "' takes at least " + std::to_string(n) +
                        " argument" + (n == 1 ? "" : "s"));
}

// carrier points are integers, strings or tuples of those
inline Value value_literal(const SExpr& e) {
  if (e.kind == SExpr::Kind::Num) {
    if (denominator(e.num) != 1) eval_fail(e, "carrier points use whole numbers");
    return Value(numerator(e.num).convert_to<std::int64_t>());
  }
  if (e.kind == SExpr::Kind::Str) return Value(e.text);
  if (e.kind == SExpr::Kind::List) {
    Value::Tuple t;
    for (const auto& it : e.items) t.push_back(value_literal(it));
    return Value(std::move(t));
  }
  eval_fail(e, "expected a carrier point");
}

// a named slice: (atom ...rest), atom given as a string
inline int slice_atom(const AlgebraPtr& a, const SExpr& slice) {
  if (slice.kind != SExpr::Kind::List || slice.items.empty() ||
      slice.items[0].kind != SExpr::Kind::Str)
    eval_fail(slice, "expected a slice of the form (\"atom\" ...)");
  const std::string& nm = slice.items[0].text;
  for (int w = 0; w < a->n(); w++)
    if (a->atoms[w] == nm) return w;
  eval_fail(slice.items[0], "unknown atom '" + nm + "'");
}

inline Rat rat_arg(const SExpr& e) {
  if (e.kind != SExpr::Kind::Num) eval_fail(e, "expected a rational number");
  return e.num;
}

}  // namespace evaldetail

inline Json eval_value_json(const EvalValue& e) {
  using evaldetail::kind_name;
  Json out;
  out["type"] = kind_name(e);
  struct Render {
    Json& out;
    void live(const AlgebraPtr& a, std::uint64_t support) {
      out["lives_on"] = condition_json(Condition(a, support));
    }
    void operator()(const bool& b) { out["value"] = b; }
    void operator()(const Rat& r) { out["value"] = rat_json(r); }
    void operator()(const std::string& s) { out["value"] = s; }
    void operator()(const AlgebraPtr& a) { out["value"] = algebra_json(a); }
    void operator()(const Condition& c) { out["value"] = condition_json(c); }
    void operator()(const CondSetPtr& x) { out["value"] = condset_json(x); }
    void operator()(const CondElement& x) {
      live(x.parent->alg, x.support);
      out["value"] = element_json(x);
    }
    void operator()(const CondSubset& y) {
      live(y.parent->alg, y.support);
      out["value"] = subset_json(y);
    }
    void operator()(const CondFunction& f) { out["value"] = function_json(f); }
    void operator()(const CondTopology& t) { out["value"] = topology_json(t); }
    void operator()(const CondFilter& f) { out["value"] = filter_json(f); }
    void operator()(const CondReal& r) {
      live(r.alg, r.support);
      out["value"] = real_json(r);
    }
    void operator()(const CondRealVec& v) {
      live(v.alg, v.support);
      out["value"] = vec_json(v);
    }
    void operator()(const VPolytope& y) {
      live(y.alg, y.support);
      out["value"] = polytope_json(y);
    }
    void operator()(const PolarSet& p) {
      live(p.alg, p.support);
      out["value"] = polar_json(p);
    }
    void operator()(const PolyhedralSublinear& k) {
      live(k.alg, k.support);
      out["value"] = sublinear_json(k);
    }
    void operator()(const Trichotomy& t) { out["value"] = trichotomy_json(t); }
    void operator()(const Separation& s) {
      live(s.f.alg, s.f.support);
      out["value"] = separation_json(s);
    }
    void operator()(const Json& j) { out["value"] = j; }
    void operator()(const std::shared_ptr<EvalList>& xs) {
      Json items = Json::array();
      for (const auto& x : *xs) items.push_back(eval_value_json(x));
      out["value"] = items;
    }
  };
  std::visit(Render{out}, e.v);
  return out;
}

inline EvalValue eval_expr(const SExpr& node, Env& env);

namespace evaldetail {

inline EvalValue apply_op(const SExpr& node, Env& env) {
  const std::string& op = node.items[0].text;
  auto arg = [&](std::size_t i) { return eval_expr(node.items[i + 1], env); };
  auto nargs = [&] { return node.items.size() - 1; };

  // constructors
  if (op == "algebra") {
    need_at_least(node, 1);
    std::vector<std::string> names;
    for (std::size_t i = 1; i < node.items.size(); i++) {
      if (node.items[i].kind != SExpr::Kind::Str)
        eval_fail(node.items[i], "atom names are strings");
      names.push_back(node.items[i].text);
    }
    return {Algebra::make(names)};
  }
  if (op == "carrier") {
    need_at_least(node, 2);
    AlgebraPtr a = expect<AlgebraPtr>(arg(0), node.items[1], "an algebra");
    std::vector<std::vector<Value>> carrier(a->n());
    for (std::size_t i = 2; i < node.items.size(); i++) {
      int w = slice_atom(a, node.items[i]);
      for (std::size_t k = 1; k < node.items[i].items.size(); k++)
        carrier[w].push_back(value_literal(node.items[i].items[k]));
    }
    return {CondSet::make(a, std::move(carrier))};
  }
  if (op == "subset") {
    need_at_least(node, 1);
    CondSetPtr x = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    std::vector<std::vector<Value>> pw(x->n_atoms());
    for (std::size_t i = 2; i < node.items.size(); i++) {
      int w = slice_atom(x->alg, node.items[i]);
      for (std::size_t k = 1; k < node.items[i].items.size(); k++)
        pw[w].push_back(value_literal(node.items[i].items[k]));
    }
    return {CondSubset::make(x, std::move(pw))};
  }
  if (op == "element") {
    need_at_least(node, 2);
    CondSetPtr x = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    std::map<std::string, Value> by_atom;
    std::uint64_t support = 0;
    for (std::size_t i = 2; i < node.items.size(); i++) {
      const SExpr& sl = node.items[i];
      int w = slice_atom(x->alg, sl);
      if (sl.items.size() != 2) eval_fail(sl, "expected (\"atom\" point)");
      by_atom[x->alg->atoms[w]] = value_literal(sl.items[1]);
      support |= 1ULL << w;
    }
    return {CondElement::make_on(x, support, by_atom)};
  }
  if (op == "func") {
    need_at_least(node, 2);
    CondSetPtr dom = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    CondSetPtr cod = expect<CondSetPtr>(arg(1), node.items[2], "a set");
    std::vector<std::map<Value, Value>> tbl(dom->n_atoms());
    for (std::size_t i = 3; i < node.items.size(); i++) {
      const SExpr& sl = node.items[i];
      int w = slice_atom(dom->alg, sl);
      for (std::size_t k = 1; k < sl.items.size(); k++) {
        const SExpr& pair = sl.items[k];
        if (pair.kind != SExpr::Kind::List || pair.items.size() != 2)
          eval_fail(pair, "expected a (point point) pair");
        tbl[w][value_literal(pair.items[0])] = value_literal(pair.items[1]);
      }
    }
    return {CondFunction::make(dom, cod, std::move(tbl))};
  }
  if (op == "discrete" || op == "indiscrete") {
    need(node, 1);
    CondSetPtr x = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    return {op == "discrete" ? CondTopology::discrete(x) : CondTopology::indiscrete(x)};
  }
  if (op == "topology") {
    need_at_least(node, 2);
    CondSetPtr x = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    std::vector<CondSubset> base;
    for (std::size_t i = 1; i < nargs(); i++)
      base.push_back(expect<CondSubset>(arg(i), node.items[i + 1], "a subset"));
    return {topology_from_base(CondTopoBase::make(x, base))};
  }
  if (op == "filter") {
    need_at_least(node, 2);
    CondSetPtr x = expect<CondSetPtr>(arg(0), node.items[1], "a set");
    std::vector<CondSubset> gens;
    for (std::size_t i = 1; i < nargs(); i++)
      gens.push_back(expect<CondSubset>(arg(i), node.items[i + 1], "a subset"));
    return {generate_filter(CondFilterBase::make(x, gens))};
  }
  if (op == "real") {
    need_at_least(node, 2);
    AlgebraPtr a = expect<AlgebraPtr>(arg(0), node.items[1], "an algebra");
    if (node.items[2].kind == SExpr::Kind::Num) {
      need(node, 2);
      return {CondReal::constant(a, node.items[2].num)};
    }
    std::vector<Rat> v(a->n(), Rat(0));
    std::uint64_t support = 0;
    for (std::size_t i = 2; i < node.items.size(); i++) {
      const SExpr& sl = node.items[i];
      int w = slice_atom(a, sl);
      if (sl.items.size() != 2) eval_fail(sl, "expected (\"atom\" rational)");
      v[w] = rat_arg(sl.items[1]);
      support |= 1ULL << w;
    }
    return {CondReal::make(a, support, std::move(v))};
  }
  if (op == "vec" || op == "functional") {
    need_at_least(node, 2);
    AlgebraPtr a = expect<AlgebraPtr>(arg(0), node.items[1], "an algebra");
    std::vector<std::vector<Rat>> v(a->n());
    std::uint64_t support = 0;
    for (std::size_t i = 2; i < node.items.size(); i++) {
      const SExpr& sl = node.items[i];
      int w = slice_atom(a, sl);
      for (std::size_t k = 1; k < sl.items.size(); k++) v[w].push_back(rat_arg(sl.items[k]));
      support |= 1ULL << w;
    }
    return {CondRealVec::make(a, support, std::move(v))};
  }
  if (op == "poly") {
    need_at_least(node, 2);
    AlgebraPtr a = expect<AlgebraPtr>(arg(0), node.items[1], "an algebra");
    std::vector<std::vector<std::vector<Rat>>> gens(a->n());
    std::uint64_t support = 0;
    for (std::size_t i = 2; i < node.items.size(); i++) {
      const SExpr& sl = node.items[i];
      int w = slice_atom(a, sl);
      for (std::size_t k = 1; k < sl.items.size(); k++) {
        const SExpr& pt = sl.items[k];
        if (pt.kind != SExpr::Kind::List) eval_fail(pt, "expected a point (r r ...)");
        std::vector<Rat> row;
        for (const auto& c : pt.items) row.push_back(rat_arg(c));
        gens[w].push_back(std::move(row));
      }
      support |= 1ULL << w;
    }
    return {VPolytope::make(a, support, std::move(gens))};
  }
  if (op == "sublinear") {
    need(node, 1);
    VPolytope y = expect<VPolytope>(arg(0), node.items[1], "a polytope");
    return {PolyhedralSublinear::make(y.alg, y.support, y.gens)};
  }
  if (op == "cond") {
    need_at_least(node, 1);
    AlgebraPtr a = expect<AlgebraPtr>(arg(0), node.items[1], "an algebra");
    std::uint64_t mask = 0;
    for (std::size_t i = 2; i < node.items.size(); i++) {
      if (node.items[i].kind != SExpr::Kind::Str)
        eval_fail(node.items[i], "atom names are strings");
      bool found = false;
      for (int w = 0; w < a->n(); w++)
        if (a->atoms[w] == node.items[i].text) {
          mask |= 1ULL << w;
          found = true;
        }
      if (!found) eval_fail(node.items[i], "unknown atom '" + node.items[i].text + "'");
    }
    return {Condition(a, mask)};
  }
  if (op == "list") {
    auto xs = std::make_shared<EvalList>();
    for (std::size_t i = 0; i < nargs(); i++) xs->push_back(arg(i));
    return {xs};
  }

  // set algebra
  if (op == "union" || op == "inter") {
    need_at_least(node, 2);
    CondSubset acc = expect<CondSubset>(arg(0), node.items[1], "a subset");
    for (std::size_t i = 1; i < nargs(); i++) {
      CondSubset next = expect<CondSubset>(arg(i), node.items[i + 1], "a subset");
      acc = op == "union" ? cond_union(acc, next) : cond_intersection(acc, next);
    }
    return {acc};
  }
  if (op == "compl") {
    need(node, 1);
    return {cond_complement(expect<CondSubset>(arg(0), node.items[1], "a subset"))};
  }
  if (op == "hull") {
    need_at_least(node, 1);
    EvalValue first = arg(0);
    if (std::holds_alternative<VPolytope>(first.v)) {
      need(node, 1);
      return {conv_hull(std::get<VPolytope>(first.v))};
    }
    std::vector<CondElement> elems;
    elems.push_back(expect<CondElement>(first, node.items[1], "an element or polytope"));
    for (std::size_t i = 1; i < nargs(); i++)
      elems.push_back(expect<CondElement>(arg(i), node.items[i + 1], "an element"));
    return {stable_hull(elems[0].parent, elems)};
  }
  if (op == "image" || op == "preimage") {
    need(node, 2);
    CondFunction f = expect<CondFunction>(arg(0), node.items[1], "a function");
    CondSubset y = expect<CondSubset>(arg(1), node.items[2], "a subset");
    return {op == "image" ? image(f, y) : preimage(f, y)};
  }

  // topology
  if (op == "interior" || op == "closure") {
    need(node, 2);
    CondTopology t = expect<CondTopology>(arg(0), node.items[1], "a topology");
    CondSubset y = expect<CondSubset>(arg(1), node.items[2], "a subset");
    return {op == "interior" ? interior(t, y) : closure(t, y)};
  }
  if (op == "open?" || op == "closed?") {
    need(node, 2);
    CondTopology t = expect<CondTopology>(arg(0), node.items[1], "a topology");
    CondSubset y = expect<CondSubset>(arg(1), node.items[2], "a subset");
    return {op == "open?" ? t.is_open(y) : t.is_closed(y)};
  }
  if (op == "continuous?") {
    need(node, 3);
    CondFunction f = expect<CondFunction>(arg(0), node.items[1], "a function");
    CondTopology td = expect<CondTopology>(arg(1), node.items[2], "a topology");
    CondTopology tc = expect<CondTopology>(arg(2), node.items[3], "a topology");
    return {is_continuous(f, td, tc)};
  }
  if (op == "compact?") {
    need(node, 1);
    CondTopology t = expect<CondTopology>(arg(0), node.items[1], "a topology");
    return {is_compact(t, CompactVia::Cover)};
  }
  if (op == "ultra") {
    need(node, 1);
    return {ultrafilter_extend(expect<CondFilter>(arg(0), node.items[1], "a filter"))};
  }

  // numbers
  if (op == "compare") {
    need(node, 2);
    CondReal x = expect<CondReal>(arg(0), node.items[1], "a real");
    CondReal y = expect<CondReal>(arg(1), node.items[2], "a real");
    return {compare(x, y)};
  }
  if (op == "sup" || op == "inf") {
    need_at_least(node, 1);
    std::vector<CondReal> xs;
    for (std::size_t i = 0; i < nargs(); i++)
      xs.push_back(expect<CondReal>(arg(i), node.items[i + 1], "a real"));
    return {op == "sup" ? cond_sup(xs) : cond_inf(xs)};
  }
  if (op == "add" || op == "sub" || op == "mul") {
    need(node, 2);
    EvalValue lhs = arg(0), rhs = arg(1);
    // rationals promote to constant reals when the other side has an algebra
    auto promote = [&](EvalValue& side, const AlgebraPtr& a) {
      if (const Rat* r = std::get_if<Rat>(&side.v)) side = {CondReal::constant(a, *r)};
    };
    if (const CondReal* r = std::get_if<CondReal>(&rhs.v)) promote(lhs, r->alg);
    if (const CondReal* l = std::get_if<CondReal>(&lhs.v)) promote(rhs, l->alg);
    if (std::holds_alternative<Rat>(lhs.v) && std::holds_alternative<Rat>(rhs.v)) {
      const Rat &a = std::get<Rat>(lhs.v), &b = std::get<Rat>(rhs.v);
      return {op == "add" ? Rat(a + b) : op == "sub" ? Rat(a - b) : Rat(a * b)};
    }
    if (std::holds_alternative<CondReal>(lhs.v) && std::holds_alternative<CondReal>(rhs.v)) {
      const CondReal &a = std::get<CondReal>(lhs.v), &b = std::get<CondReal>(rhs.v);
      return {op == "add" ? add(a, b) : op == "sub" ? sub(a, b) : mul(a, b)};
    }
    if (op == "mul" && std::holds_alternative<CondReal>(lhs.v) &&
        std::holds_alternative<VPolytope>(rhs.v))
      return {minkowski_scale(std::get<CondReal>(lhs.v), std::get<VPolytope>(rhs.v))};
    if (op == "add" && std::holds_alternative<VPolytope>(lhs.v) &&
        std::holds_alternative<VPolytope>(rhs.v))
      return {minkowski_add(std::get<VPolytope>(lhs.v), std::get<VPolytope>(rhs.v))};
    eval_fail(node, std::string("'") + op + "' does not combine " + kind_name(lhs) +
                        " and " + kind_name(rhs));
  }
  if (op == "neg" || op == "inv" || op == "abs") {
    need(node, 1);
    CondReal x = expect<CondReal>(arg(0), node.items[1], "a real");
    return {op == "neg" ? neg(x) : op == "inv" ? inv(x) : cond_abs(x)};
  }
  if (op == "dist2") {
    need(node, 2);
    CondRealVec a = expect<CondRealVec>(arg(0), node.items[1], "a vector");
    CondRealVec b = expect<CondRealVec>(arg(1), node.items[2], "a vector");
    return {dist2(a, b)};
  }

  // convexity and duality
  if (op == "polar") {
    need_at_least(node, 1);
    VPolytope y = expect<VPolytope>(arg(0), node.items[1], "a polytope");
    bool one_sided = false;
    if (nargs() == 2) {
      if (!node.items[2].is_sym("one-sided")) eval_fail(node.items[2], "expected one-sided");
      one_sided = true;
    }
    return {polar(y, one_sided)};
  }
  if (op == "separate") {
    need_at_least(node, 2);
    VPolytope a = expect<VPolytope>(arg(0), node.items[1], "a polytope");
    VPolytope b = expect<VPolytope>(arg(1), node.items[2], "a polytope");
    bool strict = false;
    if (nargs() == 3) {
      if (!node.items[3].is_sym("strict")) eval_fail(node.items[3], "expected strict");
      strict = true;
    }
    return {separate(a, b, strict)};
  }
  if (op == "extend") {
    need(node, 3);
    PolyhedralSublinear k = expect<PolyhedralSublinear>(arg(0), node.items[1], "a sublinear bound");
    auto basis_list = expect<std::shared_ptr<EvalList>>(arg(1), node.items[2], "a list");
    auto value_list = expect<std::shared_ptr<EvalList>>(arg(2), node.items[3], "a list");
    std::vector<CondRealVec> basis;
    std::vector<CondReal> values;
    for (const auto& b : *basis_list)
      basis.push_back(expect<CondRealVec>(b, node.items[2], "a vector"));
    for (const auto& v : *value_list)
      values.push_back(expect<CondReal>(v, node.items[3], "a real"));
    return {hb_extend(basis, values, k)};
  }
  if (op == "norm") {
    need(node, 2);
    VPolytope ball = expect<VPolytope>(arg(0), node.items[1], "a polytope");
    CondRealVec x = expect<CondRealVec>(arg(1), node.items[2], "a vector");
    return {norm_eval(ball, x)};
  }

  // predicates
  if (op == "leq?") {
    need(node, 2);
    EvalValue lhs = arg(0), rhs = arg(1);
    if (std::holds_alternative<CondSubset>(lhs.v))
      return {subset_leq(std::get<CondSubset>(lhs.v),
                         expect<CondSubset>(rhs, node.items[2], "a subset"))};
    CondReal x = expect<CondReal>(lhs, node.items[1], "a subset or real");
    CondReal y = expect<CondReal>(rhs, node.items[2], "a real");
    return {compare(x, y).gt.mask == 0};
  }
  if (op == "contains") {
    need(node, 2);
    EvalValue holder = arg(0), item = arg(1);
    if (std::holds_alternative<CondSubset>(holder.v))
      return {std::get<CondSubset>(holder.v)
                  .contains(expect<CondElement>(item, node.items[2], "an element"))};
    if (std::holds_alternative<CondFilter>(holder.v))
      return {std::get<CondFilter>(holder.v)
                  .contains(expect<CondSubset>(item, node.items[2], "a subset"))};
    VPolytope y = expect<VPolytope>(holder, node.items[1], "a subset, filter or polytope");
    return {hull_contains(y, expect<CondRealVec>(item, node.items[2], "a vector"))};
  }
  if (op == "restrict") {
    need(node, 2);
    EvalValue what = arg(0);
    Condition c = expect<Condition>(arg(1), node.items[2], "a condition");
    if (std::holds_alternative<CondElement>(what.v))
      return {std::get<CondElement>(what.v).restrict(c)};
    if (std::holds_alternative<CondSubset>(what.v))
      return {std::get<CondSubset>(what.v).restrict(c)};
    if (std::holds_alternative<CondReal>(what.v)) return {std::get<CondReal>(what.v).restrict(c)};
    eval_fail(node.items[1], std::string("cannot restrict a ") + kind_name(what));
  }

  // linear programs come from JSON problem files
  if (op == "lp") {
    need(node, 1);
    std::string path = expect<std::string>(arg(0), node.items[1], "a file path");
    std::ifstream in(path);
    if (!in) eval_fail(node.items[1], "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) eval_fail(node.items[1], "malformed JSON in '" + path + "'");
    return {lp_result_json(lp_solve(lp_from_json(j)), 6)};
  }

  eval_fail(node.items[0], "unknown operation '" + op + "'");
}

}  // namespace evaldetail

inline EvalValue eval_expr(const SExpr& node, Env& env) {
  using namespace evaldetail;
  switch (node.kind) {
    case SExpr::Kind::Num:
      return {node.num};
    case SExpr::Kind::Str:
      return {node.text};
    case SExpr::Kind::Sym: {
      if (node.text == "true") return {true};
      if (node.text == "false") return {false};
      auto it = env.find(node.text);
      if (it == env.end()) eval_fail(node, "unbound name '" + node.text + "'");
      return it->second;
    }
    case SExpr::Kind::List:
      break;
  }
  if (node.items.empty()) eval_fail(node, "empty form");
  if (node.items[0].kind != SExpr::Kind::Sym)
    eval_fail(node.items[0], "expected an operation name");
  try {
    return apply_op(node, env);
  } catch (const CondError& e) {
    if (e.code == Errc::EvalError || e.code == Errc::ParseError) throw;
    eval_fail(node, e.what());
  }
}

// One JSON document per top-level non-definition form.
inline std::vector<Json> eval_program_json(const std::string& src) {
  std::vector<SExpr> prog = parse_sexprs(src);
  Env env;
  std::vector<Json> out;
  for (const auto& node : prog) {
    if (node.kind == SExpr::Kind::List && !node.items.empty() &&
        node.items[0].is_sym("def")) {
      if (node.items.size() != 3 || node.items[1].kind != SExpr::Kind::Sym)
        evaldetail::eval_fail(node, "expected (def name expr)");
      env[node.items[1].text] = eval_expr(node.items[2], env);
      continue;
    }
    out.push_back(eval_value_json(eval_expr(node, env)));
  }
  return out;
}

inline std::string eval_program(const std::string& src) {
  std::string out;
  for (const auto& j : eval_program_json(src)) {
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace condsets
