#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "condsets/condfilter.hpp"
#include "condsets/condlin.hpp"
#include "condsets/condmap.hpp"
#include "condsets/condnum.hpp"
#include "condsets/condset.hpp"
#include "condsets/condtop.hpp"
#include "condsets/lp.hpp"

namespace condsets {

// Insertion order is kept, so every serialization below is byte-stable:
// fields appear in construction order and atom keys in algebra order.
using Json = nlohmann::ordered_json;

// Rationals travel as exact strings: "p" or "p/q".
inline Json rat_json(const Rat& r) { return rat_str(r); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail(Errc::ParseError, "expected a rational as an integer or a \"p/q\" string");
  return Rat();
}

inline Json rat_list_json(const std::vector<Rat>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(rat_json(x));
  return out;
}

inline Json condition_json(const Condition& c) {
  Json out = Json::array();
  for (const auto& nm : c.atom_names()) out.push_back(nm);
  return out;
}

inline Json value_json(const Value& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_str()) return v.as_str();
  Json out = Json::array();
  for (const auto& t : v.as_tuple()) out.push_back(value_json(t));
  return out;
}

inline Value value_from_json(const Json& j) {
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_array()) {
    Value::Tuple t;
    for (const auto& e : j) t.push_back(value_from_json(e));
    return Value(std::move(t));
  }
  fail(Errc::ParseError, "expected a carrier point as an integer, string or array");
  return Value();
}

inline Json algebra_json(const AlgebraPtr& a) {
  Json atoms = Json::array();
  for (const auto& nm : a->atoms) atoms.push_back(nm);
  return Json{{"atoms", atoms}};
}

inline Json condset_json(const CondSetPtr& x) {
  Json carrier = Json::object();
  for (int w = 0; w < x->n_atoms(); w++) {
    Json pts = Json::array();
    for (const auto& v : x->carrier[w]) pts.push_back(value_json(v));
    carrier[x->alg->atoms[w]] = pts;
  }
  Json out = algebra_json(x->alg);
  out["carrier"] = carrier;
  return out;
}

inline CondSetPtr condset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("carrier"))
    fail(Errc::ParseError, "expected a set as {\"atoms\": [...], \"carrier\": {...}}");
  std::vector<std::string> names;
  for (const auto& nm : j.at("atoms")) names.push_back(nm.get<std::string>());
  AlgebraPtr a = Algebra::make(names);
  std::vector<std::vector<Value>> carrier(a->n());
  for (int w = 0; w < a->n(); w++)
    for (const auto& e : j.at("carrier").at(a->atoms[w]))
      carrier[w].push_back(value_from_json(e));
  return CondSet::make(a, carrier);
}

inline Json subset_json(const CondSubset& y) {
  Json pts = Json::object();
  for (int w = 0; w < y.parent->n_atoms(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    Json slice = Json::array();
    for (const auto& v : y.pw[w]) slice.push_back(value_json(v));
    pts[y.parent->alg->atoms[w]] = slice;
  }
  return Json{{"support", condition_json(y.support_cond())}, {"points", pts}};
}

inline CondSubset subset_from_json(const CondSetPtr& x, const Json& j) {
  if (!j.is_object() || !j.contains("points"))
    fail(Errc::ParseError, "expected a subset as {\"support\": [...], \"points\": {...}}");
  std::vector<std::vector<Value>> pw(x->n_atoms());
  const Json& pts = j.at("points");
  for (int w = 0; w < x->n_atoms(); w++) {
    if (!pts.contains(x->alg->atoms[w])) continue;
    for (const auto& e : pts.at(x->alg->atoms[w])) pw[w].push_back(value_from_json(e));
  }
  return CondSubset::make(x, pw);
}

inline Json element_json(const CondElement& x) {
  Json vals = Json::object();
  for (int w = 0; w < x.parent->n_atoms(); w++)
    if (x.support & (1ULL << w))
      vals[x.parent->alg->atoms[w]] = value_json(x.vals[w]);
  return Json{{"support", condition_json(x.support_cond())}, {"values", vals}};
}

inline Json partition_json(const Partition& p) {
  Json parts = Json::array();
  for (const auto& c : p.parts) parts.push_back(condition_json(c));
  return Json{{"base", condition_json(p.base)}, {"parts", parts}};
}

inline Json trichotomy_json(const Trichotomy& t) {
  return Json{{"lt", condition_json(t.lt)},
              {"gt", condition_json(t.gt)},
              {"eq", condition_json(t.eq)}};
}

inline Json real_json(const CondReal& x) {
  Json vals = Json::object();
  for (int w = 0; w < x.alg->n(); w++)
    if (x.support & (1ULL << w)) vals[x.alg->atoms[w]] = rat_json(x.v[w]);
  return Json{{"support", condition_json(Condition(x.alg, x.support))},
              {"values", vals}};
}

inline Json nat_json(const CondNat& x) {
  Json vals = Json::object();
  for (int w = 0; w < x.alg->n(); w++)
    if (x.support & (1ULL << w)) vals[x.alg->atoms[w]] = x.v[w];
  return Json{{"support", condition_json(Condition(x.alg, x.support))},
              {"values", vals}};
}

inline Json vec_json(const CondRealVec& x) {
  Json vals = Json::object();
  for (int w = 0; w < x.alg->n(); w++)
    if (x.support & (1ULL << w)) vals[x.alg->atoms[w]] = rat_list_json(x.v[w]);
  return Json{{"support", condition_json(Condition(x.alg, x.support))},
              {"values", vals}};
}

inline Json function_json(const CondFunction& f) {
  Json tbl = Json::object();
  for (int w = 0; w < f.dom->n_atoms(); w++) {
    Json rows = Json::array();
    for (const auto& [k, v] : f.tbl[w])
      rows.push_back(Json::array({value_json(k), value_json(v)}));
    tbl[f.dom->alg->atoms[w]] = rows;
  }
  return Json{{"dom", condset_json(f.dom)}, {"cod", condset_json(f.cod)}, {"table", tbl}};
}

inline Json topology_json(const CondTopology& t) {
  Json opens = Json::object();
  for (int w = 0; w < t.space->n_atoms(); w++) {
    Json fam = Json::array();
    for (std::uint32_t m : t.opens_at(w)) {
      Json pts = Json::array();
      for (const auto& v : mask_point_set(t.space, w, m)) pts.push_back(value_json(v));
      fam.push_back(pts);
    }
    opens[t.space->alg->atoms[w]] = fam;
  }
  return Json{{"space", condset_json(t.space)}, {"opens", opens}};
}

inline Json filter_json(const CondFilter& f) {
  Json gens = Json::array();
  for (const auto& g : f.base.gens) gens.push_back(subset_json(g));
  Json out{{"generators", gens}, {"materialized", f.materialized}};
  if (f.materialized) out["members"] = f.members.size();
  return out;
}

inline Json polytope_json(const VPolytope& y) {
  Json gens = Json::object();
  for (int w = 0; w < y.alg->n(); w++) {
    if (!(y.support & (1ULL << w))) continue;
    Json pts = Json::array();
    for (const auto& g : y.gens[w]) pts.push_back(rat_list_json(g));
    gens[y.alg->atoms[w]] = pts;
  }
  return Json{{"support", condition_json(Condition(y.alg, y.support))},
              {"dim", nat_json(y.dim)},
              {"generators", gens}};
}

inline Json sublinear_json(const PolyhedralSublinear& k) {
  Json funcs = Json::object();
  for (int w = 0; w < k.alg->n(); w++) {
    if (!(k.support & (1ULL << w))) continue;
    Json rows = Json::array();
    for (const auto& f : k.funcs[w]) rows.push_back(rat_list_json(f));
    funcs[k.alg->atoms[w]] = rows;
  }
  return Json{{"support", condition_json(Condition(k.alg, k.support))},
              {"dim", nat_json(k.dim)},
              {"functionals", funcs}};
}

inline Json polar_json(const PolarSet& p) {
  Json rows = Json::object();
  for (int w = 0; w < p.alg->n(); w++) {
    if (!(p.support & (1ULL << w))) continue;
    Json rs = Json::array();
    for (const auto& r : p.rows[w]) rs.push_back(rat_list_json(r));
    rows[p.alg->atoms[w]] = rs;
  }
  return Json{{"support", condition_json(Condition(p.alg, p.support))},
              {"dim", nat_json(p.dim)},
              {"one_sided", p.one_sided},
              {"rows", rows}};
}

inline Json separation_json(const Separation& s) {
  return Json{{"functional", vec_json(s.f)}, {"eps", real_json(s.eps)}};
}

// ----- linear programs: file format and result rendering -----

inline LpSense sense_from_json(const Json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : std::string();
  if (s == "<=") return LpSense::Le;
  if (s == ">=") return LpSense::Ge;
  if (s == "==" || s == "=") return LpSense::Eq;
  fail(Errc::MalformedProblem, "row sense must be \"<=\", \">=\" or \"==\"");
  return LpSense::Le;
}

// Accepted shape:
//   {"maximize": bool, "objective": [rat...],
//    "rows": [{"coeffs": [rat...], "sense": "<=", "rhs": rat}, ...],
//    "lower": [rat|null...], "upper": [rat|null...]}
// where a rational is an integer or a "p/q" string, the bound arrays are
// optional, and null entries leave the variable unbounded on that side.
inline LPProblem lp_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("objective") || !j.contains("rows"))
    fail(Errc::MalformedProblem, "a program needs \"objective\" and \"rows\"");
  bool maximize = j.value("maximize", true);
  std::vector<Rat> c;
  for (const auto& e : j["objective"]) c.push_back(rat_from_json(e));
  std::vector<std::vector<Rat>> A;
  std::vector<LpSense> senses;
  std::vector<Rat> b;
  for (const auto& row : j["rows"]) {
    if (!row.is_object() || !row.contains("coeffs") || !row.contains("sense") ||
        !row.contains("rhs"))
      fail(Errc::MalformedProblem, "each row needs \"coeffs\", \"sense\" and \"rhs\"");
    std::vector<Rat> coeffs;
    for (const auto& e : row["coeffs"]) coeffs.push_back(rat_from_json(e));
    A.push_back(std::move(coeffs));
    senses.push_back(sense_from_json(row["sense"]));
    b.push_back(rat_from_json(row["rhs"]));
  }
  auto bounds = [&](const char* key) {
    std::vector<std::optional<Rat>> out;
    if (!j.contains(key)) return out;
    for (const auto& e : j[key])
      out.push_back(e.is_null() ? std::optional<Rat>() : std::optional<Rat>(rat_from_json(e)));
    return out;
  };
  return LPProblem::make(maximize, std::move(c), std::move(A), std::move(senses),
                         std::move(b), bounds("lower"), bounds("upper"));
}

inline Json lp_result_json(const LpResult& r, int digits = 0) {
  Json out;
  switch (r.status) {
    case LpStatus::Optimal: {
      out["status"] = "optimal";
      out["point"] = rat_list_json(r.x);
      out["value"] = rat_json(r.value);
      if (digits > 0) out["value_decimal"] = dec_str(r.value, digits);
      out["dual"] = rat_list_json(r.dual);
      break;
    }
    case LpStatus::Infeasible:
      out["status"] = "infeasible";
      out["farkas"] = rat_list_json(r.farkas);
      break;
    case LpStatus::Unbounded:
      out["status"] = "unbounded";
      out["point"] = rat_list_json(r.x);
      out["ray"] = rat_list_json(r.ray);
      break;
  }
  return out;
}

}  // namespace condsets
