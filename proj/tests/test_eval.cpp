#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "checks.hpp"
#include "condsets/eval.hpp"

using namespace condsets;

namespace {

std::vector<Json> run(const std::string& src) { return eval_program_json(src); }

std::string error_of(const std::string& src) {
  try {
    eval_program_json(src);
  } catch (const CondError& e) {
    return e.what();
  }
  return "";
}

Errc code_of(const std::string& src) {
  try {
    eval_program_json(src);
  } catch (const CondError& e) {
    return e.code;
  }
  return Errc::EvalError;
}

const char* kPrelude = R"(
(def A (algebra "w1" "w2"))
(def X (carrier A ("w1" 1 2 3) ("w2" 1 2)))
(def Y1 (subset X ("w1" 1 2) ("w2" 1)))
(def Y2 (subset X ("w1" 2 3)))
)";

}  // namespace

TEST_CASE("definitions bind and ops print typed JSON with a support") {
  auto out = run(std::string(kPrelude) + "(inter Y1 Y2)");
  REQUIRE(out.size() == 1);
  CHECK(out[0]["type"] == "subset");
  CHECK(out[0]["lives_on"] == Json::array({"w1"}));
  CHECK(out[0]["value"]["points"]["w1"] == Json::array({2}));
  CHECK(!out[0]["value"]["points"].contains("w2"));

  out = run(std::string(kPrelude) + "(compl Y2)");
  CHECK(out[0]["value"]["points"]["w1"] == Json::array({1}));
  CHECK(out[0]["value"]["points"]["w2"] == Json::array({1, 2}));
}

TEST_CASE("comparison produces the trichotomy partition") {
  auto out = run(R"(
(def A (algebra "w1" "w2"))
(def x (real A ("w1" 1/2) ("w2" 5)))
(def y (real A 2))
(compare x y)
(leq? x y)
)");
  REQUIRE(out.size() == 2);
  CHECK(out[0]["type"] == "trichotomy");
  CHECK(out[0]["value"]["lt"] == Json::array({"w1"}));
  CHECK(out[0]["value"]["gt"] == Json::array({"w2"}));
  CHECK(out[0]["value"]["eq"] == Json::array());
  CHECK(out[1]["value"] == false);
}

TEST_CASE("parse errors carry line and column") {
  std::string e = error_of("(union Y1\n");
  CHECK(e.find("ParseError") != std::string::npos);
  CHECK(e.find("line 1 col 1") != std::string::npos);
  CHECK(code_of("(union Y1\n") == Errc::ParseError);

  e = error_of("(def x 1))");
  CHECK(e.find("unmatched ')'") != std::string::npos);
  CHECK(e.find("line 1 col 10") != std::string::npos);

  e = error_of("(def s \"abc");
  CHECK(e.find("unterminated string") != std::string::npos);
}

TEST_CASE("evaluation errors carry the failing site") {
  CHECK(code_of("(union 1 2)") == Errc::EvalError);
  std::string e = error_of("(union 1 2)");
  CHECK(e.find("expected a subset") != std::string::npos);
  CHECK(e.find("line 1 col 8") != std::string::npos);

  e = error_of("nope");
  CHECK(e.find("unbound name 'nope'") != std::string::npos);

  e = error_of("(frobnicate 1)");
  CHECK(e.find("unknown operation 'frobnicate'") != std::string::npos);

  // a module error surfaces as an evaluation error at the calling form
  e = error_of(R"(
(def A (algebra "w1"))
(def B (algebra "w1"))
(def x (real A 1))
(def y (real B 1))
(add x y)
)");
  CHECK(code_of(R"(
(def A (algebra "w1"))
(def B (algebra "w1"))
(add (real A 1) (real B 1))
)") == Errc::EvalError);
  CHECK(e.find("AlgebraMismatch") != std::string::npos);
  CHECK(e.find("line 6 col 1") != std::string::npos);
}

TEST_CASE("linear ops run through the program surface") {
  auto out = run(R"(
(def A (algebra "w1"))
(def P (poly A ("w1" (1 0) (0 1))))
(polar P)
(separate (poly A ("w1" (0 0))) (poly A ("w1" (3 0) (3 1))) strict)
(def K (sublinear P))
(extend K (list (vec A ("w1" 1 0))) (list (real A ("w1" 1/2))))
(def B (poly A ("w1" (1 0) (0 1) (-1 0) (0 -1))))
(norm B (vec A ("w1" 1/2 1/2)))
)");
  REQUIRE(out.size() == 4);
  CHECK(out[0]["type"] == "polar");
  CHECK(out[0]["value"]["rows"]["w1"].size() == 4);
  CHECK(out[1]["type"] == "separation");
  // a strict separation certifies a positive gap
  CHECK(out[1]["value"]["eps"]["values"]["w1"] != "0");
  CHECK(out[2]["type"] == "vector");
  CHECK(out[3]["type"] == "real");
  CHECK(out[3]["value"]["values"]["w1"] == "1");
}

TEST_CASE("programs can hand a problem file to the solver") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "condsets_eval_test";
  fs::create_directories(dir);
  fs::path file = dir / "prob.json";
  {
    std::ofstream out(file);
    out << R"({"maximize": true, "objective": ["3", "2"],
               "rows": [{"coeffs": ["1", "1"], "sense": "<=", "rhs": "4"},
                        {"coeffs": ["1", "3"], "sense": "<=", "rhs": "6"}],
               "lower": ["0", "0"]})";
  }
  auto out = run("(lp \"" + file.string() + "\")");
  REQUIRE(out.size() == 1);
  CHECK(out[0]["type"] == "table");
  CHECK(out[0]["value"]["status"] == "optimal");
  CHECK(out[0]["value"]["value"] == "12");
  std::error_code ec;
  fs::remove_all(dir, ec);
}

TEST_CASE("topology and filters compose through the DSL") {
  auto out = run(std::string(kPrelude) + R"(
(def T (discrete X))
(closed? T (closure T Y1))
(compact? T)
(def F (filter X (subset X ("w1" 1 2) ("w2" 1 2))))
(contains (ultra F) (subset X ("w1" 1 2) ("w2" 1 2)))
(image (func X X ("w1" (1 2) (2 2) (3 3)) ("w2" (1 1) (2 1))) Y1)
)");
  REQUIRE(out.size() == 4);
  CHECK(out[0]["value"] == true);
  CHECK(out[1]["value"] == true);
  CHECK(out[2]["value"] == true);
  CHECK(out[3]["type"] == "subset");
  CHECK(out[3]["value"]["points"]["w1"] == Json::array({2}));
  CHECK(out[3]["value"]["points"]["w2"] == Json::array({1}));
}
