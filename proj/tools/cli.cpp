#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "condsets/eval.hpp"
#include "condsets/json_io.hpp"
#include "condsets/lp.hpp"
#include "condsets/suites.hpp"

namespace {

// 0 ok, 1 the checked material failed, 2 usage or malformed input
constexpr int kOk = 0;
constexpr int kFailures = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path);
  if (!in) {
    ok = false;
    return {};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  ok = true;
  return buf.str();
}

int print_reports(const std::vector<condsets::SuiteReport>& reports, bool as_json,
                  bool timing) {
  bool failed = false;
  for (const auto& r : reports) {
    if (as_json)
      std::printf("%s\n", condsets::report_json(r, timing).dump().c_str());
    else
      std::fputs(condsets::report_text(r, timing).c_str(), stdout);
    failed = failed || !r.failures.empty();
  }
  return failed ? kFailures : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for conditional sets, topology, numbers and duality"};
  app.require_subcommand(1);

  condsets::SuiteOptions opts;
  std::string suite, path, fault_name;
  bool as_json = false, timing = false;
  int digits = 0;

  auto add_shape = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opts.seed, "random seed")->capture_default_str();
    cmd->add_option("--cases", opts.cases, "number of cases")->capture_default_str();
    cmd->add_option("--atoms-max", opts.atoms_max, "largest algebra")->capture_default_str();
    cmd->add_option("--carrier-max", opts.carrier_max, "largest carrier slice")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "worker threads, 0 picks automatically")
        ->capture_default_str();
    cmd->add_flag("--json", as_json, "emit the report as JSON");
    cmd->add_flag("--timing", timing, "include wall time in the report");
  };

  CLI::App* check = app.add_subcommand("check", "run a property suite");
  check->add_option("suite", suite,
                    "powerset|functions|filters|topology|numbers|linear|all")
      ->required();
  add_shape(check);
  check->add_option("--fault", fault_name,
                    "inject a known defect (complement-support) to exercise reporting");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an s-expression program");
  eval_cmd->add_option("file", path, "program file")->required();

  CLI::App* lp_cmd = app.add_subcommand("lp", "solve a JSON linear program");
  lp_cmd->add_option("file", path, "problem file")->required();
  lp_cmd->add_option("--digits", digits, "append a decimal rendering of the value")
      ->capture_default_str();

  CLI::App* fuzz = app.add_subcommand("fuzz", "random cases across all suites");
  add_shape(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) {
      if (!fault_name.empty()) {
        if (fault_name != "complement-support") {
          std::fprintf(stderr, "error: unknown fault '%s'\n", fault_name.c_str());
          return kUsage;
        }
        opts.fault = condsets::kFaultComplementSupport;
      }
      if (suite == "all") return print_reports(condsets::run_all(opts), as_json, timing);
      return print_reports({condsets::run_suite(suite, opts)}, as_json, timing);
    }
    if (eval_cmd->parsed()) {
      bool ok = false;
      std::string src = read_file(path, ok);
      if (!ok) {
        std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
        return kUsage;
      }
      std::fputs(condsets::eval_program(src).c_str(), stdout);
      return kOk;
    }
    if (lp_cmd->parsed()) {
      bool ok = false;
      std::string src = read_file(path, ok);
      if (!ok) {
        std::fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
        return kUsage;
      }
      condsets::Json j = condsets::Json::parse(src, nullptr, false);
      if (j.is_discarded()) {
        std::fprintf(stderr, "error: malformed JSON in '%s'\n", path.c_str());
        return kUsage;
      }
      condsets::LpResult r = condsets::lp_solve(condsets::lp_from_json(j));
      std::printf("%s\n", condsets::lp_result_json(r, digits).dump().c_str());
      return kOk;
    }
    if (fuzz->parsed()) {
      condsets::SuiteReport r = condsets::run_fuzz(opts);
      if (as_json)
        std::printf("%s\n", condsets::report_json(r, timing).dump().c_str());
      else
        std::fputs(condsets::report_text(r, timing).c_str(), stdout);
      return r.failures.empty() ? kOk : kFailures;
    }
  } catch (const condsets::CondError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    using condsets::Errc;
    if (e.code == Errc::ParseError || e.code == Errc::MalformedProblem ||
        e.code == Errc::MalformedDescriptor || e.code == Errc::UnknownSuite)
      return kUsage;
    return kFailures;
  }
  return kUsage;
}
