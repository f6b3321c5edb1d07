// pflin: linearized AC power flow in rectangular coordinates.
//
//   pflin solve   CASE [--method M] [--oracle] [--format F] [--override-conditions] [--timings]
//   pflin check   CASE [--format F]
//   pflin compare CASE --alpha-list 1,0.5,0.25 [--method M] [--format F]
//
// Exit status: 0 success, 2 parse/validation error, 3 solver error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pflin/casefile.hpp"
#include "pflin/errors.hpp"
#include "pflin/pipeline.hpp"
#include "pflin/report.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Args {
  std::string case_path;
  std::string method = "auto";
  std::string format = "table";
  bool oracle = false;
  bool override_conditions = false;
  bool timings = false;
  std::vector<double> alphas{1.0, 0.5, 0.25, 0.125};
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("case", a.case_path, "Case file (JSON, schema_version \"1\")")->required();
  cmd->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
}

void add_method(CLI::App* cmd, Args& a) {
  cmd->add_option("--method", a.method, "Linearization method")
      ->check(CLI::IsMember({"auto", "general", "noload", "lossless", "dc", "bolognani", "decoupled"}))
      ->capture_default_str();
  cmd->add_flag("--override-conditions", a.override_conditions,
                "Solve the lossless system even when its dominance conditions fail");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearized AC power flow in rectangular voltage coordinates"};
  app.require_subcommand(1);
  Args args;

  auto* solve = app.add_subcommand("solve", "Solve a case with a linearized method and report residuals");
  add_common(solve, args);
  add_method(solve, args);
  solve->add_flag("--oracle", args.oracle, "Also run the Newton-Raphson oracle and report errors");
  solve->add_flag("--timings", args.timings, "Append wall-clock timings (output no longer reproducible)");

  auto* check = app.add_subcommand("check", "Report structural and dominance diagnostics only");
  add_common(check, args);

  auto* compare = app.add_subcommand("compare", "Sweep loading factors and compare against the oracle");
  add_common(compare, args);
  add_method(compare, args);
  compare->add_option("--alpha-list", args.alphas, "Comma-separated loading factors")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  const auto format = pflin::parse_report_format(args.format).value();
  pflin::RunOptions options;
  options.method = pflin::parse_method_choice(args.method).value();
  options.with_oracle = args.oracle;
  options.override_conditions = args.override_conditions;
  options.with_timings = args.timings;

  try {
    const auto network = pflin::parse_case_file(args.case_path);
    if (solve->parsed()) {
      std::cout << pflin::emit_report(pflin::run_pipeline(network, options), format);
    } else if (check->parsed()) {
      std::cout << pflin::emit_report(pflin::run_check(network), format);
    } else {
      std::cout << pflin::emit_compare(pflin::run_compare(network, options, args.alphas), format);
    }
  } catch (const pflin::ValidationError& e) {
    std::cerr << "VALIDATION_ERROR\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kExitValidation;
  } catch (const pflin::Error& e) {
    std::cerr << e.what() << "\n";
    return pflin::is_validation_error(e.code()) ? kExitValidation : kExitSolver;
  }
  return 0;
}
