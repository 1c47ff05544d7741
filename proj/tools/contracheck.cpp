// Command-line front end: verify contract-annotated source files and print
// a text or JSON report.
//
//   contracheck verify file.mw
//   contracheck verify file.mw --solver "node tools/z3smt.cjs {file}" --format json
//
// Exit status: 0 when every goal is proved (or there is nothing to prove),
// 1 when some goal is not proved, 2 on usage, IO, or compile errors.
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "contracheck/driver.hpp"
#include "contracheck/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"contracheck: deductive verification with counterexample categorisation"};
  app.require_subcommand(1);

  contracheck::RunConfig cfg;
  std::string bound_str = "32";
  std::string format = "text";

  CLI::App* verify = app.add_subcommand("verify", "Generate and discharge verification goals");
  verify->add_option("files", cfg.files, "Source files (.mw)")->required()->expected(-1);
  verify->add_option("--solver", cfg.solver,
                     "External solver command ({file} expands to the query path; the script is "
                     "also piped to stdin), or \"builtin\" for the bounded model search")
      ->capture_default_str();
  verify->add_option("--timeout", cfg.timeout_s, "External solver time limit per goal, seconds")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--bound", bound_str, "Builtin search bound: models range over [-B, B]")
      ->capture_default_str();
  verify->add_option("--fuel", cfg.fuel, "Execution step budget per checked run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--jobs", cfg.jobs, "Parallel goal workers (0 = all hardware threads)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--format", format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--trace", cfg.trace, "Record per-step execution traces in the report");
  verify->add_option("--expand-limit", cfg.expand_limit,
                     "Widest bounded quantifier unrolled in solver queries")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--solver-steps", cfg.solver_steps,
                     "Builtin solver evaluation budget before giving up")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // normalise usage errors; --help stays 0
  }

  try {
    cfg.bound = contracheck::Int(bound_str);
  } catch (const std::exception&) {
    std::cerr << "contracheck: --bound expects an integer, got \"" << bound_str << "\"\n";
    return 2;
  }
  if (cfg.bound < 0) {
    std::cerr << "contracheck: --bound must be non-negative\n";
    return 2;
  }

  contracheck::RunResult result = contracheck::run_verify(cfg);

  if (format == "json") {
    for (const auto& d : result.errors) std::cerr << d.to_string() << "\n";
    std::cout << contracheck::report_json(result).dump(2) << "\n";
  } else {
    std::cout << contracheck::report_text(result);
  }
  return result.exit_code();
}
