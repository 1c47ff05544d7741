#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contracheck/categorise.hpp"
#include "contracheck/counterexample.hpp"
#include "contracheck/diagnostics.hpp"
#include "contracheck/goal.hpp"
#include "contracheck/interp.hpp"
#include "contracheck/solver.hpp"
#include "contracheck/typecheck.hpp"

namespace contracheck {

// Everything one verification run needs to know.
struct RunConfig {
  std::vector<std::string> files;
  std::string solver = "builtin";  // "builtin" or a command template with {file}
  double timeout_s = 10.0;         // per goal; external solvers only
  Int bound = 32;                  // builtin model search half-width
  long long solver_steps = 20000000;  // builtin evaluation budget
  long long fuel = 100000;            // execution step budget per run
  int jobs = 0;                       // goal workers; 0 = hardware concurrency
  int expand_limit = 64;  // bounded quantifiers unrolled up to this width
  bool trace = false;     // keep per-goal execution traces
};

// Where one goal ended up after solving and (when refuted) categorising.
enum class GoalStatus {
  Proved,       // negation unsatisfiable
  Categorised,  // solver produced a model; both executions ran; verdict below
  Unknown,      // solver could not decide and offered no model
  Timeout,      // external solver exceeded the time limit
  Error,        // solver failed to run or answered garbage
};

std::string goal_status_name(GoalStatus s);

struct GoalResult {
  Goal goal;
  GoalStatus status = GoalStatus::Unknown;
  SolverStatus solver_status = SolverStatus::Unknown;
  std::string solver_detail;
  double solve_ms = 0;
  std::optional<CandidateCounterexample> counterexample;
  std::optional<ExecOutcome> std_outcome;
  std::optional<ExecOutcome> giant_outcome;
  std::optional<Categorisation> categorisation;
  std::vector<std::string> std_trace;
  std::vector<std::string> giant_trace;
};

struct FunctionResult {
  std::string name;
  std::string file;
  std::vector<GoalResult> goals;
};

struct RunResult {
  RunConfig config;
  std::vector<Diag> errors;  // lex/parse/resolve/type diagnostics, all files
  std::vector<FunctionResult> functions;
  double wall_ms = 0;
  bool compile_ok = true;

  bool all_proved() const;
  // 0: everything proved (or nothing to prove); 1: some goal not proved;
  // 2: inputs did not compile or could not be read.
  int exit_code() const;
};

// One goal through the whole pipeline: solve the negation; on a model,
// translate it and run the standard and giant-step executions; categorise.
GoalResult process_goal(const Program& prog, const TypeInfo& types, const Goal& goal,
                        const RunConfig& cfg);

// The full pipeline on in-memory sources (filename, text). Compile errors
// disable goal processing and set compile_ok = false.
RunResult run_verify_sources(const RunConfig& cfg,
                             const std::vector<std::pair<std::string, std::string>>& sources);

// Reads cfg.files from disk and runs the pipeline. Unreadable files become
// diagnostics with code "IoError".
RunResult run_verify(const RunConfig& cfg);

}  // namespace contracheck
