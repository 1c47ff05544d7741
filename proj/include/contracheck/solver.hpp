#pragma once

#include <string>
#include <utility>
#include <vector>

#include "contracheck/goal.hpp"

namespace contracheck {

enum class SolverStatus {
  Unsat,    // negated goal unsatisfiable: the goal is proved
  Sat,      // a model of premises /\ not-conclusion was found
  Unknown,  // gave up (bound or budget exhausted, or solver said so)
  Timeout,
  Error,  // solver crashed or answered gibberish
};

std::string solver_status_name(SolverStatus s);

struct SolverAnswer {
  SolverStatus status = SolverStatus::Unknown;
  // Variable assignments keyed by solver-facing names (see goal_symbols),
  // in variable-map order for the builtin solver, solver order otherwise.
  std::vector<std::pair<std::string, Value>> model;
  std::string detail;  // answer line, reason, or error output
};

// Deterministic bounded model search for premises /\ not-conclusion.
// Variables take values in [-bound, bound], enumerated 0, 1, -1, 2, -2, ...
// in variable-map order (booleans: false then true); a premise of the shape
// v = t pins v once t's variables are known, even beyond the bound. Answers
// Unsat only when exhaustion provably covered all models: every variable was
// pinned, boolean, or confined to [-bound, bound] by interval reasoning on
// the premises. `max_steps` caps search nodes and formula evaluations;
// exceeding it yields Unknown.
SolverAnswer solve_builtin(const Goal& g, const Int& bound, long long max_steps = 20000000);

// Runs `cmd` through the shell on an SMT-LIB script. "{file}" in cmd is
// replaced with the path of a temporary file holding the script; without it
// the script is piped to stdin. The first output line is the answer; a model
// is parsed from the remaining output. The process is killed once
// `timeout_s` wall-clock seconds elapse (a non-positive timeout returns
// Timeout without running anything).
SolverAnswer solve_external(const std::string& cmd, const std::string& script, double timeout_s);

}  // namespace contracheck
