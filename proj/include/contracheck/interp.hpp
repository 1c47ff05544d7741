#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contracheck/ast.hpp"
#include "contracheck/counterexample.hpp"
#include "contracheck/typecheck.hpp"

namespace contracheck {

// How a checked execution ended.
enum class OutcomeKind {
  Normal,         // ran to completion, every checked annotation held
  Failure,        // some annotation evaluated to false
  Stuck,          // giant-step only: the counterexample gave unusable values
  NonConclusive,  // execution could not decide (missing input, guard, fuel)
};

enum class StuckReason {
  MissingOracleValue,            // no value for a havoc point
  OraclePostconditionMismatch,   // call result values contradict the callee contract
  OracleInvariantMismatch,       // loop havoc values contradict the invariants
  InvariantPreservedNoProgress,  // after one checked iteration nothing refutes the loop
};

enum class NcReason {
  FuelExhausted,
  MissingInputValue,      // counterexample lacks an entry value
  RuntimeGuard,           // division by zero in code or in a checked formula
  AbstractCallee,         // standard execution reached a function without a body
  EntryContractViolated,  // the counterexample does not satisfy the precondition
};

std::string outcome_kind_name(OutcomeKind k);
std::string stuck_reason_name(StuckReason r);
std::string nc_reason_name(NcReason r);

struct ExecOutcome {
  OutcomeKind kind = OutcomeKind::Normal;
  SourceLoc fail_loc;        // Failure: the annotation that was false
  AnnotationKind fail_kind;  // Failure: what kind of annotation it was
  StuckReason stuck = StuckReason::MissingOracleValue;
  NcReason nc = NcReason::FuelExhausted;
  std::string detail;

  bool is(OutcomeKind k) const { return kind == k; }
  std::string to_string() const;
};

enum class ExecMode {
  Standard,  // loops iterate and calls run the callee body
  GiantStep, // loops and calls jump straight to counterexample values
};

struct ExecOptions {
  long long fuel = 1000000;  // evaluation steps (incl. quantifier iterations)
  int max_call_depth = 1000;
  // When positive, quantified havoc variables (which are unbounded) are
  // evaluated by enumerating [-n, n]; only tests use this.
  long long logic_quant_bound = 0;
  bool capture_loop_snapshots = false;  // record loop-head states (standard mode)
  bool trace = false;
};

struct ExecResult {
  ExecOutcome outcome;
  Value result = Value::unit();
  std::vector<std::string> trace;
  // With capture_loop_snapshots: variable values at each loop-head visit,
  // keyed like counterexample triples (loop location, writes order).
  std::vector<CeTriple> loop_snapshots;
  bool oracle_fallback = false;
};

// Runs one function against a counterexample: entry values come from the
// oracle (parameters and the globals the function touches, at the function's
// location), the function's own precondition is verified, the body executes
// in the given mode checking every annotation, and finally the function's
// own postcondition is checked.
class Interp {
 public:
  Interp(const Program& prog, const TypeInfo& types, ExecMode mode, ExecOptions opts = {});

  // `oracle` may be null for closed programs (no parameters or free global
  // reads); giant-step execution without an oracle gets stuck at the first
  // havoc point.
  ExecResult run(const FunctionDecl& f, Oracle* oracle);

  struct Impl;

 private:
  const Program& prog_;
  const TypeInfo& types_;
  ExecMode mode_;
  ExecOptions opts_;
};

// Single-expression / single-formula evaluation under an explicit
// environment, mainly for property tests. The value of a formula evaluation
// is a boolean.
struct EvalResult {
  ExecOutcome outcome;
  Value value = Value::unit();
};
EvalResult eval_expr_in(const Program& prog, const TypeInfo& types, ExecMode mode, const Expr& e,
                        const std::map<int, Value>& env, const ExecOptions& opts = {},
                        Oracle* oracle = nullptr);
EvalResult eval_formula_in(const Program& prog, const TypeInfo& types, ExecMode mode,
                           const Formula& f, const std::map<int, Value>& env,
                           const ExecOptions& opts = {}, Oracle* oracle = nullptr);

}  // namespace contracheck
