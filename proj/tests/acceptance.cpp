// End-to-end acceptance checks for the verifier. Each check prints exactly
// one PASS/FAIL line; the binary exits non-zero if any check fails.
//
// Run from the repository root: the checks read samples/*.mw and invoke the
// bundled solver wrapper tools/z3smt.cjs through node.

#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contracheck/ast_ops.hpp"
#include "contracheck/categorise.hpp"
#include "contracheck/counterexample.hpp"
#include "contracheck/driver.hpp"
#include "contracheck/interp.hpp"
#include "contracheck/solver.hpp"
#include "contracheck/wp.hpp"
#include "progen.hpp"
#include "testutil.hpp"

using namespace contracheck;
using Clock = std::chrono::steady_clock;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw CheckFailure(what);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  expect(bool(in), "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const GoalResult& goal_result(const RunResult& r, const std::string& id) {
  for (const auto& f : r.functions)
    for (const auto& g : f.goals)
      if (g.goal.id == id) return g;
  throw CheckFailure("no goal named " + id + " in the report");
}

ExecResult run_fn(const testutil::Compiled& c, const std::string& fn, ExecMode mode,
                  const CandidateCounterexample& ce) {
  Oracle oracle(ce);
  Interp interp(c.program, c.types, mode, {});
  return interp.run(*c.program.find_function(fn), &oracle);
}

bool same_outcome(const ExecOutcome& a, const ExecOutcome& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case OutcomeKind::Failure:
      return a.fail_loc == b.fail_loc && a.fail_kind.kind == b.fail_kind.kind;
    case OutcomeKind::Stuck: return a.stuck == b.stuck;
    case OutcomeKind::NonConclusive: return a.nc == b.nc;
    default: return true;
  }
}

// ---------------------------------------------------------------------------
// 1. The small demo program: the solver refutes the final assertion, the
//    model replays cleanly in standard mode but trips the assertion under
//    giant-step, and the verdict blames the callee's weak contract.
// ---------------------------------------------------------------------------

void check_toy_demo() {
  auto start = Clock::now();
  RunConfig cfg;
  cfg.files = {"samples/toy.mw"};
  RunResult r = run_verify(cfg);
  double took = seconds_since(start);

  expect(r.compile_ok, "toy.mw failed to compile");
  expect(r.exit_code() == 1, "expected exit code 1, got " + std::to_string(r.exit_code()));

  const GoalResult& g = goal_result(r, "main:assert:1");
  expect(g.status == GoalStatus::Categorised,
         "assertion goal ended as " + goal_status_name(g.status));
  expect(g.solver_status == SolverStatus::Sat, "assertion goal was not refuted");

  // The refutation must be the canonical one: x enters the call as 0 and
  // the contract admits 4 as the written value.
  expect(g.counterexample.has_value(), "no counterexample attached");
  const auto& triples = g.counterexample->triples;
  expect(triples.size() == 3, "expected 3 observations, got " + std::to_string(triples.size()));
  for (const auto& t : triples)
    expect(t.var.name == "x", "observation of unexpected variable " + t.var.name);
  expect(triples.front().value == Value::integer(0), "x does not start at 0");
  expect(triples.back().value == Value::integer(4), "the call write is not 4");

  expect(g.std_outcome && g.std_outcome->is(OutcomeKind::Normal),
         "standard execution did not complete normally");
  expect(g.giant_outcome && g.giant_outcome->is(OutcomeKind::Failure),
         "giant-step execution did not fail");
  expect(g.giant_outcome->fail_loc == g.goal.source,
         "giant-step failure is not at the assertion");
  expect(g.giant_outcome->fail_kind.kind == AnnKind::Assertion,
         "giant-step failure is not an assertion failure");

  expect(g.categorisation.has_value(), "goal was not categorised");
  expect(g.categorisation->verdict == Verdict::SubcontractWeakness,
         "verdict is " + verdict_name(g.categorisation->verdict));
  expect(took < 1.0, "took " + std::to_string(took) + "s (limit 1s)");
}

// ---------------------------------------------------------------------------
// 2. The integer square root: nine obligations (four invariant
//    initialisations, four preservations, one postcondition), all proved by
//    an external SMT solver.
// ---------------------------------------------------------------------------

void check_isqrt_proved() {
  auto start = Clock::now();
  RunConfig cfg;
  cfg.files = {"samples/isqrt.mw"};
  cfg.solver = "node tools/z3smt.cjs {file}";
  cfg.timeout_s = 25;
  RunResult r = run_verify(cfg);
  double took = seconds_since(start);

  expect(r.compile_ok, "isqrt.mw failed to compile");
  expect(r.functions.size() == 1 && r.functions[0].name == "isqrt",
         "expected exactly the isqrt function");
  const auto& goals = r.functions[0].goals;
  expect(goals.size() == 9, "expected 9 goals, got " + std::to_string(goals.size()));

  int init = 0, pres = 0, post = 0;
  for (const auto& g : goals) {
    if (g.goal.id.find(":loop-init:") != std::string::npos) ++init;
    if (g.goal.id.find(":loop-pres:") != std::string::npos) ++pres;
    if (g.goal.id.find(":post:") != std::string::npos) ++post;
    expect(g.status == GoalStatus::Proved,
           g.goal.id + " ended as " + goal_status_name(g.status) + " (" + g.solver_detail + ")");
  }
  expect(init == 4 && pres == 4 && post == 1,
         "unexpected goal breakdown: " + std::to_string(init) + " init, " +
             std::to_string(pres) + " preservation, " + std::to_string(post) + " post");
  expect(r.exit_code() == 0, "expected exit code 0");
  expect(took < 30.0, "took " + std::to_string(took) + "s (limit 30s)");
}

// ---------------------------------------------------------------------------
// 3. A mutated loop body: the second invariant is no longer preserved. Any
//    model of that obligation must replay as a failure of exactly that
//    invariant — a non-conformance — whichever solver produced it.
// ---------------------------------------------------------------------------

void check_mutated_body() {
  auto start = Clock::now();

  auto verify_with = [](const std::string& solver, double timeout) {
    RunConfig cfg;
    cfg.files = {"samples/isqrt_mut1.mw"};
    cfg.solver = solver;
    cfg.timeout_s = timeout;
    cfg.bound = 8;
    return run_verify(cfg);
  };

  auto check_one = [](const RunResult& r, const std::string& via) {
    const GoalResult& g = goal_result(r, "isqrt:loop-pres:2");
    expect(g.solver_status == SolverStatus::Sat,
           via + ": preservation of the second invariant was not refuted (" + g.solver_detail +
               ")");
    expect(g.status == GoalStatus::Categorised, via + ": goal was not categorised");
    expect(g.std_outcome && g.std_outcome->is(OutcomeKind::Failure),
           via + ": standard execution did not fail");
    expect(g.std_outcome->fail_loc == g.goal.source,
           via + ": standard failure is not at the second invariant (" +
               g.std_outcome->fail_loc.to_string() + ")");
    expect(g.std_outcome->fail_kind.kind == AnnKind::LoopInvariantPreserved,
           via + ": failure is not an invariant-preservation failure");
    expect(g.categorisation->verdict == Verdict::NonConformance,
           via + ": verdict is " + verdict_name(g.categorisation->verdict));
    expect(r.exit_code() == 1, via + ": expected exit code 1");
  };

  // Two independent model sources must both land on the same verdict: the
  // category depends only on replaying the model, not on which values the
  // solver happened to pick.
  check_one(verify_with("builtin", 10), "bounded search");
  check_one(verify_with("node tools/z3smt.cjs {file}", 25), "external solver");

  double took = seconds_since(start);
  expect(took < 30.0, "took " + std::to_string(took) + "s (limit 30s)");
}

// ---------------------------------------------------------------------------
// 4. A dropped invariant: the loop contract no longer pins the result, so
//    the postcondition is refutable, yet the program itself is fine — the
//    standard run completes and only the giant-step run fails.
// ---------------------------------------------------------------------------

void check_dropped_invariant() {
  auto start = Clock::now();
  RunConfig cfg;
  cfg.files = {"samples/isqrt_mut2.mw"};
  cfg.bound = 8;
  RunResult r = run_verify(cfg);
  double took = seconds_since(start);

  const GoalResult& g = goal_result(r, "isqrt:post:1");
  expect(g.solver_status == SolverStatus::Sat,
         "postcondition was not refuted (" + g.solver_detail + ")");
  expect(g.status == GoalStatus::Categorised, "goal was not categorised");
  expect(g.std_outcome && g.std_outcome->is(OutcomeKind::Normal),
         "standard execution did not complete normally");
  expect(g.giant_outcome && g.giant_outcome->is(OutcomeKind::Failure),
         "giant-step execution did not fail");
  expect(g.giant_outcome->fail_kind.kind == AnnKind::Postcondition,
         "giant-step failure is not a postcondition failure");
  expect(g.categorisation->verdict == Verdict::SubcontractWeakness,
         "verdict is " + verdict_name(g.categorisation->verdict));
  expect(took < 30.0, "took " + std::to_string(took) + "s (limit 30s)");
}

// ---------------------------------------------------------------------------
// 5. Soundness on valid programs: for randomly generated loop-and-call
//    programs whose every obligation is unrefutable within the bound,
//    exhaustive execution over the whole input box never fails a check.
// ---------------------------------------------------------------------------

void check_wp_soundness() {
  auto start = Clock::now();
  std::mt19937 rng(1005);
  int all_proved_programs = 0;

  for (int i = 0; i < 60; ++i) {
    progen::GeneratedProgram g = progen::gen_loop_call_program(rng);
    testutil::Compiled c = testutil::compile(g.source);

    bool all_unsat = true;
    for (const auto& goal : testutil::goals_of(c, g.name)) {
      SolverAnswer ans = solve_builtin(goal, 64);
      expect(ans.status != SolverStatus::Sat,
             "program " + std::to_string(i) + ": goal " + goal.id +
                 " claims a refutation of a valid obligation");
      if (ans.status != SolverStatus::Unsat) all_unsat = false;
    }
    if (!all_unsat) continue;  // not covered by the claim; do not count it
    ++all_proved_programs;

    const FunctionDecl* f = c.program.find_function(g.name);
    std::vector<Value> args(size_t(g.arity), Value::integer(0));
    auto run_point = [&](int p, int q) {
      args[0] = Value::integer(p);
      if (g.arity == 2) args[1] = Value::integer(q);
      ExecResult r = run_fn(c, g.name, ExecMode::Standard, testutil::entry_ce(*f, args));
      expect(r.outcome.is(OutcomeKind::Normal),
             "program " + std::to_string(i) + " at (" + std::to_string(p) + "," +
                 std::to_string(q) + "): " + r.outcome.to_string());
    };
    for (int p = -8; p <= 8; ++p) {
      if (g.arity == 1) {
        run_point(p, 0);
        continue;
      }
      for (int q = -8; q <= 8; ++q) run_point(p, q);
    }
  }

  expect(all_proved_programs >= 50, "only " + std::to_string(all_proved_programs) +
                                        " programs had every obligation proved (need 50)");
  double took = seconds_since(start);
  expect(took < 300.0, "took " + std::to_string(took) + "s (limit 300s)");
}

// ---------------------------------------------------------------------------
// 6. The assignment rule: wp(x <- t, Q) evaluated in s equals Q evaluated in
//    s[x := value of t in s], over a thousand random instances.
// ---------------------------------------------------------------------------

void check_assignment_rule() {
  auto start = Clock::now();
  testutil::Compiled empty = testutil::compile("");
  std::mt19937 rng(1006);
  int held = 0, failed = 0;

  for (int i = 0; i < 1000; ++i) {
    progen::SubstTriple t = progen::gen_subst_triple(rng);
    Expr assign = mk_expr(SourceLoc{"gen", 1, 1}, AssignExpr{t.target, t.term});
    Formula pre = wp(empty.program, empty.types, assign, t.formula);

    EvalResult lhs =
        eval_formula_in(empty.program, empty.types, ExecMode::Standard, pre, t.env);
    EvalResult tv =
        eval_expr_in(empty.program, empty.types, ExecMode::Standard, t.term, t.env);
    expect(lhs.outcome.is(OutcomeKind::Normal) && tv.outcome.is(OutcomeKind::Normal),
           "instance " + std::to_string(i) + ": evaluation did not complete");

    std::map<int, Value> updated = t.env;
    updated.insert_or_assign(t.target.id, tv.value);
    EvalResult rhs =
        eval_formula_in(empty.program, empty.types, ExecMode::Standard, t.formula, updated);
    expect(rhs.outcome.is(OutcomeKind::Normal),
           "instance " + std::to_string(i) + ": direct evaluation did not complete");
    expect(lhs.value.as_bool() == rhs.value.as_bool(),
           "instance " + std::to_string(i) + ": transformed and direct evaluation disagree");
    (rhs.value.as_bool() ? held : failed) += 1;
  }

  expect(held > 50 && failed > 50, "sample did not exercise both truth values");
  double took = seconds_since(start);
  expect(took < 10.0, "took " + std::to_string(took) + "s (limit 10s)");
}

// ---------------------------------------------------------------------------
// 7. The categoriser is total: every combination of outcomes gets a verdict
//    with an explanation, and the verdict follows the decision ladder.
// ---------------------------------------------------------------------------

void check_categoriser_total() {
  Goal goal;
  goal.id = "f:assert:1";
  goal.function = "f";
  goal.source = SourceLoc{"t.mw", 3, 5};
  goal.kind.kind = AnnKind::Assertion;
  goal.conclusion = mk_true(goal.source);

  auto outcome = [](OutcomeKind k) {
    ExecOutcome o;
    o.kind = k;
    return o;
  };
  auto failure_at = [&](SourceLoc loc) {
    ExecOutcome o;
    o.kind = OutcomeKind::Failure;
    o.fail_loc = loc;
    o.fail_kind.kind = AnnKind::Assertion;
    return o;
  };

  std::vector<ExecOutcome> variants;
  variants.push_back(outcome(OutcomeKind::Normal));
  variants.push_back(failure_at(goal.source));
  variants.push_back(failure_at(SourceLoc{"t.mw", 7, 2}));
  for (StuckReason s : {StuckReason::MissingOracleValue, StuckReason::OraclePostconditionMismatch,
                        StuckReason::OracleInvariantMismatch,
                        StuckReason::InvariantPreservedNoProgress}) {
    ExecOutcome o = outcome(OutcomeKind::Stuck);
    o.stuck = s;
    variants.push_back(o);
  }
  for (NcReason n : {NcReason::FuelExhausted, NcReason::MissingInputValue, NcReason::RuntimeGuard,
                     NcReason::AbstractCallee, NcReason::EntryContractViolated}) {
    ExecOutcome o = outcome(OutcomeKind::NonConclusive);
    o.nc = n;
    variants.push_back(o);
  }

  for (const ExecOutcome& s : variants) {
    for (const ExecOutcome& g : variants) {
      Categorisation c = categorise(goal, s, g);
      expect(!c.explanation.empty(), "empty explanation for a " + outcome_kind_name(s.kind) +
                                         "/" + outcome_kind_name(g.kind) + " pair");
      expect(!verdict_name(c.verdict).empty(), "verdict without a name");

      Verdict want;
      if (s.is(OutcomeKind::Failure) && s.fail_loc == goal.source)
        want = Verdict::NonConformance;
      else if (s.is(OutcomeKind::Failure))
        want = Verdict::NonConformanceElsewhere;
      else if (g.is(OutcomeKind::Failure))
        want = s.is(OutcomeKind::Normal) ? Verdict::SubcontractWeakness : Verdict::NonConclusive;
      else if (g.is(OutcomeKind::Stuck))
        want = Verdict::InvalidCounterexample;
      else if (g.is(OutcomeKind::Normal))
        want = Verdict::Discarded;
      else
        want = Verdict::NonConclusive;
      expect(c.verdict == want, "pair " + outcome_kind_name(s.kind) + "/" +
                                    outcome_kind_name(g.kind) + " got " +
                                    verdict_name(c.verdict) + ", want " + verdict_name(want));

      // When the standard run is non-conclusive and the giant-step run
      // fails, the verdict must stay imprecise and say so.
      bool imprecise =
          c.explanation.find("non-conformance or subcontract weakness") != std::string::npos;
      bool should = s.is(OutcomeKind::NonConclusive) && g.is(OutcomeKind::Failure);
      expect(imprecise == should, "imprecise wording on a " + outcome_kind_name(s.kind) + "/" +
                                      outcome_kind_name(g.kind) + " pair");
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Executor agreement: without loops or calls there are no havoc points,
//    so standard and giant-step execution must behave identically.
// ---------------------------------------------------------------------------

void check_executor_agreement() {
  auto start = Clock::now();
  std::mt19937 rng(1008);
  int failures = 0, guards = 0;

  for (int i = 0; i < 500; ++i) {
    progen::GeneratedProgram g = progen::gen_flat_program(rng);
    testutil::Compiled c = testutil::compile(g.source);
    const FunctionDecl* f = c.program.find_function(g.name);

    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Value> args;
      for (int k = 0; k < g.arity; ++k) args.push_back(Value::integer(progen::ri(rng, -8, 8)));
      CandidateCounterexample ce = testutil::entry_ce(*f, args);

      ExecResult std_run = run_fn(c, g.name, ExecMode::Standard, ce);
      ExecResult giant_run = run_fn(c, g.name, ExecMode::GiantStep, ce);
      expect(same_outcome(std_run.outcome, giant_run.outcome),
             "program " + std::to_string(i) + ": standard " + std_run.outcome.to_string() +
                 " vs giant-step " + giant_run.outcome.to_string());
      if (std_run.outcome.is(OutcomeKind::Normal))
        expect(std_run.result == giant_run.result,
               "program " + std::to_string(i) + ": same outcome, different results");
      if (std_run.outcome.is(OutcomeKind::Failure)) ++failures;
      if (std_run.outcome.is(OutcomeKind::NonConclusive) &&
          std_run.outcome.nc == NcReason::RuntimeGuard)
        ++guards;
    }
  }

  expect(failures > 20 && guards > 20, "sample did not exercise failing and guarded runs");
  double took = seconds_since(start);
  expect(took < 30.0, "took " + std::to_string(took) + "s (limit 30s)");
}

// ---------------------------------------------------------------------------
// 9. Model faithfulness: whenever the bounded search answers with a model,
//    re-evaluating the goal under that model satisfies every premise and
//    falsifies the conclusion — across the sample programs and a fresh
//    random corpus.
// ---------------------------------------------------------------------------

void check_model_faithfulness() {
  int sats = 0;

  auto scan = [&](const testutil::Compiled& c, const Int& bound, long long steps) {
    for (const auto& f : c.program.functions) {
      if (!f.body) continue;
      for (const auto& goal : testutil::goals_of(c, f.name.name)) {
        SolverAnswer ans = solve_builtin(goal, bound, steps);
        if (ans.status != SolverStatus::Sat) continue;
        expect(testutil::model_refutes(c, goal, ans.model),
               "model for " + goal.id + " does not refute the goal");
        ++sats;
      }
    }
  };

  for (const std::string& path :
       {std::string("samples/toy.mw"), std::string("samples/isqrt.mw"),
        std::string("samples/isqrt_mut1.mw"), std::string("samples/isqrt_mut2.mw")})
    scan(testutil::compile(read_file(path), path), 8, 5000000);

  std::mt19937 rng(1009);
  for (int i = 0; i < 60; ++i) {
    progen::GeneratedProgram g = progen::gen_flat_program(rng);
    scan(testutil::compile(g.source), 32, 2000000);
  }

  expect(sats >= 15, "only " + std::to_string(sats) + " refutations checked (need 15)");
}

}  // namespace

int main() {
  struct Check {
    std::string name;
    std::function<void()> body;
  };
  const std::vector<Check> checks = {
      {"demo program: weak callee contract found and blamed in under a second", check_toy_demo},
      {"integer square root: all nine obligations proved by the external solver",
       check_isqrt_proved},
      {"mutated loop body: every refutation replays as a non-conformance at the broken "
       "invariant",
       check_mutated_body},
      {"dropped invariant: postcondition refutation replays as a subcontract weakness",
       check_dropped_invariant},
      {"valid loop-and-call programs: obligations unrefutable and every execution conforms",
       check_wp_soundness},
      {"assignment rule matches direct state update on a thousand random instances",
       check_assignment_rule},
      {"categoriser is total and follows the decision ladder on every outcome pair",
       check_categoriser_total},
      {"havoc-free functions: standard and giant-step execution agree on five hundred "
       "programs",
       check_executor_agreement},
      {"every model produced across the corpus genuinely refutes its goal",
       check_model_faithfulness},
  };

  int failed = 0;
  for (const auto& check : checks) {
    try {
      check.body();
      std::cout << "PASS  " << check.name << "\n";
    } catch (const std::exception& e) {
      std::cout << "FAIL  " << check.name << " — " << e.what() << "\n";
      ++failed;
    }
  }
  if (failed != 0) std::cout << failed << " of " << checks.size() << " checks failed\n";
  return failed == 0 ? 0 : 1;
}
