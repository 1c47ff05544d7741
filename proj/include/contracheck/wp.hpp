#pragma once

#include <vector>

#include "contracheck/ast.hpp"
#include "contracheck/diagnostics.hpp"
#include "contracheck/goal.hpp"
#include "contracheck/typecheck.hpp"

namespace contracheck {

// Weakest precondition of `e` against postcondition `post`, by the standard
// rules: assignments substitute, sequencing composes, conditionals split,
// assertions conjoin, loops quantify over the loop's write set under the
// invariant, and calls check the callee precondition and quantify over the
// callee's writes and result under its postcondition. Fresh logical
// variables use ids starting at prog.next_id and never clash with program
// variables.
Formula wp(const Program& prog, const TypeInfo& types, const Expr& e, const Formula& post);

struct SplitResult {
  std::vector<Goal> goals;
  std::vector<Diag> errors;
};

// Generates the proof obligations of one function: one goal per checked
// annotation (callee preconditions at each call, invariant initialization
// and preservation per invariant, assertions, the function's postcondition
// per ensures clause, and divisor-non-zero checks), in source order.
// In goal formulas every intermediate program value is named by a fresh
// logical variable tied to its source location, so solver models translate
// directly into (variable, location, value) counterexample triples.
SplitResult split_goals(const Program& prog, const TypeInfo& types, const FunctionDecl& f);

}  // namespace contracheck
