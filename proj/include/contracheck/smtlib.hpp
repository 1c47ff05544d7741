#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "contracheck/goal.hpp"

namespace contracheck {

// Solver-facing names for a goal's logical variables, in variable-map order.
// Names follow the source names; a clash (shadowing can produce two distinct
// variables with equal names) gets a numeric suffix.
struct SymbolTable {
  std::vector<std::string> names;        // parallel to goal.var_map
  std::map<int, std::string> by_id;      // logical var id -> solver name
  std::map<std::string, int> index_of;   // solver name -> var_map index
};
SymbolTable goal_symbols(const Goal& g);

// Renders one formula as an SMT-LIB term using the given variable names.
// Bounded quantifiers with literal bounds spanning at most `expand_limit`
// values are expanded into finite conjunctions/disjunctions; all other
// quantifiers are emitted natively with a guarded body.
std::string formula_to_smt(const Formula& f, const std::map<int, std::string>& names,
                           int expand_limit = 64);

// The complete SMT-LIB script for a goal: declarations in variable-map
// order, one assert per premise, the negated conclusion, check-sat and
// get-model. Deterministic: equal goals yield byte-equal scripts.
std::string emit_query(const Goal& g, int expand_limit = 64);

// Extracts (name, value) pairs from a solver's get-model output: every
// zero-argument define-fun of sort Int or Bool. Values may be numerals,
// negated numerals, true or false. Quoted |symbols| are unquoted. Entries
// that do not match are skipped.
std::vector<std::pair<std::string, Value>> parse_model(const std::string& text);

}  // namespace contracheck
