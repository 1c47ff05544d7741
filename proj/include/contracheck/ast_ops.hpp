#pragma once

#include <set>
#include <unordered_map>
#include <vector>

#include "contracheck/ast.hpp"

namespace contracheck {

// Structural equality, ignoring source locations. When `compare_ids` is
// false, identifiers match by name alone (useful for raw, unresolved trees).
bool expr_equal(const Expr& a, const Expr& b, bool compare_ids = true);
bool formula_equal(const Formula& a, const Formula& b, bool compare_ids = true);
bool program_equal(const Program& a, const Program& b, bool compare_ids = true);

// Capture-free substitution of identifiers (keyed by id) with expressions.
// Quantifier and havoc binders are left untouched; because resolution gives
// every binder a distinct id, no renaming is required.
using Subst = std::unordered_map<int, Expr>;
Expr subst_expr(const Expr& e, const Subst& s);
Formula subst_formula(const Formula& f, const Subst& s);

// Replace `result` with a concrete expression (used when instantiating a
// postcondition).
Expr subst_result_expr(const Expr& e, const Expr& replacement);
Formula subst_result_formula(const Formula& f, const Expr& replacement);

// Free identifier ids of an expression / formula. Range-quantifier binders
// and havoc binders are bound within their bodies.
void free_vars(const Expr& e, std::set<int>& out);
void free_vars(const Formula& f, std::set<int>& out);
std::set<int> free_vars(const Formula& f);
std::set<int> free_vars(const Expr& e);

// True when evaluating the expression can have no side effect: literals,
// variables, `result`, boolean/arithmetic operators. Division is allowed
// (well-definedness is checked separately).
bool is_effect_free(const Expr& e);

// Splits nested conjunctions into a flat list (left to right).
void flatten_and(const Formula& f, std::vector<Formula>& out);

// Every division or modulo occurring in the formula, as (divisor, location)
// in evaluation order. Used to emit well-definedness obligations.
struct DivisionSite {
  Expr divisor;
  SourceLoc loc;
};
void collect_divisions(const Formula& f, std::vector<DivisionSite>& out);
void collect_divisions(const Expr& e, std::vector<DivisionSite>& out);

// The global variables a function may read or write, directly or through
// calls (bodies, contracts and annotations included). Order follows the
// global declaration order of the program.
struct Footprint {
  std::vector<Ident> reads;
  std::vector<Ident> writes;
};
std::unordered_map<std::string, Footprint> compute_footprints(const Program& prog);

}  // namespace contracheck
