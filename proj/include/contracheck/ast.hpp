#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "contracheck/source_loc.hpp"
#include "contracheck/value.hpp"

namespace contracheck {

// A name occurrence. `id` identifies the declaration it refers to; it is 0
// in freshly parsed trees and positive after resolution. All later passes
// compare identifiers by id, so shadowing needs no special treatment.
struct Ident {
  std::string name;
  int id = 0;

  bool operator==(const Ident& o) const { return id == o.id && name == o.name; }
  bool operator!=(const Ident& o) const { return !(*this == o); }
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;
struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

// ---------------------------------------------------------------------------
// Annotations

enum class AnnKind {
  Precondition,           // of a callee, checked at a call site
  Postcondition,          // of a named function
  LoopInvariantInit,      // invariant holds on loop entry
  LoopInvariantPreserved, // invariant survives one iteration
  Assertion,              // assert statement or an implicit well-definedness check
};

struct AnnotationKind {
  AnnKind kind = AnnKind::Assertion;
  SourceLoc call_site;   // Precondition only: where the call happens
  std::string function;  // Postcondition only: whose contract
  int index = 0;         // invariants only: 1-based position within the loop
  std::string label;     // invariants only: optional source label

  bool operator==(const AnnotationKind& o) const {
    return kind == o.kind && call_site == o.call_site && function == o.function &&
           index == o.index && label == o.label;
  }
};

std::string ann_kind_tag(AnnKind k);   // short id fragment: "pre", "post", ...
std::string ann_kind_name(AnnKind k);  // human name: "precondition", ...

// ---------------------------------------------------------------------------
// Expressions

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge };

struct IntLit { Int value; };
struct BoolLit { bool value; };
struct UnitLit {};
struct VarRef { Ident var; };
struct ResultRef {};  // `result` inside an ensures clause
struct Binary { BinOp op; Expr lhs, rhs; };
struct NotExpr { Expr arg; };
struct AssignExpr { Ident target; Expr value; };
struct LetExpr {
  Ident var;
  bool is_ref = false;
  std::optional<Ty> declared_type;
  Expr init;
  Expr body;
};
struct SeqExpr { Expr first, rest; };
struct IfExpr { Expr cond, then_branch, else_branch; };
struct CallExpr { Ident callee; std::vector<Expr> args; };

struct Clause {
  Formula formula;
  std::string label;  // invariants may carry one; empty otherwise
};

struct WhileExpr {
  Expr cond;
  std::vector<Clause> invariants;
  std::optional<std::vector<Ident>> writes;  // clause as written, if any
  std::vector<Ident> effective_writes;       // filled in by resolution
  Expr body;
};
struct AssertExpr { Formula formula; };

struct ExprNode {
  SourceLoc loc;  // first token of the construct
  std::variant<IntLit, BoolLit, UnitLit, VarRef, ResultRef, Binary, NotExpr,
               AssignExpr, LetExpr, SeqExpr, IfExpr, CallExpr, WhileExpr,
               AssertExpr>
      v;
};

// ---------------------------------------------------------------------------
// Formulas

struct Atom { Expr expr; };  // a boolean-typed, effect-free expression
struct FNot { Formula arg; };
struct FAnd { Formula lhs, rhs; };
struct FOr { Formula lhs, rhs; };
struct FImplies { Formula lhs, rhs; };

// forall/exists binder over the half-open integer range [lo, hi).
struct QuantRange {
  bool is_forall = true;
  Ident binder;
  Expr lo, hi;
  Formula body;
};

// One logical variable introduced by the wp transformer, standing for the
// value a program variable has at a particular point (a havoc at a loop or
// call, or the value written by an assignment or let).
struct HavocBinding {
  Ident logic_var;
  Ty type = Ty::Int;
  Ident program_var;  // name "result" with id 0 stands for a call's result
  SourceLoc site;
};

// Unbounded universal quantification over logical variables; only the wp
// transformer builds these.
struct ForallLogic {
  std::vector<HavocBinding> binders;
  Formula body;
};

// Marks `inner` as a proof obligation of the given kind. Transparent for
// evaluation; goal splitting peels these off.
struct Check {
  AnnotationKind kind;
  SourceLoc source;  // the annotation being checked
  Formula inner;
};

struct FormulaNode {
  SourceLoc loc;  // first token of the formula
  std::variant<Atom, FNot, FAnd, FOr, FImplies, QuantRange, ForallLogic, Check> v;
};

// ---------------------------------------------------------------------------
// Declarations

struct Param {
  Ident ident;
  Ty type = Ty::Int;
  SourceLoc loc;
};

struct FunctionDecl {
  Ident name;
  SourceLoc loc;
  std::vector<Param> params;
  std::optional<Ty> return_type;  // may be inferred by the typechecker
  std::vector<Clause> pre, post;
  std::optional<std::vector<Ident>> writes;  // clause as written, if any
  std::vector<Ident> effective_writes;       // global footprint; resolution fills
  Expr body;                                 // null for an abstract function
};

struct GlobalDecl {
  Ident ident;
  SourceLoc loc;
  bool is_ref = false;
  std::optional<Ty> declared_type;
  Expr init;  // restricted to effect-free expressions
};

struct Program {
  std::vector<GlobalDecl> globals;
  std::vector<FunctionDecl> functions;
  int next_id = 1;  // first identifier id not used by any declaration

  const FunctionDecl* find_function(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name.name == name) return &f;
    return nullptr;
  }
  const GlobalDecl* find_global_by_id(int id) const {
    for (const auto& g : globals)
      if (g.ident.id == id) return &g;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Node construction helpers

template <typename T>
Expr mk_expr(SourceLoc loc, T node) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(loc), std::move(node)});
}
template <typename T>
Formula mk_formula(SourceLoc loc, T node) {
  return std::make_shared<const FormulaNode>(FormulaNode{std::move(loc), std::move(node)});
}

inline Expr mk_int(SourceLoc loc, Int v) { return mk_expr(std::move(loc), IntLit{std::move(v)}); }
inline Expr mk_bool(SourceLoc loc, bool v) { return mk_expr(std::move(loc), BoolLit{v}); }
inline Expr mk_unit(SourceLoc loc) { return mk_expr(std::move(loc), UnitLit{}); }
inline Expr mk_var(SourceLoc loc, Ident v) { return mk_expr(std::move(loc), VarRef{std::move(v)}); }
inline Expr mk_binary(SourceLoc loc, BinOp op, Expr l, Expr r) {
  return mk_expr(std::move(loc), Binary{op, std::move(l), std::move(r)});
}
inline Formula mk_atom(Expr e) {
  SourceLoc loc = e->loc;
  return mk_formula(std::move(loc), Atom{std::move(e)});
}
inline Formula mk_true(SourceLoc loc) { return mk_atom(mk_bool(std::move(loc), true)); }
inline Formula mk_and(Formula a, Formula b) {
  SourceLoc loc = a->loc;
  return mk_formula(std::move(loc), FAnd{std::move(a), std::move(b)});
}
inline Formula mk_or(Formula a, Formula b) {
  SourceLoc loc = a->loc;
  return mk_formula(std::move(loc), FOr{std::move(a), std::move(b)});
}
inline Formula mk_implies(Formula a, Formula b) {
  SourceLoc loc = a->loc;
  return mk_formula(std::move(loc), FImplies{std::move(a), std::move(b)});
}
inline Formula mk_not(Formula a) {
  SourceLoc loc = a->loc;
  return mk_formula(std::move(loc), FNot{std::move(a)});
}

// The pseudo-identifier used for a call's result in counterexamples and
// oracle queries. Id 0 never collides with a resolved declaration.
inline Ident result_ident() { return Ident{"result", 0}; }

}  // namespace contracheck
