#include "contracheck/ast_ops.hpp"

#include <functional>
#include <map>

namespace contracheck {

namespace {

bool ident_equal(const Ident& a, const Ident& b, bool ids) {
  return a.name == b.name && (!ids || a.id == b.id);
}

bool ident_list_equal(const std::vector<Ident>& a, const std::vector<Ident>& b, bool ids) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ident_equal(a[i], b[i], ids)) return false;
  return true;
}

bool clauses_equal(const std::vector<Clause>& a, const std::vector<Clause>& b, bool ids) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label) return false;
    if (!formula_equal(a[i].formula, b[i].formula, ids)) return false;
  }
  return true;
}

}  // namespace

bool expr_equal(const Expr& a, const Expr& b, bool ids) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->v);
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, UnitLit> || std::is_same_v<T, ResultRef>) {
          return true;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return ident_equal(x.var, y.var, ids);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && expr_equal(x.lhs, y.lhs, ids) && expr_equal(x.rhs, y.rhs, ids);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return expr_equal(x.arg, y.arg, ids);
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          return ident_equal(x.target, y.target, ids) && expr_equal(x.value, y.value, ids);
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          return ident_equal(x.var, y.var, ids) && x.is_ref == y.is_ref &&
                 x.declared_type == y.declared_type && expr_equal(x.init, y.init, ids) &&
                 expr_equal(x.body, y.body, ids);
        } else if constexpr (std::is_same_v<T, SeqExpr>) {
          return expr_equal(x.first, y.first, ids) && expr_equal(x.rest, y.rest, ids);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          return expr_equal(x.cond, y.cond, ids) &&
                 expr_equal(x.then_branch, y.then_branch, ids) &&
                 expr_equal(x.else_branch, y.else_branch, ids);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          if (!ident_equal(x.callee, y.callee, false)) return false;
          if (x.args.size() != y.args.size()) return false;
          for (size_t i = 0; i < x.args.size(); ++i)
            if (!expr_equal(x.args[i], y.args[i], ids)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, WhileExpr>) {
          if (!expr_equal(x.cond, y.cond, ids) || !expr_equal(x.body, y.body, ids)) return false;
          if (!clauses_equal(x.invariants, y.invariants, ids)) return false;
          if (x.writes.has_value() != y.writes.has_value()) return false;
          if (x.writes && !ident_list_equal(*x.writes, *y.writes, ids)) return false;
          return ident_list_equal(x.effective_writes, y.effective_writes, ids);
        } else if constexpr (std::is_same_v<T, AssertExpr>) {
          return formula_equal(x.formula, y.formula, ids);
        }
      },
      a->v);
}

bool formula_equal(const Formula& a, const Formula& b, bool ids) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->v.index() != b->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->v);
        if constexpr (std::is_same_v<T, Atom>) {
          return expr_equal(x.expr, y.expr, ids);
        } else if constexpr (std::is_same_v<T, FNot>) {
          return formula_equal(x.arg, y.arg, ids);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                             std::is_same_v<T, FImplies>) {
          return formula_equal(x.lhs, y.lhs, ids) && formula_equal(x.rhs, y.rhs, ids);
        } else if constexpr (std::is_same_v<T, QuantRange>) {
          return x.is_forall == y.is_forall && ident_equal(x.binder, y.binder, ids) &&
                 expr_equal(x.lo, y.lo, ids) && expr_equal(x.hi, y.hi, ids) &&
                 formula_equal(x.body, y.body, ids);
        } else if constexpr (std::is_same_v<T, ForallLogic>) {
          if (x.binders.size() != y.binders.size()) return false;
          for (size_t i = 0; i < x.binders.size(); ++i) {
            if (!ident_equal(x.binders[i].logic_var, y.binders[i].logic_var, ids)) return false;
            if (x.binders[i].type != y.binders[i].type) return false;
            if (!ident_equal(x.binders[i].program_var, y.binders[i].program_var, ids))
              return false;
          }
          return formula_equal(x.body, y.body, ids);
        } else if constexpr (std::is_same_v<T, Check>) {
          return x.kind == y.kind && formula_equal(x.inner, y.inner, ids);
        }
      },
      a->v);
}

bool program_equal(const Program& a, const Program& b, bool ids) {
  if (a.globals.size() != b.globals.size() || a.functions.size() != b.functions.size())
    return false;
  for (size_t i = 0; i < a.globals.size(); ++i) {
    const auto& x = a.globals[i];
    const auto& y = b.globals[i];
    if (!ident_equal(x.ident, y.ident, ids) || x.is_ref != y.is_ref ||
        x.declared_type != y.declared_type || !expr_equal(x.init, y.init, ids))
      return false;
  }
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const auto& x = a.functions[i];
    const auto& y = b.functions[i];
    if (!ident_equal(x.name, y.name, false)) return false;
    if (x.params.size() != y.params.size()) return false;
    for (size_t j = 0; j < x.params.size(); ++j) {
      if (!ident_equal(x.params[j].ident, y.params[j].ident, ids) ||
          x.params[j].type != y.params[j].type)
        return false;
    }
    if (x.return_type != y.return_type) return false;
    if (!clauses_equal(x.pre, y.pre, ids) || !clauses_equal(x.post, y.post, ids)) return false;
    if (x.writes.has_value() != y.writes.has_value()) return false;
    if (x.writes && !ident_list_equal(*x.writes, *y.writes, ids)) return false;
    if (!ident_list_equal(x.effective_writes, y.effective_writes, ids)) return false;
    if ((x.body == nullptr) != (y.body == nullptr)) return false;
    if (x.body && !expr_equal(x.body, y.body, ids)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Substitution

Expr subst_expr(const Expr& e, const Subst& s) {
  if (!e || s.empty()) return e;
  return std::visit(
      [&](const auto& x) -> Expr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          auto it = s.find(x.var.id);
          if (it != s.end()) return it->second;
          return e;
        } else if constexpr (std::is_same_v<T, Binary>) {
          Expr l = subst_expr(x.lhs, s), r = subst_expr(x.rhs, s);
          if (l == x.lhs && r == x.rhs) return e;
          return mk_expr(e->loc, Binary{x.op, std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          Expr a = subst_expr(x.arg, s);
          if (a == x.arg) return e;
          return mk_expr(e->loc, NotExpr{std::move(a)});
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          Expr v = subst_expr(x.value, s);
          if (v == x.value) return e;
          return mk_expr(e->loc, AssignExpr{x.target, std::move(v)});
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          Expr i = subst_expr(x.init, s), b = subst_expr(x.body, s);
          if (i == x.init && b == x.body) return e;
          return mk_expr(e->loc, LetExpr{x.var, x.is_ref, x.declared_type, std::move(i),
                                         std::move(b)});
        } else if constexpr (std::is_same_v<T, SeqExpr>) {
          Expr f = subst_expr(x.first, s), r = subst_expr(x.rest, s);
          if (f == x.first && r == x.rest) return e;
          return mk_expr(e->loc, SeqExpr{std::move(f), std::move(r)});
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          Expr c = subst_expr(x.cond, s), t = subst_expr(x.then_branch, s),
               el = subst_expr(x.else_branch, s);
          if (c == x.cond && t == x.then_branch && el == x.else_branch) return e;
          return mk_expr(e->loc, IfExpr{std::move(c), std::move(t), std::move(el)});
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::vector<Expr> args;
          bool changed = false;
          args.reserve(x.args.size());
          for (const auto& a : x.args) {
            args.push_back(subst_expr(a, s));
            changed |= args.back() != a;
          }
          if (!changed) return e;
          return mk_expr(e->loc, CallExpr{x.callee, std::move(args)});
        } else if constexpr (std::is_same_v<T, WhileExpr>) {
          std::vector<Clause> invs;
          invs.reserve(x.invariants.size());
          for (const auto& c : x.invariants)
            invs.push_back(Clause{subst_formula(c.formula, s), c.label});
          return mk_expr(e->loc, WhileExpr{subst_expr(x.cond, s), std::move(invs), x.writes,
                                           x.effective_writes, subst_expr(x.body, s)});
        } else if constexpr (std::is_same_v<T, AssertExpr>) {
          Formula f = subst_formula(x.formula, s);
          if (f == x.formula) return e;
          return mk_expr(e->loc, AssertExpr{std::move(f)});
        } else {
          return e;  // literals, result
        }
      },
      e->v);
}

Formula subst_formula(const Formula& f, const Subst& s) {
  if (!f || s.empty()) return f;
  return std::visit(
      [&](const auto& x) -> Formula {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          Expr e = subst_expr(x.expr, s);
          if (e == x.expr) return f;
          return mk_formula(f->loc, Atom{std::move(e)});
        } else if constexpr (std::is_same_v<T, FNot>) {
          Formula a = subst_formula(x.arg, s);
          if (a == x.arg) return f;
          return mk_formula(f->loc, FNot{std::move(a)});
        } else if constexpr (std::is_same_v<T, FAnd>) {
          Formula l = subst_formula(x.lhs, s), r = subst_formula(x.rhs, s);
          if (l == x.lhs && r == x.rhs) return f;
          return mk_formula(f->loc, FAnd{std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, FOr>) {
          Formula l = subst_formula(x.lhs, s), r = subst_formula(x.rhs, s);
          if (l == x.lhs && r == x.rhs) return f;
          return mk_formula(f->loc, FOr{std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, FImplies>) {
          Formula l = subst_formula(x.lhs, s), r = subst_formula(x.rhs, s);
          if (l == x.lhs && r == x.rhs) return f;
          return mk_formula(f->loc, FImplies{std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, QuantRange>) {
          // Binder ids are unique after resolution, so no capture is possible.
          return mk_formula(f->loc, QuantRange{x.is_forall, x.binder, subst_expr(x.lo, s),
                                               subst_expr(x.hi, s), subst_formula(x.body, s)});
        } else if constexpr (std::is_same_v<T, ForallLogic>) {
          Formula b = subst_formula(x.body, s);
          if (b == x.body) return f;
          return mk_formula(f->loc, ForallLogic{x.binders, std::move(b)});
        } else if constexpr (std::is_same_v<T, Check>) {
          Formula i = subst_formula(x.inner, s);
          if (i == x.inner) return f;
          return mk_formula(f->loc, Check{x.kind, x.source, std::move(i)});
        }
      },
      f->v);
}

Expr subst_result_expr(const Expr& e, const Expr& replacement) {
  if (!e) return e;
  if (std::holds_alternative<ResultRef>(e->v)) return replacement;
  return std::visit(
      [&](const auto& x) -> Expr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Binary>) {
          Expr l = subst_result_expr(x.lhs, replacement), r = subst_result_expr(x.rhs, replacement);
          if (l == x.lhs && r == x.rhs) return e;
          return mk_expr(e->loc, Binary{x.op, std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          Expr a = subst_result_expr(x.arg, replacement);
          if (a == x.arg) return e;
          return mk_expr(e->loc, NotExpr{std::move(a)});
        } else {
          // `result` only occurs in contract formulas, whose atoms are
          // effect-free: no other composite can contain it.
          return e;
        }
      },
      e->v);
}

Formula subst_result_formula(const Formula& f, const Expr& replacement) {
  if (!f) return f;
  return std::visit(
      [&](const auto& x) -> Formula {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          Expr e = subst_result_expr(x.expr, replacement);
          if (e == x.expr) return f;
          return mk_formula(f->loc, Atom{std::move(e)});
        } else if constexpr (std::is_same_v<T, FNot>) {
          return mk_formula(f->loc, FNot{subst_result_formula(x.arg, replacement)});
        } else if constexpr (std::is_same_v<T, FAnd>) {
          return mk_formula(f->loc, FAnd{subst_result_formula(x.lhs, replacement),
                                         subst_result_formula(x.rhs, replacement)});
        } else if constexpr (std::is_same_v<T, FOr>) {
          return mk_formula(f->loc, FOr{subst_result_formula(x.lhs, replacement),
                                        subst_result_formula(x.rhs, replacement)});
        } else if constexpr (std::is_same_v<T, FImplies>) {
          return mk_formula(f->loc, FImplies{subst_result_formula(x.lhs, replacement),
                                             subst_result_formula(x.rhs, replacement)});
        } else if constexpr (std::is_same_v<T, QuantRange>) {
          return mk_formula(f->loc,
                            QuantRange{x.is_forall, x.binder, subst_result_expr(x.lo, replacement),
                                       subst_result_expr(x.hi, replacement),
                                       subst_result_formula(x.body, replacement)});
        } else if constexpr (std::is_same_v<T, ForallLogic>) {
          return mk_formula(f->loc, ForallLogic{x.binders, subst_result_formula(x.body, replacement)});
        } else if constexpr (std::is_same_v<T, Check>) {
          return mk_formula(f->loc, Check{x.kind, x.source, subst_result_formula(x.inner, replacement)});
        }
      },
      f->v);
}

// ---------------------------------------------------------------------------
// Free variables

void free_vars(const Expr& e, std::set<int>& out) {
  if (!e) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          out.insert(x.var.id);
        } else if constexpr (std::is_same_v<T, Binary>) {
          free_vars(x.lhs, out);
          free_vars(x.rhs, out);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          free_vars(x.arg, out);
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          out.insert(x.target.id);
          free_vars(x.value, out);
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          free_vars(x.init, out);
          std::set<int> body;
          free_vars(x.body, body);
          body.erase(x.var.id);
          out.insert(body.begin(), body.end());
        } else if constexpr (std::is_same_v<T, SeqExpr>) {
          free_vars(x.first, out);
          free_vars(x.rest, out);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          free_vars(x.cond, out);
          free_vars(x.then_branch, out);
          free_vars(x.else_branch, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          for (const auto& a : x.args) free_vars(a, out);
        } else if constexpr (std::is_same_v<T, WhileExpr>) {
          free_vars(x.cond, out);
          for (const auto& c : x.invariants) free_vars(c.formula, out);
          free_vars(x.body, out);
        } else if constexpr (std::is_same_v<T, AssertExpr>) {
          free_vars(x.formula, out);
        }
      },
      e->v);
}

void free_vars(const Formula& f, std::set<int>& out) {
  if (!f) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          free_vars(x.expr, out);
        } else if constexpr (std::is_same_v<T, FNot>) {
          free_vars(x.arg, out);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                             std::is_same_v<T, FImplies>) {
          free_vars(x.lhs, out);
          free_vars(x.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantRange>) {
          free_vars(x.lo, out);
          free_vars(x.hi, out);
          std::set<int> body;
          free_vars(x.body, body);
          body.erase(x.binder.id);
          out.insert(body.begin(), body.end());
        } else if constexpr (std::is_same_v<T, ForallLogic>) {
          std::set<int> body;
          free_vars(x.body, body);
          for (const auto& b : x.binders) body.erase(b.logic_var.id);
          out.insert(body.begin(), body.end());
        } else if constexpr (std::is_same_v<T, Check>) {
          free_vars(x.inner, out);
        }
      },
      f->v);
}

std::set<int> free_vars(const Formula& f) {
  std::set<int> out;
  free_vars(f, out);
  return out;
}

std::set<int> free_vars(const Expr& e) {
  std::set<int> out;
  free_vars(e, out);
  return out;
}

// ---------------------------------------------------------------------------

bool is_effect_free(const Expr& e) {
  if (!e) return true;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit> ||
                      std::is_same_v<T, UnitLit> || std::is_same_v<T, VarRef> ||
                      std::is_same_v<T, ResultRef>) {
          return true;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return is_effect_free(x.lhs) && is_effect_free(x.rhs);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return is_effect_free(x.arg);
        } else {
          return false;
        }
      },
      e->v);
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (!f) return;
  if (const auto* a = std::get_if<FAnd>(&f->v)) {
    flatten_and(a->lhs, out);
    flatten_and(a->rhs, out);
  } else {
    out.push_back(f);
  }
}

void collect_divisions(const Expr& e, std::vector<DivisionSite>& out) {
  if (!e) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Binary>) {
          collect_divisions(x.lhs, out);
          collect_divisions(x.rhs, out);
          if (x.op == BinOp::Div || x.op == BinOp::Mod)
            out.push_back(DivisionSite{x.rhs, e->loc});
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          collect_divisions(x.arg, out);
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          collect_divisions(x.value, out);
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          collect_divisions(x.init, out);
          collect_divisions(x.body, out);
        } else if constexpr (std::is_same_v<T, SeqExpr>) {
          collect_divisions(x.first, out);
          collect_divisions(x.rest, out);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          collect_divisions(x.cond, out);
          collect_divisions(x.then_branch, out);
          collect_divisions(x.else_branch, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          for (const auto& a : x.args) collect_divisions(a, out);
        } else if constexpr (std::is_same_v<T, WhileExpr>) {
          collect_divisions(x.cond, out);
          collect_divisions(x.body, out);
        } else if constexpr (std::is_same_v<T, AssertExpr>) {
          collect_divisions(x.formula, out);
        }
      },
      e->v);
}

void collect_divisions(const Formula& f, std::vector<DivisionSite>& out) {
  if (!f) return;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atom>) {
          collect_divisions(x.expr, out);
        } else if constexpr (std::is_same_v<T, FNot>) {
          collect_divisions(x.arg, out);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                             std::is_same_v<T, FImplies>) {
          collect_divisions(x.lhs, out);
          collect_divisions(x.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantRange>) {
          collect_divisions(x.lo, out);
          collect_divisions(x.hi, out);
          collect_divisions(x.body, out);
        } else if constexpr (std::is_same_v<T, ForallLogic>) {
          collect_divisions(x.body, out);
        } else if constexpr (std::is_same_v<T, Check>) {
          collect_divisions(x.inner, out);
        }
      },
      f->v);
}

// ---------------------------------------------------------------------------
// Global footprints

namespace {

struct FootprintScan {
  const Program& prog;
  std::set<int> global_ids;
  // name -> (read ids, written ids, called function names)
  struct Raw {
    std::set<int> reads, writes;
    std::set<std::string> calls;
  };
  std::unordered_map<std::string, Raw> raw;

  void scan_expr(const Expr& e, Raw& r) {
    if (!e) return;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (global_ids.count(x.var.id)) r.reads.insert(x.var.id);
          } else if constexpr (std::is_same_v<T, Binary>) {
            scan_expr(x.lhs, r);
            scan_expr(x.rhs, r);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            scan_expr(x.arg, r);
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            if (global_ids.count(x.target.id)) r.writes.insert(x.target.id);
            scan_expr(x.value, r);
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            scan_expr(x.init, r);
            scan_expr(x.body, r);
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            scan_expr(x.first, r);
            scan_expr(x.rest, r);
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            scan_expr(x.cond, r);
            scan_expr(x.then_branch, r);
            scan_expr(x.else_branch, r);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            r.calls.insert(x.callee.name);
            for (const auto& a : x.args) scan_expr(a, r);
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            scan_expr(x.cond, r);
            for (const auto& c : x.invariants) scan_formula(c.formula, r);
            scan_expr(x.body, r);
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            scan_formula(x.formula, r);
          }
        },
        e->v);
  }

  void scan_formula(const Formula& f, Raw& r) {
    if (!f) return;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            scan_expr(x.expr, r);
          } else if constexpr (std::is_same_v<T, FNot>) {
            scan_formula(x.arg, r);
          } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                               std::is_same_v<T, FImplies>) {
            scan_formula(x.lhs, r);
            scan_formula(x.rhs, r);
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            scan_expr(x.lo, r);
            scan_expr(x.hi, r);
            scan_formula(x.body, r);
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            scan_formula(x.body, r);
          } else if constexpr (std::is_same_v<T, Check>) {
            scan_formula(x.inner, r);
          }
        },
        f->v);
  }
};

}  // namespace

std::unordered_map<std::string, Footprint> compute_footprints(const Program& prog) {
  FootprintScan scan{prog};
  for (const auto& g : prog.globals) scan.global_ids.insert(g.ident.id);

  for (const auto& f : prog.functions) {
    auto& r = scan.raw[f.name.name];
    for (const auto& c : f.pre) scan.scan_formula(c.formula, r);
    for (const auto& c : f.post) scan.scan_formula(c.formula, r);
    if (f.body) scan.scan_expr(f.body, r);
    // Declared effects count even without a body.
    for (const auto& w : f.effective_writes) r.writes.insert(w.id);
  }

  // Propagate through calls until stable (handles recursion).
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [name, r] : scan.raw) {
      for (const auto& callee : r.calls) {
        auto it = scan.raw.find(callee);
        if (it == scan.raw.end()) continue;
        for (int id : it->second.reads) changed |= r.reads.insert(id).second;
        for (int id : it->second.writes) changed |= r.writes.insert(id).second;
      }
    }
  }

  std::unordered_map<std::string, Footprint> out;
  for (const auto& f : prog.functions) {
    const auto& r = scan.raw[f.name.name];
    Footprint fp;
    for (const auto& g : prog.globals) {
      if (r.reads.count(g.ident.id)) fp.reads.push_back(g.ident);
      if (r.writes.count(g.ident.id)) fp.writes.push_back(g.ident);
    }
    out[f.name.name] = std::move(fp);
  }
  return out;
}

}  // namespace contracheck
