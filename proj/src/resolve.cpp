#include "contracheck/resolve.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "contracheck/ast_ops.hpp"

namespace contracheck {

namespace {

struct Binding {
  int id = 0;
  bool is_mutable = false;
  bool is_global = false;
};

struct Resolver {
  const Program& raw;
  std::vector<Diag>& diags;
  int next = 1;

  std::unordered_map<std::string, const FunctionDecl*> fn_table;
  std::vector<std::unordered_map<std::string, Binding>> scopes;
  bool allow_result = false;

  void error(const SourceLoc& loc, std::string code, std::string msg) {
    diags.push_back(Diag{loc, std::move(code), std::move(msg)});
  }

  int fresh() { return next++; }

  void push_scope() { scopes.emplace_back(); }
  void pop_scope() { scopes.pop_back(); }

  const Binding* lookup(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  Binding bind(const SourceLoc& loc, const std::string& name, bool is_mutable, bool is_global) {
    auto& top = scopes.back();
    if (top.count(name))
      error(loc, "DuplicateDefinition", "'" + name + "' is already defined in this scope");
    Binding b{fresh(), is_mutable, is_global};
    top[name] = b;
    return b;
  }

  // ---- expressions ----------------------------------------------------------

  Expr expr(const Expr& e) {
    if (!e) return e;
    return std::visit(
        [&](const auto& x) -> Expr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (const Binding* b = lookup(x.var.name))
              return mk_var(e->loc, Ident{x.var.name, b->id});
            if (fn_table.count(x.var.name))
              error(e->loc, "NotAValue",
                    "'" + x.var.name + "' is a function; call it with arguments or ()");
            else
              error(e->loc, "UnboundVariable", "unbound variable '" + x.var.name + "'");
            return e;
          } else if constexpr (std::is_same_v<T, Binary>) {
            Expr l = expr(x.lhs), r = expr(x.rhs);
            return mk_expr(e->loc, Binary{x.op, l, r});
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return mk_expr(e->loc, NotExpr{expr(x.arg)});
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            Expr v = expr(x.value);
            Ident target = x.target;
            if (const Binding* b = lookup(x.target.name)) {
              target.id = b->id;
              if (!b->is_mutable)
                error(e->loc, "AssignToImmutable",
                      "cannot assign to immutable variable '" + x.target.name + "'");
            } else {
              error(e->loc, "UnboundVariable", "unbound variable '" + x.target.name + "'");
            }
            return mk_expr(e->loc, AssignExpr{target, v});
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            Expr init = expr(x.init);
            push_scope();
            Binding b = bind(e->loc, x.var.name, x.is_ref, false);
            Expr body = expr(x.body);
            pop_scope();
            return mk_expr(e->loc, LetExpr{Ident{x.var.name, b.id}, x.is_ref, x.declared_type,
                                           init, body});
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            Expr f = expr(x.first);
            Expr r = expr(x.rest);
            return mk_expr(e->loc, SeqExpr{f, r});
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            Expr c = expr(x.cond);
            Expr t = expr(x.then_branch);
            Expr el = expr(x.else_branch);
            return mk_expr(e->loc, IfExpr{c, t, el});
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            std::vector<Expr> args;
            auto it = fn_table.find(x.callee.name);
            if (it == fn_table.end()) {
              error(e->loc, "UnboundVariable", "unknown function '" + x.callee.name + "'");
              for (const auto& a : x.args) args.push_back(expr(a));
              return mk_expr(e->loc, CallExpr{x.callee, std::move(args)});
            }
            const FunctionDecl* callee = it->second;
            std::vector<Expr> raw_args = x.args;
            // `f ()` calls a parameterless function.
            if (callee->params.empty() && raw_args.size() == 1 &&
                std::holds_alternative<UnitLit>(raw_args[0]->v))
              raw_args.clear();
            if (raw_args.size() != callee->params.size())
              error(e->loc, "ArityMismatch",
                    "'" + x.callee.name + "' takes " + std::to_string(callee->params.size()) +
                        " argument(s), got " + std::to_string(raw_args.size()));
            for (const auto& a : raw_args) args.push_back(expr(a));
            return mk_expr(e->loc, CallExpr{x.callee, std::move(args)});
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            Expr c = expr(x.cond);
            std::vector<Clause> invs;
            for (const auto& cl : x.invariants)
              invs.push_back(Clause{formula(cl.formula), cl.label});
            std::optional<std::vector<Ident>> writes;
            if (x.writes) {
              writes.emplace();
              for (const auto& w : *x.writes) {
                Ident wi = w;
                if (const Binding* b = lookup(w.name)) {
                  wi.id = b->id;
                  if (!b->is_mutable)
                    error(e->loc, "WritesImmutable",
                          "writes clause lists immutable variable '" + w.name + "'");
                } else {
                  error(e->loc, "UnboundVariable",
                        "unbound variable '" + w.name + "' in writes clause");
                }
                writes->push_back(wi);
              }
            }
            Expr body = expr(x.body);
            return mk_expr(e->loc, WhileExpr{c, std::move(invs), std::move(writes), {}, body});
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            return mk_expr(e->loc, AssertExpr{formula(x.formula)});
          } else {
            return e;  // literals
          }
        },
        e->v);
  }

  // ---- formulas -------------------------------------------------------------

  Expr formula_atom_expr(const Expr& e) {
    if (!is_effect_free(e))
      error(e->loc, "ImpureAnnotation",
            "annotations must be effect-free (no assignment, call or loop)");
    if (!allow_result && contains_result(e))
      error(e->loc, "ResultOutsideEnsures", "`result` is only meaningful in an ensures clause");
    return expr(e);
  }

  static bool contains_result(const Expr& e) {
    if (!e) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ResultRef>) {
            return true;
          } else if constexpr (std::is_same_v<T, Binary>) {
            return contains_result(x.lhs) || contains_result(x.rhs);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return contains_result(x.arg);
          } else {
            return false;
          }
        },
        e->v);
  }

  Formula formula(const Formula& f) {
    if (!f) return f;
    return std::visit(
        [&](const auto& x) -> Formula {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return mk_formula(f->loc, Atom{formula_atom_expr(x.expr)});
          } else if constexpr (std::is_same_v<T, FNot>) {
            return mk_formula(f->loc, FNot{formula(x.arg)});
          } else if constexpr (std::is_same_v<T, FAnd>) {
            return mk_formula(f->loc, FAnd{formula(x.lhs), formula(x.rhs)});
          } else if constexpr (std::is_same_v<T, FOr>) {
            return mk_formula(f->loc, FOr{formula(x.lhs), formula(x.rhs)});
          } else if constexpr (std::is_same_v<T, FImplies>) {
            return mk_formula(f->loc, FImplies{formula(x.lhs), formula(x.rhs)});
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            Expr lo = formula_atom_expr(x.lo);
            Expr hi = formula_atom_expr(x.hi);
            push_scope();
            Binding b = bind(f->loc, x.binder.name, false, false);
            Formula body = formula(x.body);
            pop_scope();
            return mk_formula(f->loc, QuantRange{x.is_forall, Ident{x.binder.name, b.id}, lo,
                                                 hi, body});
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            error(f->loc, "InternalForm", "internal quantifier form in source formula");
            return f;
          } else if constexpr (std::is_same_v<T, Check>) {
            error(f->loc, "InternalForm", "internal check form in source formula");
            return f;
          }
        },
        f->v);
  }

  // ---- writes inference -----------------------------------------------------

  // Effective global writes per function, via fixpoint over the call graph.
  // A declared clause pins the function's effective set.
  std::unordered_map<std::string, std::vector<Ident>> function_writes(const Program& p) {
    std::unordered_map<std::string, std::set<int>> actual;
    std::unordered_map<int, Ident> global_by_id;
    std::unordered_set<int> global_ids;
    for (const auto& g : p.globals) {
      global_ids.insert(g.ident.id);
      global_by_id[g.ident.id] = g.ident;
    }

    auto scan = [&](const std::string& name, const Expr& body, auto&& self_scan,
                    const std::unordered_map<std::string, std::set<int>>& current) {
      std::set<int> acc;
      std::function<void(const Expr&)> walk = [&](const Expr& e) {
        if (!e) return;
        std::visit(
            [&](const auto& x) {
              using T = std::decay_t<decltype(x)>;
              if constexpr (std::is_same_v<T, AssignExpr>) {
                if (global_ids.count(x.target.id)) acc.insert(x.target.id);
                walk(x.value);
              } else if constexpr (std::is_same_v<T, Binary>) {
                walk(x.lhs);
                walk(x.rhs);
              } else if constexpr (std::is_same_v<T, NotExpr>) {
                walk(x.arg);
              } else if constexpr (std::is_same_v<T, LetExpr>) {
                walk(x.init);
                walk(x.body);
              } else if constexpr (std::is_same_v<T, SeqExpr>) {
                walk(x.first);
                walk(x.rest);
              } else if constexpr (std::is_same_v<T, IfExpr>) {
                walk(x.cond);
                walk(x.then_branch);
                walk(x.else_branch);
              } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (const auto& a : x.args) walk(a);
                auto it = current.find(x.callee.name);
                if (it != current.end()) acc.insert(it->second.begin(), it->second.end());
              } else if constexpr (std::is_same_v<T, WhileExpr>) {
                walk(x.cond);
                walk(x.body);
              }
            },
            e->v);
      };
      walk(body);
      (void)name;
      (void)self_scan;
      return acc;
    };

    // Seed declared sets, then iterate the undeclared ones until stable.
    std::unordered_map<std::string, std::set<int>> effective;
    for (const auto& f : p.functions) {
      if (f.writes) {
        std::set<int> s;
        for (const auto& w : *f.writes) s.insert(w.id);
        effective[f.name.name] = std::move(s);
      } else {
        effective[f.name.name] = {};
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& f : p.functions) {
        if (f.writes || !f.body) continue;
        std::set<int> s = scan(f.name.name, f.body, scan, effective);
        if (s != effective[f.name.name]) {
          effective[f.name.name] = std::move(s);
          changed = true;
        }
      }
    }

    // Check declared clauses cover the inferred sets.
    for (const auto& f : p.functions) {
      if (!f.writes || !f.body) continue;
      std::set<int> s = scan(f.name.name, f.body, scan, effective);
      for (int id : s) {
        bool listed = std::any_of(f.writes->begin(), f.writes->end(),
                                  [&](const Ident& w) { return w.id == id; });
        if (!listed)
          error(f.loc, "WritesClauseIncomplete",
                "function '" + f.name.name + "' writes '" + global_by_id[id].name +
                    "' but its writes clause does not list it");
      }
    }

    // Materialize as ordered ident lists: declared order, or global
    // declaration order when inferred.
    std::unordered_map<std::string, std::vector<Ident>> out;
    for (const auto& f : p.functions) {
      if (f.writes) {
        out[f.name.name] = *f.writes;
      } else {
        std::vector<Ident> v;
        for (const auto& g : p.globals)
          if (effective[f.name.name].count(g.ident.id)) v.push_back(g.ident);
        out[f.name.name] = std::move(v);
      }
    }
    return out;
  }

  // Rebuilds an expression tree filling every loop's effective_writes: the
  // variables assigned in its body (first occurrence order) plus the global
  // writes of functions it calls.
  Expr fill_loop_writes(const Expr& e,
                        const std::unordered_map<std::string, std::vector<Ident>>& fw) {
    if (!e) return e;
    return std::visit(
        [&](const auto& x) -> Expr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Binary>) {
            return mk_expr(e->loc, Binary{x.op, fill_loop_writes(x.lhs, fw),
                                          fill_loop_writes(x.rhs, fw)});
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return mk_expr(e->loc, NotExpr{fill_loop_writes(x.arg, fw)});
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            return mk_expr(e->loc, AssignExpr{x.target, fill_loop_writes(x.value, fw)});
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            return mk_expr(e->loc, LetExpr{x.var, x.is_ref, x.declared_type,
                                           fill_loop_writes(x.init, fw),
                                           fill_loop_writes(x.body, fw)});
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            return mk_expr(e->loc, SeqExpr{fill_loop_writes(x.first, fw),
                                           fill_loop_writes(x.rest, fw)});
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            return mk_expr(e->loc, IfExpr{fill_loop_writes(x.cond, fw),
                                          fill_loop_writes(x.then_branch, fw),
                                          fill_loop_writes(x.else_branch, fw)});
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            std::vector<Expr> args;
            for (const auto& a : x.args) args.push_back(fill_loop_writes(a, fw));
            return mk_expr(e->loc, CallExpr{x.callee, std::move(args)});
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            Expr body = fill_loop_writes(x.body, fw);
            std::vector<Ident> actual;
            std::unordered_set<int> seen;
            std::function<void(const Expr&)> walk = [&](const Expr& b) {
              if (!b) return;
              std::visit(
                  [&](const auto& y) {
                    using U = std::decay_t<decltype(y)>;
                    if constexpr (std::is_same_v<U, AssignExpr>) {
                      if (seen.insert(y.target.id).second) actual.push_back(y.target);
                      walk(y.value);
                    } else if constexpr (std::is_same_v<U, Binary>) {
                      walk(y.lhs);
                      walk(y.rhs);
                    } else if constexpr (std::is_same_v<U, NotExpr>) {
                      walk(y.arg);
                    } else if constexpr (std::is_same_v<U, LetExpr>) {
                      walk(y.init);
                      walk(y.body);
                    } else if constexpr (std::is_same_v<U, SeqExpr>) {
                      walk(y.first);
                      walk(y.rest);
                    } else if constexpr (std::is_same_v<U, IfExpr>) {
                      walk(y.cond);
                      walk(y.then_branch);
                      walk(y.else_branch);
                    } else if constexpr (std::is_same_v<U, CallExpr>) {
                      for (const auto& a : y.args) walk(a);
                      auto it = fw.find(y.callee.name);
                      if (it != fw.end())
                        for (const auto& w : it->second)
                          if (seen.insert(w.id).second) actual.push_back(w);
                    } else if constexpr (std::is_same_v<U, WhileExpr>) {
                      walk(y.cond);
                      walk(y.body);
                    }
                  },
                  b->v);
            };
            walk(body);
            std::vector<Ident> effective;
            if (x.writes) {
              for (const auto& w : actual) {
                bool listed = std::any_of(x.writes->begin(), x.writes->end(),
                                          [&](const Ident& d) { return d.id == w.id; });
                if (!listed)
                  error(e->loc, "WritesClauseIncomplete",
                        "loop writes '" + w.name + "' but its writes clause does not list it");
              }
              effective = *x.writes;
            } else {
              effective = actual;
            }
            return mk_expr(e->loc, WhileExpr{fill_loop_writes(x.cond, fw), x.invariants,
                                             x.writes, std::move(effective), body});
          } else {
            return e;
          }
        },
        e->v);
  }

  // ---- top level ------------------------------------------------------------

  Program run() {
    Program out;

    for (const auto& f : raw.functions) {
      if (fn_table.count(f.name.name))
        error(f.loc, "DuplicateDefinition", "function '" + f.name.name + "' is already defined");
      fn_table[f.name.name] = &f;
    }

    push_scope();  // globals
    for (const auto& g : raw.globals) {
      if (!is_effect_free(g.init))
        error(g.loc, "ImpureGlobalInitializer",
              "global initializers must be effect-free expressions");
      Expr init = expr(g.init);  // sees previously declared globals only
      Binding b = bind(g.loc, g.ident.name, g.is_ref, true);
      out.globals.push_back(
          GlobalDecl{Ident{g.ident.name, b.id}, g.loc, g.is_ref, g.declared_type, init});
    }

    for (const auto& f : raw.functions) {
      FunctionDecl nf;
      nf.name = f.name;
      nf.loc = f.loc;
      nf.return_type = f.return_type;

      push_scope();  // parameters
      for (const auto& p : f.params) {
        Binding b = bind(p.loc, p.ident.name, false, false);
        nf.params.push_back(Param{Ident{p.ident.name, b.id}, p.type, p.loc});
      }
      for (const auto& c : f.pre) {
        allow_result = false;
        nf.pre.push_back(Clause{formula(c.formula), c.label});
      }
      for (const auto& c : f.post) {
        allow_result = true;
        nf.post.push_back(Clause{formula(c.formula), c.label});
        allow_result = false;
      }
      if (f.writes) {
        nf.writes.emplace();
        for (const auto& w : *f.writes) {
          Ident wi = w;
          const Binding* b = nullptr;
          if (!scopes.empty()) {
            auto it = scopes.front().find(w.name);
            if (it != scopes.front().end()) b = &it->second;
          }
          if (b) {
            wi.id = b->id;
            if (!b->is_mutable)
              error(f.loc, "WritesImmutable",
                    "writes clause lists immutable global '" + w.name + "'");
          } else {
            error(f.loc, "WritesNotGlobal",
                  "writes clause of a function may only list mutable globals ('" + w.name +
                      "' is not one)");
          }
          nf.writes->push_back(wi);
        }
      }
      if (f.body) nf.body = expr(f.body);
      pop_scope();

      out.functions.push_back(std::move(nf));
    }
    pop_scope();

    // Second pass: effective write sets.
    auto fw = function_writes(out);
    for (auto& f : out.functions) {
      f.effective_writes = fw[f.name.name];
      if (f.body) f.body = fill_loop_writes(f.body, fw);
    }

    out.next_id = next;
    return out;
  }
};

}  // namespace

ResolveResult resolve(const Program& raw) {
  ResolveResult r;
  Resolver res{raw, r.errors};
  r.program = res.run();
  return r;
}

}  // namespace contracheck
