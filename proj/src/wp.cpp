#include "contracheck/wp.hpp"

#include <map>
#include <set>

#include "contracheck/ast_ops.hpp"
#include "contracheck/pretty.hpp"

namespace contracheck {

namespace {

Formula conj(Formula a, Formula b) {
  if (!a) return b;
  if (!b) return a;
  return mk_and(std::move(a), std::move(b));
}

// The weakest-precondition transformer. `for_goals` switches between the
// plain substitution semantics (public `wp`) and the goal-oriented variant
// that additionally names every written value with a fresh logical variable
// (so models talk about program points), wraps checked annotations in Check
// markers, and emits divisor-non-zero obligations.
struct WpBuilder {
  const Program& prog;
  const TypeInfo& types;
  bool for_goals = false;
  int counter = 0;
  int next_id = 1;

  Ident fresh(const std::string& base) {
    ++counter;
    return Ident{base + "!" + std::to_string(counter), next_id++};
  }

  // Fresh name for an operand's value; pure operands are used in place and
  // never need one.
  Ident value_name(const Expr& e, const std::string& base) {
    return is_effect_free(e) ? Ident{} : fresh(base);
  }

  static Formula subst1(const Formula& f, int id, const Expr& to) {
    Subst s;
    s.emplace(id, to);
    return subst_formula(f, s);
  }

  // Well-definedness obligations for divisions inside an effect-free
  // expression or a formula, in evaluation order.
  Formula guards_of(const std::vector<DivisionSite>& divs) {
    if (!for_goals) return nullptr;
    Formula acc;
    for (const auto& d : divs) {
      Formula g = mk_atom(mk_binary(d.loc, BinOp::Ne, d.divisor, mk_int(d.loc, 0)));
      AnnotationKind kind;
      kind.kind = AnnKind::Assertion;
      acc = conj(std::move(acc),
                 mk_formula(d.loc, Check{std::move(kind), d.loc, std::move(g)}));
    }
    return acc;
  }
  Formula guards_of(const Expr& e) {
    std::vector<DivisionSite> divs;
    collect_divisions(e, divs);
    return guards_of(divs);
  }
  Formula guards_of(const Formula& f) {
    std::vector<DivisionSite> divs;
    collect_divisions(f, divs);
    return guards_of(divs);
  }

  // For an effect-free operand returns the operand itself; otherwise the
  // fresh variable that wp_expr will bind to its value.
  Expr operand(const Expr& e, const Ident& v) {
    return is_effect_free(e) ? e : mk_var(e->loc, Ident{v.name, v.id});
  }

  // Wraps `core` so that it runs after `e` produces the value named `v`.
  Formula chain(const Expr& e, const Ident& v, Formula core) {
    if (is_effect_free(e)) return conj(guards_of(e), std::move(core));
    return wp_expr(e, std::move(core), v);
  }

  Formula check_clause(AnnotationKind kind, const Formula& inst) {
    if (!for_goals) return inst;
    SourceLoc src = inst->loc;
    return conj(guards_of(inst),
                mk_formula(inst->loc, Check{std::move(kind), src, inst}));
  }

  // wp_expr(e, Q, r): weakest precondition of e against Q, where Q may
  // mention r as the value e evaluates to.
  Formula wp_expr(const Expr& e, Formula q, const Ident& r) {
    if (is_effect_free(e)) {
      Formula body = subst1(q, r.id, e);
      return conj(guards_of(e), std::move(body));
    }
    return std::visit(
        [&](const auto& x) -> Formula {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Binary>) {
            Ident va = value_name(x.lhs, "t"), vb = value_name(x.rhs, "t");
            Expr ea = operand(x.lhs, va), eb = operand(x.rhs, vb);
            Formula core = subst1(q, r.id, mk_binary(e->loc, x.op, ea, eb));
            if (for_goals && (x.op == BinOp::Div || x.op == BinOp::Mod)) {
              AnnotationKind kind;
              kind.kind = AnnKind::Assertion;
              Formula g = mk_atom(mk_binary(e->loc, BinOp::Ne, eb, mk_int(e->loc, 0)));
              core = conj(mk_formula(e->loc, Check{std::move(kind), e->loc, std::move(g)}),
                          std::move(core));
            }
            core = chain(x.rhs, vb, std::move(core));
            return chain(x.lhs, va, std::move(core));
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            Ident va = value_name(x.arg, "t");
            Expr ea = operand(x.arg, va);
            Formula core = subst1(q, r.id, mk_expr(e->loc, NotExpr{ea}));
            return chain(x.arg, va, std::move(core));
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            return wp_binding(e->loc, x.target, x.value, q, r, /*binds=*/false);
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            Formula inner = wp_expr(x.body, std::move(q), r);
            return wp_binding(e->loc, x.var, x.init, std::move(inner), Ident{}, true);
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            Ident vd = fresh("_");
            Formula inner = wp_expr(x.rest, std::move(q), r);
            return wp_expr(x.first, std::move(inner), vd);
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            Ident vc = value_name(x.cond, "c");
            Expr ec = operand(x.cond, vc);
            Formula wt = wp_expr(x.then_branch, q, r);
            Formula we = wp_expr(x.else_branch, q, r);
            Formula core =
                mk_and(mk_implies(mk_atom(ec), std::move(wt)),
                       mk_implies(mk_atom(mk_expr(ec->loc, NotExpr{ec})), std::move(we)));
            return chain(x.cond, vc, std::move(core));
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            return wp_call(e, x, std::move(q), r);
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            return wp_while(e, x, std::move(q), r);
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            AnnotationKind kind;
            kind.kind = AnnKind::Assertion;
            Formula obligation = check_clause(std::move(kind), x.formula);
            Formula rest = mk_implies(x.formula, subst1(q, r.id, mk_unit(e->loc)));
            return conj(std::move(obligation), std::move(rest));
          } else {
            // Effect-free variants were handled above.
            return subst1(q, r.id, e);
          }
        },
        e->v);
  }

  // Shared by assignment (rebinds an existing variable) and let (introduces
  // one): evaluate `value`, then continue with the target bound to it. In
  // goal mode the bound value gets a fresh logical name constrained by a
  // defining equation, so it survives into counterexamples.
  Formula wp_binding(const SourceLoc& loc, const Ident& target, const Expr& value, Formula q,
                     const Ident& r, bool binds) {
    Ident vt = value_name(value, "t");
    Expr ev = operand(value, vt);
    if (!binds) q = subst1(q, r.id, mk_unit(loc));
    Ty ty = types.var_type(target.id);

    Formula core;
    if (ty == Ty::Unit) {
      core = subst1(q, target.id, mk_unit(loc));
    } else if (!for_goals) {
      core = subst1(q, target.id, ev);
    } else {
      Ident sx = fresh(target.name);
      Expr sx_ref = mk_var(loc, sx);
      Formula eq = mk_atom(mk_binary(loc, BinOp::Eq, sx_ref, ev));
      Formula body = mk_implies(std::move(eq), subst1(q, target.id, sx_ref));
      core = mk_formula(loc, ForallLogic{{HavocBinding{sx, ty, target, loc}}, std::move(body)});
    }
    return chain(value, vt, std::move(core));
  }

  Formula wp_call(const Expr& e, const CallExpr& x, Formula q, const Ident& r) {
    const FunctionDecl* callee = prog.find_function(x.callee.name);
    // Resolution guarantees the callee exists and arities match.
    Subst args_subst;
    std::vector<std::pair<Expr, Ident>> arg_chain;
    for (size_t i = 0; i < x.args.size(); ++i) {
      Ident va = value_name(x.args[i], callee->params[i].ident.name);
      Expr ea = operand(x.args[i], va);
      args_subst.emplace(callee->params[i].ident.id, ea);
      arg_chain.emplace_back(x.args[i], va);
    }

    // Callee precondition, instantiated at the call site. Checked even when
    // trivially true so every call carries its obligation.
    Formula pre_part;
    if (for_goals) {
      AnnotationKind kind;
      kind.kind = AnnKind::Precondition;
      kind.call_site = e->loc;
      if (callee->pre.empty()) {
        pre_part = mk_formula(e->loc, Check{kind, e->loc, mk_true(e->loc)});
      } else {
        for (const auto& c : callee->pre) {
          Formula inst = subst_formula(c.formula, args_subst);
          pre_part = conj(std::move(pre_part), check_clause(kind, inst));
        }
      }
    } else {
      for (const auto& c : callee->pre)
        pre_part = conj(std::move(pre_part), subst_formula(c.formula, args_subst));
    }

    // Fresh variables for everything the call may change, plus its result.
    std::vector<HavocBinding> binders;
    Subst havoc_subst;
    for (const auto& w : callee->effective_writes) {
      Ty ty = types.var_type(w.id);
      if (ty == Ty::Unit) {
        havoc_subst.emplace(w.id, mk_unit(e->loc));
        continue;
      }
      Ident vw = fresh(w.name);
      binders.push_back(HavocBinding{vw, ty, w, e->loc});
      havoc_subst.emplace(w.id, mk_var(e->loc, vw));
    }
    Ty ret = types.fn_return(x.callee.name);
    Expr res_expr;
    if (ret == Ty::Unit) {
      res_expr = mk_unit(e->loc);
    } else {
      Ident vres = fresh("result");
      binders.push_back(HavocBinding{vres, ret, result_ident(), e->loc});
      res_expr = mk_var(e->loc, vres);
    }

    Formula post_inst;
    for (const auto& c : callee->post) {
      Formula inst = subst_formula(c.formula, args_subst);
      inst = subst_result_formula(inst, res_expr);
      inst = subst_formula(inst, havoc_subst);
      post_inst = conj(std::move(post_inst), inst);
    }
    if (!post_inst) post_inst = mk_true(e->loc);

    Formula cont = subst1(std::move(q), r.id, res_expr);
    cont = subst_formula(cont, havoc_subst);

    Formula inner = mk_implies(std::move(post_inst), std::move(cont));
    if (!binders.empty())
      inner = mk_formula(e->loc, ForallLogic{std::move(binders), std::move(inner)});

    Formula core = conj(std::move(pre_part), std::move(inner));
    for (auto it = arg_chain.rbegin(); it != arg_chain.rend(); ++it)
      core = chain(it->first, it->second, std::move(core));
    return core;
  }

  Formula wp_while(const Expr& e, const WhileExpr& x, Formula q, const Ident& r) {
    // Invariants hold on entry.
    Formula init_part;
    for (size_t i = 0; i < x.invariants.size(); ++i) {
      const Clause& c = x.invariants[i];
      if (for_goals) {
        AnnotationKind kind;
        kind.kind = AnnKind::LoopInvariantInit;
        kind.index = int(i) + 1;
        kind.label = c.label;
        init_part = conj(std::move(init_part), check_clause(std::move(kind), c.formula));
      } else {
        init_part = conj(std::move(init_part), c.formula);
      }
    }

    // An arbitrary iteration: fresh values for the write set.
    std::vector<HavocBinding> binders;
    Subst havoc_subst;
    for (const auto& w : x.effective_writes) {
      Ty ty = types.var_type(w.id);
      if (ty == Ty::Unit) {
        havoc_subst.emplace(w.id, mk_unit(e->loc));
        continue;
      }
      Ident vw = fresh(w.name);
      binders.push_back(HavocBinding{vw, ty, w, e->loc});
      havoc_subst.emplace(w.id, mk_var(e->loc, vw));
    }

    Formula inv_assume;
    for (const auto& c : x.invariants) inv_assume = conj(inv_assume, c.formula);
    if (!inv_assume) inv_assume = mk_true(e->loc);

    // Invariants survive the body.
    Formula pres_part;
    for (size_t i = 0; i < x.invariants.size(); ++i) {
      const Clause& c = x.invariants[i];
      if (for_goals) {
        AnnotationKind kind;
        kind.kind = AnnKind::LoopInvariantPreserved;
        kind.index = int(i) + 1;
        kind.label = c.label;
        pres_part = conj(std::move(pres_part), check_clause(std::move(kind), c.formula));
      } else {
        pres_part = conj(std::move(pres_part), c.formula);
      }
    }
    if (!pres_part) pres_part = mk_true(e->loc);

    Ident vd = fresh("_");
    Formula body_wp = wp_expr(x.body, std::move(pres_part), vd);

    Ident vc = value_name(x.cond, "c");
    Expr ec = operand(x.cond, vc);
    Formula exit_q = subst1(std::move(q), r.id, mk_unit(e->loc));
    Formula cond_core =
        mk_and(mk_implies(mk_atom(ec), std::move(body_wp)),
               mk_implies(mk_atom(mk_expr(ec->loc, NotExpr{ec})), std::move(exit_q)));
    Formula cond_wp = chain(x.cond, vc, std::move(cond_core));

    Formula iter = mk_implies(std::move(inv_assume), std::move(cond_wp));
    iter = subst_formula(iter, havoc_subst);
    if (!binders.empty())
      iter = mk_formula(e->loc, ForallLogic{std::move(binders), std::move(iter)});

    return conj(std::move(init_part), std::move(iter));
  }
};

// ---------------------------------------------------------------------------
// Goal extraction

struct GoalWalker {
  const Program& prog;
  const FunctionDecl& f;
  std::vector<VarMapEntry> entry;
  std::vector<Formula> premises;
  std::vector<HavocBinding> binders;
  std::map<std::string, int> ordinals;
  std::vector<Goal>* out;
  std::vector<Diag>* errors;

  void emit(const Check& c) {
    Goal g;
    g.function = f.name.name;
    g.kind = c.kind;
    if (g.kind.kind == AnnKind::Postcondition) g.kind.function = f.name.name;
    g.source = c.source;
    std::string tag = ann_kind_tag(c.kind.kind);
    g.id = f.name.name + ":" + tag + ":" + std::to_string(++ordinals[tag]);
    g.premises = premises;
    g.conclusion = c.inner;
    g.var_map = entry;
    for (const auto& b : binders)
      g.var_map.push_back(VarMapEntry{b.logic_var, b.type, b.program_var, b.site});

    // Every free variable of the goal must be covered by the variable map.
    std::set<int> free = free_vars(goal_formula(g));
    for (const auto& v : g.var_map) free.erase(v.logic_var.id);
    if (!free.empty())
      errors->push_back(Diag{g.source, "InternalError",
                             "goal " + g.id + " has unmapped free variables"});
    out->push_back(std::move(g));
  }

  void walk(const Formula& fm) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, FAnd>) {
            walk(x.lhs);
            walk(x.rhs);
          } else if constexpr (std::is_same_v<T, FImplies>) {
            size_t mark = premises.size();
            flatten_and(x.lhs, premises);
            walk(x.rhs);
            premises.resize(mark);
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            size_t mark = binders.size();
            binders.insert(binders.end(), x.binders.begin(), x.binders.end());
            walk(x.body);
            binders.resize(mark);
          } else if constexpr (std::is_same_v<T, Check>) {
            emit(x);
          } else {
            // Atoms and other leaves carry no obligations.
          }
        },
        fm->v);
  }
};

}  // namespace

Formula goal_formula(const Goal& g) {
  Formula prem;
  for (const auto& p : g.premises) prem = prem ? mk_and(prem, p) : p;
  if (!prem) return g.conclusion;
  return mk_implies(prem, g.conclusion);
}

Formula wp(const Program& prog, const TypeInfo& types, const Expr& e, const Formula& post) {
  WpBuilder b{prog, types, /*for_goals=*/false, 0, prog.next_id};
  Ident rv = b.fresh("result");
  // `result` in the postcondition stands for the value of `e`.
  Formula q = subst_result_formula(post, mk_var(e->loc, rv));
  return b.wp_expr(e, std::move(q), rv);
}

SplitResult split_goals(const Program& prog, const TypeInfo& types, const FunctionDecl& f) {
  SplitResult result;
  if (!f.body) {
    result.errors.push_back(Diag{f.loc, "AbstractFunction",
                                 "function '" + f.name.name + "' has no body to verify"});
    return result;
  }

  WpBuilder b{prog, types, /*for_goals=*/true, 0, prog.next_id};

  // The postcondition, instantiated with the function's result value.
  Ident rv = b.fresh("result");
  Ty ret = types.fn_return(f.name.name);
  Expr res_expr = ret == Ty::Unit ? mk_unit(f.loc) : mk_var(f.loc, rv);
  Formula q;
  for (const auto& c : f.post) {
    AnnotationKind kind;
    kind.kind = AnnKind::Postcondition;
    kind.function = f.name.name;
    Formula inst = subst_result_formula(c.formula, res_expr);
    q = conj(std::move(q), b.check_clause(std::move(kind), inst));
  }
  if (!q) q = mk_true(f.loc);

  Formula w = b.wp_expr(f.body, std::move(q), rv);

  GoalWalker walker{prog, f, {}, {}, {}, {}, &result.goals, &result.errors};

  // Entry values: parameters, then the globals the function touches.
  SourceLoc entry_loc = f.loc;
  for (const auto& p : f.params) {
    if (p.type == Ty::Unit) continue;
    walker.entry.push_back(VarMapEntry{p.ident, p.type, p.ident, entry_loc});
  }
  auto fps = compute_footprints(prog);
  const Footprint& fp = fps[f.name.name];
  std::set<int> touched;
  for (const auto& g : fp.reads) touched.insert(g.id);
  for (const auto& g : fp.writes) touched.insert(g.id);
  for (const auto& g : prog.globals) {
    if (!touched.count(g.ident.id)) continue;
    Ty ty = types.var_type(g.ident.id);
    if (ty == Ty::Unit) continue;
    walker.entry.push_back(VarMapEntry{g.ident, ty, g.ident, entry_loc});
  }

  // The function's own precondition is assumed throughout.
  for (const auto& c : f.pre) flatten_and(c.formula, walker.premises);

  walker.walk(w);
  return result;
}

}  // namespace contracheck
