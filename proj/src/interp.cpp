#include "contracheck/interp.hpp"

#include <sstream>

#include "contracheck/ast_ops.hpp"
#include "contracheck/pretty.hpp"

namespace contracheck {

std::string outcome_kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Normal: return "normal";
    case OutcomeKind::Failure: return "failure";
    case OutcomeKind::Stuck: return "stuck";
    case OutcomeKind::NonConclusive: return "non-conclusive";
  }
  return "?";
}

std::string stuck_reason_name(StuckReason r) {
  switch (r) {
    case StuckReason::MissingOracleValue: return "missing oracle value";
    case StuckReason::OraclePostconditionMismatch: return "oracle values violate the callee postcondition";
    case StuckReason::OracleInvariantMismatch: return "oracle values violate the loop invariants";
    case StuckReason::InvariantPreservedNoProgress: return "loop invariants preserved, no refutation";
  }
  return "?";
}

std::string nc_reason_name(NcReason r) {
  switch (r) {
    case NcReason::FuelExhausted: return "fuel exhausted";
    case NcReason::MissingInputValue: return "missing input value";
    case NcReason::RuntimeGuard: return "runtime guard";
    case NcReason::AbstractCallee: return "abstract callee";
    case NcReason::EntryContractViolated: return "entry contract violated";
  }
  return "?";
}

std::string ExecOutcome::to_string() const {
  std::ostringstream out;
  out << outcome_kind_name(kind);
  switch (kind) {
    case OutcomeKind::Normal: break;
    case OutcomeKind::Failure:
      out << ": " << ann_kind_name(fail_kind.kind) << " at " << fail_loc.to_string();
      break;
    case OutcomeKind::Stuck: out << ": " << stuck_reason_name(stuck); break;
    case OutcomeKind::NonConclusive: out << ": " << nc_reason_name(nc); break;
  }
  if (!detail.empty()) out << " (" << detail << ")";
  return out.str();
}

namespace {

struct Signal {
  ExecOutcome outcome;
};

[[noreturn]] void fail_annotation(const SourceLoc& loc, AnnotationKind kind, std::string detail) {
  ExecOutcome o;
  o.kind = OutcomeKind::Failure;
  o.fail_loc = loc;
  o.fail_kind = std::move(kind);
  o.detail = std::move(detail);
  throw Signal{std::move(o)};
}

[[noreturn]] void stuck(StuckReason r, std::string detail) {
  ExecOutcome o;
  o.kind = OutcomeKind::Stuck;
  o.stuck = r;
  o.detail = std::move(detail);
  throw Signal{std::move(o)};
}

[[noreturn]] void non_conclusive(NcReason r, std::string detail) {
  ExecOutcome o;
  o.kind = OutcomeKind::NonConclusive;
  o.nc = r;
  o.detail = std::move(detail);
  throw Signal{std::move(o)};
}

}  // namespace

struct Interp::Impl {
  const Program& prog;
  const TypeInfo& types;
  ExecMode mode;
  const ExecOptions& opts;
  Oracle* oracle = nullptr;

  std::map<int, Value> env;
  std::optional<Value> result_slot;  // `result` during postcondition checks
  long long fuel;
  int call_depth = 0;
  std::vector<std::string>* trace = nullptr;
  std::vector<CeTriple>* snapshots = nullptr;

  Impl(const Program& p, const TypeInfo& t, ExecMode m, const ExecOptions& o)
      : prog(p), types(t), mode(m), opts(o), fuel(o.fuel) {}

  void burn(const SourceLoc& at) {
    if (--fuel < 0)
      non_conclusive(NcReason::FuelExhausted, "evaluation budget ran out near " + at.to_string());
  }

  void note(const std::string& line) {
    if (trace) trace->push_back(line);
  }

  Value lookup(const Ident& v, const SourceLoc& at) {
    auto it = env.find(v.id);
    if (it == env.end())
      non_conclusive(NcReason::MissingInputValue,
                     "no value for '" + v.name + "' at " + at.to_string());
    return it->second;
  }

  Int int_of(const Expr& e) {
    Value v = eval(e);
    if (!v.is_int())
      non_conclusive(NcReason::RuntimeGuard, "expected an integer at " + e->loc.to_string());
    return v.as_int();
  }
  bool bool_of(const Expr& e) {
    Value v = eval(e);
    if (!v.is_bool())
      non_conclusive(NcReason::RuntimeGuard, "expected a boolean at " + e->loc.to_string());
    return v.as_bool();
  }

  // -------------------------------------------------------------------------
  // Expressions

  Value eval(const Expr& e) {
    burn(e->loc);
    return std::visit(
        [&](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return Value::integer(x.value);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return Value::boolean(x.value);
          } else if constexpr (std::is_same_v<T, UnitLit>) {
            return Value::unit();
          } else if constexpr (std::is_same_v<T, VarRef>) {
            return lookup(x.var, e->loc);
          } else if constexpr (std::is_same_v<T, ResultRef>) {
            if (!result_slot)
              non_conclusive(NcReason::RuntimeGuard,
                             "'result' outside a postcondition at " + e->loc.to_string());
            return *result_slot;
          } else if constexpr (std::is_same_v<T, Binary>) {
            Value a = eval(x.lhs);
            Value b = eval(x.rhs);
            switch (x.op) {
              case BinOp::Add: return Value::integer(a.as_int() + b.as_int());
              case BinOp::Sub: return Value::integer(a.as_int() - b.as_int());
              case BinOp::Mul: return Value::integer(a.as_int() * b.as_int());
              case BinOp::Div:
              case BinOp::Mod:
                if (b.as_int() == 0)
                  non_conclusive(NcReason::RuntimeGuard,
                                 "division by zero at " + e->loc.to_string());
                return Value::integer(x.op == BinOp::Div ? euclid_div(a.as_int(), b.as_int())
                                                         : euclid_mod(a.as_int(), b.as_int()));
              case BinOp::Eq: return Value::boolean(a == b);
              case BinOp::Ne: return Value::boolean(!(a == b));
              case BinOp::Lt: return Value::boolean(a.as_int() < b.as_int());
              case BinOp::Le: return Value::boolean(a.as_int() <= b.as_int());
              case BinOp::Gt: return Value::boolean(a.as_int() > b.as_int());
              case BinOp::Ge: return Value::boolean(a.as_int() >= b.as_int());
            }
            return Value::unit();
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return Value::boolean(!bool_of(x.arg));
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            Value v = eval(x.value);
            env[x.target.id] = v;
            note(x.target.name + " <- " + v.to_string() + " at " + e->loc.to_string());
            return Value::unit();
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            Value v = eval(x.init);
            auto saved = save(x.var.id);
            env[x.var.id] = v;
            Value r = eval(x.body);
            restore(x.var.id, saved);
            return r;
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            eval(x.first);
            return eval(x.rest);
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            return bool_of(x.cond) ? eval(x.then_branch) : eval(x.else_branch);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            return eval_call(e->loc, x);
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            eval_while(e->loc, x);
            return Value::unit();
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            AnnotationKind kind;
            kind.kind = AnnKind::Assertion;
            check_formula(x.formula, x.formula->loc, kind, "assertion");
            return Value::unit();
          } else {
            non_conclusive(NcReason::RuntimeGuard, "unevaluable expression");
          }
        },
        e->v);
  }

  std::optional<Value> save(int id) {
    auto it = env.find(id);
    if (it == env.end()) return std::nullopt;
    return it->second;
  }
  void restore(int id, const std::optional<Value>& saved) {
    if (saved)
      env[id] = *saved;
    else
      env.erase(id);
  }

  // -------------------------------------------------------------------------
  // Formulas

  bool holds(const Formula& f) {
    burn(f->loc);
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return bool_of(x.expr);
          } else if constexpr (std::is_same_v<T, FNot>) {
            return !holds(x.arg);
          } else if constexpr (std::is_same_v<T, FAnd>) {
            return holds(x.lhs) && holds(x.rhs);
          } else if constexpr (std::is_same_v<T, FOr>) {
            return holds(x.lhs) || holds(x.rhs);
          } else if constexpr (std::is_same_v<T, FImplies>) {
            return !holds(x.lhs) || holds(x.rhs);
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            Int lo = int_of(x.lo), hi = int_of(x.hi);
            auto saved = save(x.binder.id);
            bool out = x.is_forall;
            for (Int k = lo; k < hi; ++k) {
              burn(f->loc);
              env[x.binder.id] = Value::integer(k);
              bool b;
              try {
                b = holds(x.body);
              } catch (...) {
                restore(x.binder.id, saved);
                throw;
              }
              if (x.is_forall ? !b : b) {
                out = !x.is_forall;
                break;
              }
            }
            restore(x.binder.id, saved);
            return out;
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            if (opts.logic_quant_bound <= 0)
              non_conclusive(NcReason::RuntimeGuard,
                             "quantified havoc variables are not executable");
            return forall_logic_holds(x, 0);
          } else if constexpr (std::is_same_v<T, Check>) {
            return holds(x.inner);
          } else {
            return false;
          }
        },
        f->v);
  }

  // Test-only bounded enumeration of havoc quantifiers.
  bool forall_logic_holds(const ForallLogic& q, size_t i) {
    if (i == q.binders.size()) return holds(q.body);
    const HavocBinding& b = q.binders[i];
    auto saved = save(b.logic_var.id);
    bool ok = true;
    if (b.type == Ty::Bool) {
      for (bool v : {false, true}) {
        burn(q.body->loc);
        env[b.logic_var.id] = Value::boolean(v);
        try {
          ok = forall_logic_holds(q, i + 1);
        } catch (...) {
          restore(b.logic_var.id, saved);
          throw;
        }
        if (!ok) break;
      }
    } else {
      for (long long v = -opts.logic_quant_bound; v <= opts.logic_quant_bound && ok; ++v) {
        burn(q.body->loc);
        env[b.logic_var.id] = Value::integer(v);
        try {
          ok = forall_logic_holds(q, i + 1);
        } catch (...) {
          restore(b.logic_var.id, saved);
          throw;
        }
      }
    }
    restore(b.logic_var.id, saved);
    return ok;
  }

  void check_formula(const Formula& f, const SourceLoc& source, const AnnotationKind& kind,
                     const std::string& what) {
    bool ok = holds(f);
    note("check " + what + " at " + source.to_string() + ": " + (ok ? "holds" : "fails"));
    if (!ok) fail_annotation(source, kind, what + " { " + pretty(f) + " } is false");
  }

  // -------------------------------------------------------------------------
  // Calls

  Value eval_call(const SourceLoc& call_site, const CallExpr& x) {
    const FunctionDecl* callee = prog.find_function(x.callee.name);
    if (!callee)
      non_conclusive(NcReason::RuntimeGuard, "unknown function '" + x.callee.name + "'");

    std::vector<Value> args;
    args.reserve(x.args.size());
    for (const auto& a : x.args) args.push_back(eval(a));

    if (++call_depth > opts.max_call_depth) {
      --call_depth;
      non_conclusive(NcReason::FuelExhausted,
                     "call depth limit at " + call_site.to_string());
    }

    std::vector<std::pair<int, std::optional<Value>>> saved_params;
    for (size_t i = 0; i < callee->params.size(); ++i) {
      int id = callee->params[i].ident.id;
      saved_params.emplace_back(id, save(id));
      env[id] = args[i];
    }
    auto leave = [&] {
      for (auto it = saved_params.rbegin(); it != saved_params.rend(); ++it)
        restore(it->first, it->second);
      --call_depth;
    };

    try {
      // The callee's precondition is an obligation of the caller in both
      // modes.
      for (const auto& c : callee->pre) {
        AnnotationKind kind;
        kind.kind = AnnKind::Precondition;
        kind.call_site = call_site;
        check_formula(c.formula, c.formula->loc, kind,
                      "precondition of " + callee->name.name);
      }

      Value result = Value::unit();
      if (mode == ExecMode::GiantStep) {
        result = giant_call(call_site, *callee);
      } else {
        if (!callee->body)
          non_conclusive(NcReason::AbstractCallee,
                         "'" + callee->name.name + "' has no body at " + call_site.to_string());
        result = eval(callee->body);
        auto saved_result = result_slot;
        result_slot = result;
        try {
          for (const auto& c : callee->post) {
            AnnotationKind kind;
            kind.kind = AnnKind::Postcondition;
            kind.function = callee->name.name;
            check_formula(c.formula, c.formula->loc, kind,
                          "postcondition of " + callee->name.name);
          }
        } catch (...) {
          result_slot = saved_result;
          throw;
        }
        result_slot = saved_result;
      }
      leave();
      return result;
    } catch (Signal&) {
      leave();
      throw;
    }
  }

  // A call in giant-step mode does not run the callee: the counterexample
  // supplies the values of everything the callee may write and its result,
  // and the callee's postcondition validates them.
  Value giant_call(const SourceLoc& call_site, const FunctionDecl& callee) {
    for (const auto& w : callee.effective_writes) {
      if (types.var_type(w.id) == Ty::Unit) {
        env[w.id] = Value::unit();
        continue;
      }
      std::optional<Value> v = oracle ? oracle->next_value(w, call_site) : std::nullopt;
      if (!v)
        stuck(StuckReason::MissingOracleValue,
              "no value for '" + w.name + "' written by call at " + call_site.to_string());
      env[w.id] = *v;
      note("oracle: " + w.name + " <- " + v->to_string() + " at " + call_site.to_string());
    }

    Value result = Value::unit();
    if (types.fn_return(callee.name.name) != Ty::Unit) {
      std::optional<Value> v =
          oracle ? oracle->next_value(result_ident(), call_site) : std::nullopt;
      if (!v)
        stuck(StuckReason::MissingOracleValue,
              "no result value for call at " + call_site.to_string());
      result = *v;
      note("oracle: result of " + callee.name.name + " = " + v->to_string() + " at " +
           call_site.to_string());
    }

    auto saved_result = result_slot;
    result_slot = result;
    try {
      for (const auto& c : callee.post) {
        if (!holds(c.formula))
          stuck(StuckReason::OraclePostconditionMismatch,
                "postcondition of " + callee.name.name + " at " + c.formula->loc.to_string() +
                    " rejects the counterexample values");
      }
    } catch (...) {
      result_slot = saved_result;
      throw;
    }
    result_slot = saved_result;
    return result;
  }

  // -------------------------------------------------------------------------
  // Loops

  void check_invariants(const WhileExpr& x, bool init) {
    for (size_t i = 0; i < x.invariants.size(); ++i) {
      AnnotationKind kind;
      kind.kind = init ? AnnKind::LoopInvariantInit : AnnKind::LoopInvariantPreserved;
      kind.index = int(i) + 1;
      kind.label = x.invariants[i].label;
      check_formula(x.invariants[i].formula, x.invariants[i].formula->loc, kind,
                    std::string("loop invariant") +
                        (x.invariants[i].label.empty() ? "" : " " + x.invariants[i].label));
    }
  }

  void snapshot_loop(const SourceLoc& loop_loc, const WhileExpr& x) {
    if (!snapshots) return;
    for (const auto& w : x.effective_writes) {
      auto it = env.find(w.id);
      if (it != env.end()) snapshots->push_back(CeTriple{w, loop_loc, it->second});
    }
  }

  void eval_while(const SourceLoc& loop_loc, const WhileExpr& x) {
    check_invariants(x, /*init=*/true);

    if (mode == ExecMode::GiantStep) {
      // One arbitrary iteration, taken from the counterexample.
      for (const auto& w : x.effective_writes) {
        if (types.var_type(w.id) == Ty::Unit) {
          env[w.id] = Value::unit();
          continue;
        }
        std::optional<Value> v = oracle ? oracle->next_value(w, loop_loc) : std::nullopt;
        if (!v)
          stuck(StuckReason::MissingOracleValue,
                "no value for '" + w.name + "' at loop " + loop_loc.to_string());
        env[w.id] = *v;
        note("oracle: " + w.name + " <- " + v->to_string() + " at loop " + loop_loc.to_string());
      }
      for (const auto& c : x.invariants) {
        if (!holds(c.formula))
          stuck(StuckReason::OracleInvariantMismatch,
                "invariant at " + c.formula->loc.to_string() +
                    " rejects the counterexample loop state");
      }
      if (!bool_of(x.cond)) return;  // the loop exits right away from this state
      eval(x.body);
      check_invariants(x, /*init=*/false);
      stuck(StuckReason::InvariantPreservedNoProgress,
            "iteration from the counterexample state at " + loop_loc.to_string() +
                " preserves all invariants");
    }

    while (true) {
      snapshot_loop(loop_loc, x);
      if (!bool_of(x.cond)) return;
      eval(x.body);
      check_invariants(x, /*init=*/false);
    }
  }
};

Interp::Interp(const Program& prog, const TypeInfo& types, ExecMode mode, ExecOptions opts)
    : prog_(prog), types_(types), mode_(mode), opts_(std::move(opts)) {}

ExecResult Interp::run(const FunctionDecl& f, Oracle* oracle) {
  ExecResult result;
  Impl impl(prog_, types_, mode_, opts_);
  impl.oracle = oracle;
  if (opts_.trace) impl.trace = &result.trace;
  if (opts_.capture_loop_snapshots) impl.snapshots = &result.loop_snapshots;

  try {
    // Globals start from their initialisers; the counterexample overrides
    // them (and must supply every parameter) at the function's entry point.
    for (const auto& g : prog_.globals) impl.env[g.ident.id] = impl.eval(g.init);

    auto footprints = compute_footprints(prog_);
    const Footprint& fp = footprints[f.name.name];
    std::set<int> reads;
    for (const auto& r : fp.reads) reads.insert(r.id);

    for (const auto& p : f.params) {
      if (p.type == Ty::Unit) {
        impl.env[p.ident.id] = Value::unit();
        continue;
      }
      std::optional<Value> v = oracle ? oracle->next_value(p.ident, f.loc) : std::nullopt;
      if (!v)
        non_conclusive(NcReason::MissingInputValue,
                       "no entry value for parameter '" + p.ident.name + "'");
      impl.env[p.ident.id] = *v;
      impl.note("entry: " + p.ident.name + " = " + v->to_string());
    }
    for (const auto& g : prog_.globals) {
      if (types_.var_type(g.ident.id) == Ty::Unit) continue;
      std::optional<Value> v = oracle ? oracle->next_value(g.ident, f.loc) : std::nullopt;
      if (v) {
        impl.env[g.ident.id] = *v;
        impl.note("entry: " + g.ident.name + " = " + v->to_string());
      } else if (reads.count(g.ident.id)) {
        non_conclusive(NcReason::MissingInputValue,
                       "no entry value for global '" + g.ident.name + "'");
      }
    }

    // A counterexample that does not even satisfy the function's own
    // precondition cannot tell us anything about the body.
    for (const auto& c : f.pre) {
      if (!impl.holds(c.formula))
        non_conclusive(NcReason::EntryContractViolated,
                       "precondition at " + c.formula->loc.to_string() +
                           " is false for the entry values");
    }

    if (!f.body)
      non_conclusive(NcReason::AbstractCallee, "'" + f.name.name + "' has no body");
    result.result = impl.eval(f.body);

    impl.result_slot = result.result;
    for (const auto& c : f.post) {
      AnnotationKind kind;
      kind.kind = AnnKind::Postcondition;
      kind.function = f.name.name;
      impl.check_formula(c.formula, c.formula->loc, kind, "postcondition of " + f.name.name);
    }
    result.outcome.kind = OutcomeKind::Normal;
  } catch (Signal& s) {
    result.outcome = std::move(s.outcome);
  }
  if (oracle) result.oracle_fallback = oracle->used_fallback();
  return result;
}

EvalResult eval_expr_in(const Program& prog, const TypeInfo& types, ExecMode mode, const Expr& e,
                        const std::map<int, Value>& env, const ExecOptions& opts, Oracle* oracle) {
  EvalResult r;
  Interp::Impl impl(prog, types, mode, opts);
  impl.oracle = oracle;
  impl.env = env;
  try {
    r.value = impl.eval(e);
    r.outcome.kind = OutcomeKind::Normal;
  } catch (Signal& s) {
    r.outcome = std::move(s.outcome);
  }
  return r;
}

EvalResult eval_formula_in(const Program& prog, const TypeInfo& types, ExecMode mode,
                           const Formula& f, const std::map<int, Value>& env,
                           const ExecOptions& opts, Oracle* oracle) {
  EvalResult r;
  Interp::Impl impl(prog, types, mode, opts);
  impl.oracle = oracle;
  impl.env = env;
  try {
    r.value = Value::boolean(impl.holds(f));
    r.outcome.kind = OutcomeKind::Normal;
  } catch (Signal& s) {
    r.outcome = std::move(s.outcome);
  }
  return r;
}

}  // namespace contracheck
