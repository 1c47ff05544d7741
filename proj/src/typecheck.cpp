#include "contracheck/typecheck.hpp"

#include <optional>

namespace contracheck {

namespace {

struct Checker {
  const Program& prog;
  TypeInfo& info;
  std::vector<Diag>& diags;

  // Return types become known in declaration order; calls ahead of that
  // need an annotation.
  std::unordered_map<std::string, std::optional<Ty>> returns;
  const FunctionDecl* current = nullptr;

  void error(const SourceLoc& loc, std::string code, std::string msg) {
    diags.push_back(Diag{loc, std::move(code), std::move(msg)});
  }

  void require(const SourceLoc& loc, Ty expected, Ty found, const std::string& what) {
    if (expected != found)
      error(loc, "TypeMismatch",
            what + ": expected " + ty_name(expected) + ", found " + ty_name(found));
  }

  Ty expr(const Expr& e) {
    return std::visit(
        [&](const auto& x) -> Ty {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return Ty::Int;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, UnitLit>) {
            return Ty::Unit;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            return info.var_type(x.var.id);
          } else if constexpr (std::is_same_v<T, ResultRef>) {
            if (current && returns[current->name.name])
              return *returns[current->name.name];
            return Ty::Unit;
          } else if constexpr (std::is_same_v<T, Binary>) {
            Ty l = expr(x.lhs);
            Ty r = expr(x.rhs);
            switch (x.op) {
              case BinOp::Add:
              case BinOp::Sub:
              case BinOp::Mul:
              case BinOp::Div:
              case BinOp::Mod:
                require(x.lhs->loc, Ty::Int, l, "arithmetic operand");
                require(x.rhs->loc, Ty::Int, r, "arithmetic operand");
                return Ty::Int;
              case BinOp::Eq:
              case BinOp::Ne:
                if (l == Ty::Unit || r == Ty::Unit)
                  error(e->loc, "TypeMismatch", "equality is defined on int and bool only");
                else if (l != r)
                  error(e->loc, "TypeMismatch",
                        "equality operands must agree: " + ty_name(l) + " vs " + ty_name(r));
                return Ty::Bool;
              default:
                require(x.lhs->loc, Ty::Int, l, "comparison operand");
                require(x.rhs->loc, Ty::Int, r, "comparison operand");
                return Ty::Bool;
            }
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            require(x.arg->loc, Ty::Bool, expr(x.arg), "operand of not");
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            Ty v = expr(x.value);
            Ty t = info.var_type(x.target.id);
            require(e->loc, t, v, "assignment to '" + x.target.name + "'");
            return Ty::Unit;
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            Ty init = expr(x.init);
            if (x.declared_type)
              require(e->loc, *x.declared_type, init,
                      "initializer of '" + x.var.name + "'");
            info.var_types[x.var.id] = x.declared_type ? *x.declared_type : init;
            return expr(x.body);
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            Ty f = expr(x.first);
            require(x.first->loc, Ty::Unit, f, "statement before ';'");
            return expr(x.rest);
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            require(x.cond->loc, Ty::Bool, expr(x.cond), "condition");
            Ty t = expr(x.then_branch);
            Ty el = expr(x.else_branch);
            if (t != el)
              error(e->loc, "TypeMismatch",
                    "branches of if disagree: " + ty_name(t) + " vs " + ty_name(el));
            return t;
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            const FunctionDecl* callee = prog.find_function(x.callee.name);
            if (!callee) return Ty::Unit;  // resolution already reported it
            for (size_t i = 0; i < x.args.size() && i < callee->params.size(); ++i)
              require(x.args[i]->loc, callee->params[i].type, expr(x.args[i]),
                      "argument " + std::to_string(i + 1) + " of '" + x.callee.name + "'");
            auto& ret = returns[x.callee.name];
            if (!ret) {
              error(e->loc, "UnknownReturnType",
                    "the return type of '" + x.callee.name +
                        "' is not known here; annotate the function");
              return Ty::Unit;
            }
            return *ret;
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            require(x.cond->loc, Ty::Bool, expr(x.cond), "loop condition");
            for (const auto& c : x.invariants)
              require(c.formula->loc, Ty::Bool, formula(c.formula), "loop invariant");
            Ty b = expr(x.body);
            require(x.body->loc, Ty::Unit, b, "loop body");
            return Ty::Unit;
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            require(x.formula->loc, Ty::Bool, formula(x.formula), "asserted formula");
            return Ty::Unit;
          }
        },
        e->v);
  }

  Ty formula(const Formula& f) {
    return std::visit(
        [&](const auto& x) -> Ty {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return expr(x.expr);
          } else if constexpr (std::is_same_v<T, FNot>) {
            require(f->loc, Ty::Bool, formula(x.arg), "operand of not");
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                               std::is_same_v<T, FImplies>) {
            require(f->loc, Ty::Bool, formula(x.lhs), "connective operand");
            require(f->loc, Ty::Bool, formula(x.rhs), "connective operand");
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            require(x.lo->loc, Ty::Int, expr(x.lo), "range bound");
            require(x.hi->loc, Ty::Int, expr(x.hi), "range bound");
            info.var_types[x.binder.id] = Ty::Int;
            require(f->loc, Ty::Bool, formula(x.body), "quantified body");
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            for (const auto& b : x.binders) info.var_types[b.logic_var.id] = b.type;
            require(f->loc, Ty::Bool, formula(x.body), "quantified body");
            return Ty::Bool;
          } else if constexpr (std::is_same_v<T, Check>) {
            return formula(x.inner);
          }
        },
        f->v);
  }

  void run() {
    for (const auto& f : prog.functions) returns[f.name.name] = f.return_type;

    for (const auto& g : prog.globals) {
      Ty t = expr(g.init);
      if (g.declared_type)
        require(g.loc, *g.declared_type, t, "initializer of '" + g.ident.name + "'");
      info.var_types[g.ident.id] = g.declared_type ? *g.declared_type : t;
    }

    for (const auto& f : prog.functions) {
      current = &f;
      for (const auto& p : f.params) info.var_types[p.ident.id] = p.type;

      for (const auto& c : f.pre)
        require(c.formula->loc, Ty::Bool, formula(c.formula), "requires clause");

      Ty body_ty = Ty::Unit;
      if (f.body) {
        body_ty = expr(f.body);
        if (f.return_type)
          require(f.body->loc, *f.return_type, body_ty, "body of '" + f.name.name + "'");
        else
          returns[f.name.name] = body_ty;
      } else if (!f.return_type) {
        error(f.loc, "UnknownReturnType",
              "abstract function '" + f.name.name + "' needs a return type annotation");
        returns[f.name.name] = Ty::Unit;
      }

      // Postconditions after the body so `result` has a type even when the
      // return type is inferred.
      for (const auto& c : f.post)
        require(c.formula->loc, Ty::Bool, formula(c.formula), "ensures clause");

      current = nullptr;
    }

    for (const auto& [name, ret] : returns)
      info.fn_returns[name] = ret.value_or(Ty::Unit);
  }
};

}  // namespace

TypecheckResult typecheck(const Program& prog) {
  TypecheckResult r;
  Checker c{prog, r.info, r.errors};
  c.run();
  return r;
}

}  // namespace contracheck
