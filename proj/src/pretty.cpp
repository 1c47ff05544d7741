#include "contracheck/pretty.hpp"

#include <sstream>

namespace contracheck {

std::string ann_kind_tag(AnnKind k) {
  switch (k) {
    case AnnKind::Precondition: return "pre";
    case AnnKind::Postcondition: return "post";
    case AnnKind::LoopInvariantInit: return "loop-init";
    case AnnKind::LoopInvariantPreserved: return "loop-pres";
    case AnnKind::Assertion: return "assert";
  }
  return "?";
}

std::string ann_kind_name(AnnKind k) {
  switch (k) {
    case AnnKind::Precondition: return "precondition";
    case AnnKind::Postcondition: return "postcondition";
    case AnnKind::LoopInvariantInit: return "loop invariant initialization";
    case AnnKind::LoopInvariantPreserved: return "loop invariant preservation";
    case AnnKind::Assertion: return "assertion";
  }
  return "?";
}

namespace {

// Binding strength, loosest to tightest. Statement-like expressions
// (let/seq/assign/if/while/assert) sit below all operators and are
// parenthesized with begin..end where the grammar demands a single statement.
enum Prec {
  kStmt = 0,
  kImplies = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCmp = 5,
  kAdd = 6,
  kMul = 7,
  kApp = 8,
  kAtomic = 9,
};

const char* binop_sym(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "div";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "<>";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
  }
  return "?";
}

int binop_prec(BinOp op) {
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub: return kAdd;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return kMul;
    default: return kCmp;
  }
}

struct Printer {
  std::ostringstream out;

  static bool is_stmt_form(const Expr& e) {
    return std::holds_alternative<LetExpr>(e->v) || std::holds_alternative<SeqExpr>(e->v) ||
           std::holds_alternative<AssignExpr>(e->v);
  }

  void expr(const Expr& e, int min_prec, const std::string& indent) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            bool neg = x.value < 0;
            if (neg && min_prec > kAdd) out << "(";
            out << x.value.str();
            if (neg && min_prec > kAdd) out << ")";
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            out << (x.value ? "true" : "false");
          } else if constexpr (std::is_same_v<T, UnitLit>) {
            out << "()";
          } else if constexpr (std::is_same_v<T, VarRef>) {
            out << x.var.name;
          } else if constexpr (std::is_same_v<T, ResultRef>) {
            out << "result";
          } else if constexpr (std::is_same_v<T, Binary>) {
            int p = binop_prec(x.op);
            bool paren = p < min_prec;
            if (paren) out << "(";
            // Arithmetic is left-associative; comparisons do not nest bare.
            expr(x.lhs, p == kCmp ? kAdd : p, indent);
            out << " " << binop_sym(x.op) << " ";
            expr(x.rhs, p + 1, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            bool paren = kNot < min_prec;
            if (paren) out << "(";
            out << "not ";
            expr(x.arg, kCmp, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, AssignExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            out << x.target.name << " <- ";
            single_stmt(x.value, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, LetExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            out << "let ";
            if (x.is_ref) out << "ref ";
            out << x.var.name;
            if (x.declared_type) out << " : " << ty_name(*x.declared_type);
            out << " = ";
            single_stmt(x.init, indent);
            out << " in\n" << indent;
            expr(x.body, kStmt, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, SeqExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            // The first element of a sequence is a single statement.
            if (std::holds_alternative<LetExpr>(x.first->v) ||
                std::holds_alternative<SeqExpr>(x.first->v))
              block(x.first, indent);
            else
              expr(x.first, kStmt, indent);
            out << ";\n" << indent;
            expr(x.rest, kStmt, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            out << "if ";
            expr(x.cond, kCmp, indent);
            out << " then ";
            // An else-less if inside the then branch would steal this else.
            if (std::holds_alternative<IfExpr>(x.then_branch->v))
              block(x.then_branch, indent);
            else
              single_stmt(x.then_branch, indent);
            if (!std::holds_alternative<UnitLit>(x.else_branch->v)) {
              out << " else ";
              single_stmt(x.else_branch, indent);
            }
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            bool paren = kApp < min_prec;
            if (paren) out << "(";
            out << x.callee.name;
            if (x.args.empty()) out << " ()";
            for (const auto& a : x.args) {
              out << " ";
              expr(a, kAtomic, indent);
            }
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, WhileExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            std::string inner = indent + "  ";
            out << "while ";
            expr(x.cond, kCmp, indent);
            out << "\n";
            if (x.writes) {
              out << inner << "writes { ";
              for (size_t i = 0; i < x.writes->size(); ++i)
                out << (i ? ", " : "") << (*x.writes)[i].name;
              out << " }\n";
            }
            for (const auto& c : x.invariants) {
              out << inner << "invariant ";
              if (!c.label.empty()) out << c.label << " ";
              out << "{ ";
              formula(c.formula, kStmt, inner);
              out << " }\n";
            }
            out << indent << "do\n" << inner;
            expr(x.body, kStmt, inner);
            out << "\n" << indent << "done";
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, AssertExpr>) {
            bool paren = kStmt < min_prec;
            if (paren) out << "(";
            out << "assert { ";
            formula(x.formula, kStmt, indent);
            out << " }";
            if (paren) out << ")";
          }
        },
        e->v);
  }

  // A position where the grammar takes one statement: seq, let and assign
  // forms are wrapped in begin..end to stay a single unit.
  void single_stmt(const Expr& e, const std::string& indent) {
    if (is_stmt_form(e))
      block(e, indent);
    else
      expr(e, kStmt, indent);
  }

  void block(const Expr& e, const std::string& indent) {
    std::string inner = indent + "  ";
    out << "begin\n" << inner;
    expr(e, kStmt, inner);
    out << "\n" << indent << "end";
  }

  void formula(const Formula& f, int min_prec, const std::string& indent) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            expr(x.expr, min_prec > kCmp ? min_prec : kCmp, indent);
          } else if constexpr (std::is_same_v<T, FNot>) {
            bool paren = kNot < min_prec;
            if (paren) out << "(";
            out << "not ";
            formula(x.arg, kNot, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, FAnd>) {
            bool paren = kAnd < min_prec;
            if (paren) out << "(";
            formula(x.lhs, kAnd, indent);
            out << " /\\ ";
            formula(x.rhs, kAnd + 1, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, FOr>) {
            bool paren = kOr < min_prec;
            if (paren) out << "(";
            formula(x.lhs, kOr, indent);
            out << " \\/ ";
            formula(x.rhs, kOr + 1, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, FImplies>) {
            bool paren = kImplies < min_prec;
            if (paren) out << "(";
            formula(x.lhs, kImplies + 1, indent);
            out << " -> ";
            formula(x.rhs, kImplies, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            bool paren = kImplies < min_prec;
            if (paren) out << "(";
            out << (x.is_forall ? "forall " : "exists ") << x.binder.name << " in ";
            expr(x.lo, kAdd, indent);
            out << " .. ";
            expr(x.hi, kAdd, indent);
            out << ". ";
            formula(x.body, kImplies, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            // Internal form produced by the wp transformer; printed for
            // debugging and reports, not meant to be re-parsed.
            bool paren = kImplies < min_prec;
            if (paren) out << "(";
            out << "forall";
            for (const auto& b : x.binders) out << " " << b.logic_var.name;
            out << ". ";
            formula(x.body, kImplies, indent);
            if (paren) out << ")";
          } else if constexpr (std::is_same_v<T, Check>) {
            formula(x.inner, min_prec, indent);
          }
        },
        f->v);
  }
};

}  // namespace

std::string pretty(const Expr& e) {
  Printer p;
  p.expr(e, kStmt, "");
  return p.out.str();
}

std::string pretty(const Formula& f) {
  Printer p;
  p.formula(f, kStmt, "");
  return p.out.str();
}

std::string pretty(const Program& prog) {
  Printer p;
  auto& out = p.out;
  bool first = true;
  for (const auto& g : prog.globals) {
    if (!first) out << "\n";
    first = false;
    out << "let ";
    if (g.is_ref) out << "ref ";
    out << g.ident.name;
    if (g.declared_type) out << " : " << ty_name(*g.declared_type);
    out << " = ";
    p.expr(g.init, kImplies, "");
    out << "\n";
  }
  for (const auto& f : prog.functions) {
    if (!first) out << "\n";
    first = false;
    out << "let " << f.name.name;
    if (f.params.empty()) out << " ()";
    for (const auto& par : f.params)
      out << " (" << par.ident.name << " : " << ty_name(par.type) << ")";
    if (f.return_type) out << " : " << ty_name(*f.return_type);
    out << "\n";
    for (const auto& c : f.pre) {
      out << "  requires { ";
      p.formula(c.formula, kStmt, "  ");
      out << " }\n";
    }
    for (const auto& c : f.post) {
      out << "  ensures { ";
      p.formula(c.formula, kStmt, "  ");
      out << " }\n";
    }
    if (f.writes) {
      out << "  writes { ";
      for (size_t i = 0; i < f.writes->size(); ++i)
        out << (i ? ", " : "") << (*f.writes)[i].name;
      out << " }\n";
    }
    if (f.body) {
      out << "= ";
      p.expr(f.body, kStmt, "  ");
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace contracheck
