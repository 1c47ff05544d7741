#include "contracheck/parser.hpp"

#include <cassert>

#include "contracheck/lexer.hpp"

namespace contracheck {

namespace {

// The surface syntax has one expression grammar shared by code and
// annotations: boolean connectives parse below comparisons, comparisons
// below arithmetic. Parsing yields a Formula; positions that need code
// convert it with formula_to_expr, which lowers connectives to
// short-circuit conditionals. Quantifiers and `result` are only accepted
// inside annotation braces.
struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  bool in_formula = false;

  const Token& tok(size_t off = 0) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& cur() const { return tok(0); }
  SourceLoc loc() const { return cur().loc; }

  bool is_sym(const char* s, size_t off = 0) const {
    return tok(off).kind == TokKind::Sym && tok(off).text == s;
  }
  bool is_kw(const char* s, size_t off = 0) const {
    return tok(off).kind == TokKind::Keyword && tok(off).text == s;
  }

  Token eat() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

  Token expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    return eat();
  }
  Token expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("'") + s + "'");
    return eat();
  }
  Token expect_ident() {
    if (cur().kind != TokKind::Ident) fail("an identifier");
    return eat();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(loc(), expected, "'" + cur().text + "'");
  }

  // -------------------------------------------------------------------------

  Ty parse_ty() {
    if (is_kw("int")) { eat(); return Ty::Int; }
    if (is_kw("bool")) { eat(); return Ty::Bool; }
    if (is_kw("unit")) { eat(); return Ty::Unit; }
    fail("a type (int, bool or unit)");
  }

  // Can the current token begin an operand?
  bool starts_atom() const {
    const Token& t = cur();
    switch (t.kind) {
      case TokKind::Int:
      case TokKind::Ident: return true;
      case TokKind::Keyword:
        return t.text == "true" || t.text == "false" ||
               (in_formula && t.text == "result") || t.text == "begin";
      case TokKind::Sym: return t.text == "(" || t.text == "()";
      default: return false;
    }
  }

  bool starts_statement() const {
    return starts_atom() || is_sym("-") || is_kw("if") || is_kw("while") ||
           is_kw("assert") || is_kw("not");
  }

  // ---- formula / operator-expression layer --------------------------------

  // Either a formula or an expression; exactly one side is set.
  struct FV {
    Formula f;
    Expr e;
  };

  Expr formula_to_expr(const Formula& f) {
    return std::visit(
        [&](const auto& x) -> Expr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return x.expr;
          } else if constexpr (std::is_same_v<T, FNot>) {
            return mk_expr(f->loc, NotExpr{formula_to_expr(x.arg)});
          } else if constexpr (std::is_same_v<T, FAnd>) {
            return mk_expr(f->loc, IfExpr{formula_to_expr(x.lhs), formula_to_expr(x.rhs),
                                          mk_bool(f->loc, false)});
          } else if constexpr (std::is_same_v<T, FOr>) {
            return mk_expr(f->loc, IfExpr{formula_to_expr(x.lhs), mk_bool(f->loc, true),
                                          formula_to_expr(x.rhs)});
          } else if constexpr (std::is_same_v<T, FImplies>) {
            return mk_expr(f->loc, IfExpr{formula_to_expr(x.lhs), formula_to_expr(x.rhs),
                                          mk_bool(f->loc, true)});
          } else {
            throw ParseError(f->loc, "an expression", "a quantified formula");
          }
        },
        f->v);
  }

  Expr expr_of(FV v) {
    if (v.e) return v.e;
    return formula_to_expr(v.f);
  }

  Formula formula_of(FV v) {
    if (v.f) return v.f;
    return mk_atom(v.e);
  }

  Formula parse_formula() { return parse_implies(); }

  Formula parse_implies() {
    Formula l = parse_or();
    if (is_sym("->")) {
      eat();
      Formula r = parse_implies();
      return mk_formula(l->loc, FImplies{l, r});
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (is_sym("\\/")) {
      eat();
      Formula r = parse_and();
      l = mk_formula(l->loc, FOr{l, r});
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_funit();
    while (is_sym("/\\")) {
      eat();
      Formula r = parse_funit();
      l = mk_formula(l->loc, FAnd{l, r});
    }
    return l;
  }

  Formula parse_funit() {
    if (is_kw("not")) {
      SourceLoc l = loc();
      eat();
      return mk_formula(l, FNot{parse_funit()});
    }
    if (is_kw("forall") || is_kw("exists")) {
      if (!in_formula) fail("an expression (quantifiers belong in annotations)");
      SourceLoc l = loc();
      bool is_forall = cur().text == "forall";
      eat();
      Ident binder{expect_ident().text, 0};
      expect_kw("in");
      Expr lo = parse_add();
      expect_sym("..");
      Expr hi = parse_add();
      expect_sym(".");
      Formula body = parse_implies();
      return mk_formula(l, QuantRange{is_forall, binder, lo, hi, body});
    }
    return parse_comparison();
  }

  bool at_cmp_op() const {
    return is_sym("=") || is_sym("<>") || is_sym("<") || is_sym("<=") || is_sym(">") ||
           is_sym(">=");
  }

  static BinOp cmp_op(const std::string& s) {
    if (s == "=") return BinOp::Eq;
    if (s == "<>") return BinOp::Ne;
    if (s == "<") return BinOp::Lt;
    if (s == "<=") return BinOp::Le;
    if (s == ">") return BinOp::Gt;
    return BinOp::Ge;
  }

  // One comparison level; chains like a <= b < c become conjunctions.
  Formula parse_comparison() {
    FV first = parse_add_fv();
    if (!at_cmp_op()) return formula_of(first);
    Expr lhs = expr_of(first);
    Formula acc;
    while (at_cmp_op()) {
      BinOp op = cmp_op(eat().text);
      Expr rhs = parse_add();
      Formula link = mk_atom(mk_binary(lhs->loc, op, lhs, rhs));
      acc = acc ? mk_and(acc, link) : link;
      lhs = rhs;
    }
    return acc;
  }

  // ---- arithmetic layer ----------------------------------------------------

  Expr parse_add() { return expr_of(parse_add_fv()); }

  FV parse_add_fv() {
    FV l = parse_mul_fv();
    while (is_sym("+") || is_sym("-")) {
      BinOp op = is_sym("+") ? BinOp::Add : BinOp::Sub;
      eat();
      Expr lhs = expr_of(l);
      Expr rhs = expr_of(parse_mul_fv());
      l = FV{nullptr, mk_binary(lhs->loc, op, lhs, rhs)};
    }
    return l;
  }

  FV parse_mul_fv() {
    FV l = parse_unary_fv();
    while (is_sym("*") || is_kw("div") || is_kw("mod")) {
      BinOp op = is_sym("*") ? BinOp::Mul : (is_kw("div") ? BinOp::Div : BinOp::Mod);
      eat();
      Expr lhs = expr_of(l);
      Expr rhs = expr_of(parse_unary_fv());
      l = FV{nullptr, mk_binary(lhs->loc, op, lhs, rhs)};
    }
    return l;
  }

  FV parse_unary_fv() {
    if (is_sym("-")) {
      SourceLoc l = loc();
      eat();
      Expr arg = expr_of(parse_unary_fv());
      if (const auto* lit = std::get_if<IntLit>(&arg->v))
        return FV{nullptr, mk_int(l, -lit->value)};
      return FV{nullptr, mk_binary(l, BinOp::Sub, mk_int(l, 0), arg)};
    }
    return parse_app_fv();
  }

  FV parse_app_fv() {
    FV head = parse_atom_fv();
    if (!head.e) return head;
    // `f a b` is a call when the head is a bare name and an atom follows.
    if (std::holds_alternative<VarRef>(head.e->v) && starts_atom() && !is_kw("begin")) {
      Ident callee = std::get<VarRef>(head.e->v).var;
      std::vector<Expr> args;
      while (starts_atom() && !is_kw("begin")) args.push_back(expr_of(parse_atom_fv()));
      // `f ()` is a zero-argument call.
      if (args.size() == 1 && std::holds_alternative<UnitLit>(args[0]->v)) args.clear();
      return FV{nullptr, mk_expr(head.e->loc, CallExpr{callee, std::move(args)})};
    }
    return head;
  }

  FV parse_atom_fv() {
    const Token& t = cur();
    SourceLoc l = t.loc;
    switch (t.kind) {
      case TokKind::Int: {
        eat();
        return FV{nullptr, mk_int(l, Int(t.text))};
      }
      case TokKind::Ident: {
        eat();
        return FV{nullptr, mk_var(l, Ident{t.text, 0})};
      }
      case TokKind::Keyword: {
        if (t.text == "true" || t.text == "false") {
          eat();
          return FV{nullptr, mk_bool(l, t.text == "true")};
        }
        if (t.text == "result") {
          if (!in_formula) fail("an expression (`result` belongs in annotations)");
          eat();
          return FV{nullptr, mk_expr(l, ResultRef{})};
        }
        if (t.text == "begin") {
          if (in_formula) fail("a formula");
          eat();
          Expr e = parse_seq();
          expect_kw("end");
          return FV{nullptr, e};
        }
        break;
      }
      case TokKind::Sym: {
        if (t.text == "()") {
          eat();
          return FV{nullptr, mk_unit(l)};
        }
        if (t.text == "(") {
          eat();
          if (in_formula) {
            Formula f = parse_formula();
            expect_sym(")");
            if (const auto* a = std::get_if<Atom>(&f->v)) return FV{nullptr, a->expr};
            return FV{f, nullptr};
          }
          Expr e = parse_seq();
          expect_sym(")");
          return FV{nullptr, e};
        }
        break;
      }
      default: break;
    }
    fail(in_formula ? "a formula" : "an expression");
  }

  // ---- statement layer -----------------------------------------------------

  Expr parse_code_expr() {
    assert(!in_formula);
    return formula_to_expr(parse_formula());
  }

  Formula parse_braced_formula() {
    expect_sym("{");
    bool saved = in_formula;
    in_formula = true;
    Formula f = parse_formula();
    in_formula = saved;
    expect_sym("}");
    return f;
  }

  std::vector<Ident> parse_writes_list() {
    expect_sym("{");
    std::vector<Ident> out;
    if (!is_sym("}")) {
      out.push_back(Ident{expect_ident().text, 0});
      while (is_sym(",")) {
        eat();
        out.push_back(Ident{expect_ident().text, 0});
      }
    }
    expect_sym("}");
    return out;
  }

  // invariant [Label] { formula }  |  writes { x, y }
  void parse_loop_clauses(std::vector<Clause>& invs, std::optional<std::vector<Ident>>& writes) {
    for (;;) {
      if (is_kw("invariant")) {
        eat();
        std::string label;
        if (cur().kind == TokKind::Ident && is_sym("{", 1)) label = eat().text;
        invs.push_back(Clause{parse_braced_formula(), label});
      } else if (is_kw("writes")) {
        eat();
        auto list = parse_writes_list();
        if (writes)
          writes->insert(writes->end(), list.begin(), list.end());
        else
          writes = std::move(list);
      } else {
        break;
      }
    }
  }

  Expr parse_stmt() {
    SourceLoc l = loc();
    if (is_kw("if")) {
      eat();
      Expr cond = parse_code_expr();
      expect_kw("then");
      Expr then_b = parse_stmt();
      Expr else_b;
      if (is_kw("else")) {
        eat();
        else_b = parse_stmt();
      } else {
        else_b = mk_unit(l);
      }
      return mk_expr(l, IfExpr{cond, then_b, else_b});
    }
    if (is_kw("while")) {
      eat();
      Expr cond = parse_code_expr();
      std::vector<Clause> invs;
      std::optional<std::vector<Ident>> writes;
      parse_loop_clauses(invs, writes);
      expect_kw("do");
      parse_loop_clauses(invs, writes);
      Expr body = parse_seq();
      expect_kw("done");
      return mk_expr(l, WhileExpr{cond, std::move(invs), std::move(writes), {}, body});
    }
    if (is_kw("assert")) {
      eat();
      return mk_expr(l, AssertExpr{parse_braced_formula()});
    }
    if (cur().kind == TokKind::Ident && is_sym("<-", 1)) {
      Ident target{eat().text, 0};
      eat();  // <-
      Expr value = parse_stmt();
      return mk_expr(l, AssignExpr{target, value});
    }
    return parse_code_expr();
  }

  // seq := item (';' seq)?   item := let-binding | statement
  Expr parse_seq() {
    SourceLoc l = loc();
    if (is_kw("let")) {
      eat();
      bool is_ref = false;
      if (is_kw("ref")) {
        eat();
        is_ref = true;
      }
      Ident var{expect_ident().text, 0};
      std::optional<Ty> ty;
      if (is_sym(":")) {
        eat();
        ty = parse_ty();
      }
      expect_sym("=");
      Expr init = parse_stmt();
      Expr body;
      if (is_kw("in") || is_sym(";")) {
        eat();
        body = parse_seq();
      } else {
        body = mk_unit(l);  // trailing binding: value is ()
      }
      return mk_expr(l, LetExpr{var, is_ref, ty, init, body});
    }
    Expr first = parse_stmt();
    if (is_sym(";")) {
      eat();
      Expr rest = parse_seq();
      return mk_expr(first->loc, SeqExpr{first, rest});
    }
    return first;
  }

  // ---- declarations --------------------------------------------------------

  GlobalDecl parse_global(SourceLoc l, bool is_ref) {
    Token name = expect_ident();
    std::optional<Ty> ty;
    if (is_sym(":")) {
      eat();
      ty = parse_ty();
    }
    expect_sym("=");
    Expr init = parse_stmt();
    return GlobalDecl{Ident{name.text, 0}, l, is_ref, ty, init};
  }

  FunctionDecl parse_function(SourceLoc l) {
    FunctionDecl f;
    f.loc = l;
    Token name = expect_ident();
    f.name = Ident{name.text, 0};
    f.name.id = 0;
    // parameters: () or one or more (x : ty)
    if (is_sym("()")) {
      eat();
    } else {
      if (!is_sym("(")) fail("a parameter list");
      while (is_sym("(")) {
        eat();
        Token p = expect_ident();
        expect_sym(":");
        Ty ty = parse_ty();
        expect_sym(")");
        f.params.push_back(Param{Ident{p.text, 0}, ty, p.loc});
      }
    }
    if (is_sym(":")) {
      eat();
      f.return_type = parse_ty();
    }
    for (;;) {
      if (is_kw("requires")) {
        eat();
        f.pre.push_back(Clause{parse_braced_formula(), ""});
      } else if (is_kw("ensures")) {
        eat();
        f.post.push_back(Clause{parse_braced_formula(), ""});
      } else if (is_kw("writes")) {
        eat();
        auto list = parse_writes_list();
        if (f.writes)
          f.writes->insert(f.writes->end(), list.begin(), list.end());
        else
          f.writes = std::move(list);
      } else {
        break;
      }
    }
    // Body: introduced by '=', or directly by an expression for the compact
    // style `let f (x:int) : unit ensures { ... }  x <- x + 1`. A bare body
    // may not begin with `let`, which always opens the next declaration.
    if (is_sym("=")) {
      eat();
      f.body = parse_seq();
    } else if (starts_statement() && !is_kw("let")) {
      f.body = parse_seq();
    }
    return f;
  }

  Program parse_program() {
    Program p;
    while (cur().kind != TokKind::Eof) {
      SourceLoc l = loc();
      expect_kw("let");
      if (is_kw("ref")) {
        eat();
        p.globals.push_back(parse_global(l, true));
      } else {
        if (cur().kind != TokKind::Ident) fail("a declaration name");
        if (is_sym("(", 1) || is_sym("()", 1))
          p.functions.push_back(parse_function(l));
        else
          p.globals.push_back(parse_global(l, false));
      }
    }
    return p;
  }
};

}  // namespace

Program parse(std::string_view source, const std::string& filename) {
  Parser p{tokenize(source, filename)};
  return p.parse_program();
}

Formula parse_formula_text(std::string_view source, const std::string& filename) {
  Parser p{tokenize(source, filename)};
  p.in_formula = true;
  Formula f = p.parse_formula();
  if (p.cur().kind != TokKind::Eof) p.fail("end of formula");
  return f;
}

}  // namespace contracheck
