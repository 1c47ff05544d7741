#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "contracheck/ast_ops.hpp"
#include "contracheck/lexer.hpp"
#include "contracheck/parser.hpp"
#include "contracheck/pretty.hpp"
#include "contracheck/resolve.hpp"
#include "contracheck/typecheck.hpp"

#include "testutil.hpp"

using namespace contracheck;

// ============================================================================
// Lexer
// ============================================================================

TEST_CASE("lexer: tokens, positions, and comment handling") {
  auto toks = tokenize("let x' = 12\n  (* a (* nested *) comment *) y", "t.mw");
  REQUIRE(toks.size() == 6);  // let x' = 12 y <eof>
  CHECK(toks[0].kind == TokKind::Keyword);
  CHECK(toks[0].text == "let");
  CHECK(toks[1].kind == TokKind::Ident);
  CHECK(toks[1].text == "x'");
  CHECK(toks[2].kind == TokKind::Sym);
  CHECK(toks[3].kind == TokKind::Int);
  CHECK(toks[3].text == "12");
  CHECK(toks[4].text == "y");
  CHECK(toks[4].loc.line == 2);
  CHECK(toks[4].loc.column == 32);
  CHECK(toks[5].kind == TokKind::Eof);
}

TEST_CASE("lexer: ASCII synonyms normalise to the core symbols") {
  auto toks = tokenize("a && b || c != d", "t.mw");
  CHECK(toks[1].text == "/\\");
  CHECK(toks[3].text == "\\/");
  CHECK(toks[5].text == "<>");
}

TEST_CASE("lexer: failures carry a location") {
  CHECK_THROWS_AS(tokenize("a # b", "t.mw"), LexError);
  CHECK_THROWS_AS(tokenize("(* never closed", "t.mw"), LexError);
  try {
    tokenize("ok\n  #", "t.mw");
    FAIL("expected a lex error");
  } catch (const LexError& e) {
    CHECK(e.loc.line == 2);
    CHECK(e.loc.column == 3);
  }
}

// ============================================================================
// Parser and pretty-printer
// ============================================================================

namespace {

// Parse → pretty → parse must reproduce the same tree (ids are all zero
// before resolution, so compare by name).
void check_roundtrip(const std::string& src) {
  CAPTURE(src);
  Program p1 = parse(src, "t.mw");
  std::string printed = pretty(p1);
  CAPTURE(printed);
  Program p2 = parse(printed, "t.mw");
  CHECK(program_equal(p1, p2, /*compare_ids=*/false));
}

}  // namespace

TEST_CASE("parser: operator precedence and associativity") {
  Program p = parse("let f (a: int) (b: int): int = a + b * 2 - -3", "t.mw");
  CHECK(pretty(p.functions[0].body) == "a + b * 2 - (-3)");

  p = parse("let f (a: int) (b: int): bool ensures { a < b -> a + 1 <= b /\\ true } = true",
            "t.mw");
  CHECK(pretty(p.functions[0].post[0].formula) == "a < b -> a + 1 <= b /\\ true");
}

TEST_CASE("parser: chained comparisons become conjunctions") {
  Program p = parse("let f (n: int): unit requires { 0 <= n <= 10 } = ()", "t.mw");
  CHECK(pretty(p.functions[0].pre[0].formula) == "0 <= n /\\ n <= 10");
}

TEST_CASE("parser: application, unit calls, and begin/end blocks") {
  check_roundtrip("let g (x: int): int = x\nlet f (): int = g 1 + g 2");
  check_roundtrip("let tick (): unit = ()\nlet f (): unit = tick ()");
  check_roundtrip("let f (x: int): int = begin x <- x + 1; x end + 1");
}

TEST_CASE("parser: statement forms round-trip") {
  check_roundtrip(
      "let ref g: int = 0\n"
      "let f (n: int): int\n"
      "  requires { n >= 0 }\n"
      "  writes { g }\n"
      "  ensures { result >= n }\n"
      "= let ref i = 0 in\n"
      "  let ref s = n in\n"
      "  while i < 3 do\n"
      "    invariant Bound { 0 <= i /\\ i <= 3 }\n"
      "    invariant { s >= n }\n"
      "    s <- s + i;\n"
      "    i <- i + 1\n"
      "  done;\n"
      "  if s > n then g <- s else assert { s = n };\n"
      "  s");
}

TEST_CASE("parser: quantified annotation formulas") {
  Program p = parse(
      "let f (n: int): unit\n"
      "  requires { forall i in 0 .. n. exists j in i .. n. j >= i }\n"
      "= ()",
      "t.mw");
  const auto& q = std::get<QuantRange>(p.functions[0].pre[0].formula->v);
  CHECK(q.is_forall);
  CHECK(q.binder.name == "i");
  check_roundtrip(pretty(p));
}

TEST_CASE("parser: loop clauses accepted before or after `do`") {
  Program before = parse(
      "let f (): int = let ref i = 0 in while i < 2 invariant { i >= 0 } do i <- i + 1 done; i",
      "t.mw");
  Program after = parse(
      "let f (): int = let ref i = 0 in while i < 2 do invariant { i >= 0 } i <- i + 1 done; i",
      "t.mw");
  CHECK(program_equal(before, after, /*compare_ids=*/false));
}

TEST_CASE("parser: rejects misplaced constructs with located errors") {
  // Quantifiers and `result` only make sense inside annotations.
  CHECK_THROWS_AS(parse("let f (): int = forall i in 0 .. 2. i", "t.mw"), ParseError);
  CHECK_THROWS_AS(parse("let f (): int = result", "t.mw"), ParseError);
  CHECK_THROWS_AS(parse("let f (: int = 1", "t.mw"), ParseError);
  try {
    parse("let f (x: int): int = x +", "t.mw");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 1);
    CHECK(e.expected == "an expression");
  }
}

TEST_CASE("parser: annotation locations point at the formula head") {
  // Categorisation compares failure locations against goal locations, so the
  // clause location must be the first token of the formula, not the keyword.
  std::string src =
      "let f (n: int): int\n"
      "  requires { n >= 0 }\n"
      "  ensures { result >= 0 }\n"
      "= assert { n >= 0 };\n"
      "  n";
  Program p = parse(src, "t.mw");
  CHECK(p.functions[0].pre[0].formula->loc.line == 2);
  CHECK(p.functions[0].pre[0].formula->loc.column == 14);
  CHECK(p.functions[0].post[0].formula->loc.line == 3);
  CHECK(p.functions[0].post[0].formula->loc.column == 13);
}

// ============================================================================
// Resolution
// ============================================================================

TEST_CASE("resolve: declarations get unique ids, uses share them") {
  Program raw = parse(
      "let ref g: int = 1\n"
      "let f (x: int): int = let y = x + g in y + x",
      "t.mw");
  ResolveResult rr = resolve(raw);
  REQUIRE(rr.ok());
  const FunctionDecl& f = rr.program.functions[0];
  int xid = f.params[0].ident.id;
  CHECK(xid > 0);
  const auto& let = std::get<LetExpr>(f.body->v);
  const auto& sum = std::get<Binary>(let.init->v);
  CHECK(std::get<VarRef>(sum.lhs->v).var.id == xid);
  CHECK(std::get<VarRef>(sum.rhs->v).var.id == rr.program.globals[0].ident.id);
  const auto& body_sum = std::get<Binary>(let.body->v);
  CHECK(std::get<VarRef>(body_sum.lhs->v).var.id == let.var.id);
  CHECK(std::get<VarRef>(body_sum.rhs->v).var.id == xid);
  CHECK(let.var.id != xid);
}

TEST_CASE("resolve: shadowing introduces a fresh variable") {
  Program raw = parse("let f (x: int): int = let x = x + 1 in x", "t.mw");
  ResolveResult rr = resolve(raw);
  REQUIRE(rr.ok());
  const auto& let = std::get<LetExpr>(rr.program.functions[0].body->v);
  int outer = rr.program.functions[0].params[0].ident.id;
  CHECK(std::get<VarRef>(std::get<Binary>(let.init->v).lhs->v).var.id == outer);
  CHECK(std::get<VarRef>(let.body->v).var.id == let.var.id);
  CHECK(let.var.id != outer);
}

namespace {

std::vector<std::string> resolve_codes(const std::string& src) {
  ResolveResult rr = resolve(parse(src, "t.mw"));
  std::vector<std::string> codes;
  for (const auto& d : rr.errors) codes.push_back(d.code);
  return codes;
}

}  // namespace

TEST_CASE("resolve: scoping and mutability errors") {
  using Codes = std::vector<std::string>;
  CHECK(resolve_codes("let f (): int = y") == Codes{"UnboundVariable"});
  CHECK(resolve_codes("let f (x: int): unit = x <- 1") == Codes{"AssignToImmutable"});
  CHECK(resolve_codes("let f (x: int) (x: int): int = x") == Codes{"DuplicateDefinition"});
  CHECK(resolve_codes("let f (): unit = f 1; ()") == Codes{"ArityMismatch"});
  // Annotations may not call functions (they must stay effect-free).
  CHECK(resolve_codes("let g (): int = 1\nlet f (): unit ensures { g () = 1 } = ()") ==
        Codes{"ImpureAnnotation"});
  CHECK(resolve_codes("let ref g: int = begin () ; 2 end\nlet f (): int = g") ==
        Codes{"ImpureGlobalInitializer"});
}

TEST_CASE("resolve: declared writes clauses are checked against the body") {
  CHECK(resolve_codes("let ref g: int = 0\nlet f (): unit writes { } = g <- 1") ==
        std::vector<std::string>{"WritesClauseIncomplete"});
  CHECK(resolve_codes("let g: int = 0\nlet f (): unit writes { g } = ()") ==
        std::vector<std::string>{"WritesImmutable"});
  // A loop writes clause may name locals; a function clause must not.
  CHECK(resolve_codes("let f (): unit = let ref x = 0 in x <- 1").empty());
  CHECK(resolve_codes("let f (): unit writes { x } = let ref x = 0 in x <- 1") ==
        std::vector<std::string>{"WritesNotGlobal"});
}

TEST_CASE("resolve: loop write sets are inferred in first-assignment order") {
  testutil::Compiled c = testutil::compile(
      "let f (): int =\n"
      "  let ref a = 0 in let ref b = 0 in let ref k = 0 in\n"
      "  while k < 2 do invariant { k >= 0 }\n"
      "    b <- b + 1; a <- a + b; k <- k + 1\n"
      "  done;\n"
      "  a");
  const FunctionDecl& f = c.program.functions[0];
  // Dig the loop out of the let-chain.
  const Expr* e = &f.body;
  const WhileExpr* loop = nullptr;
  while (!loop) {
    if (const auto* let = std::get_if<LetExpr>(&(*e)->v)) {
      e = &let->body;
    } else if (const auto* seq = std::get_if<SeqExpr>(&(*e)->v)) {
      loop = &std::get<WhileExpr>(seq->first->v);
    }
  }
  REQUIRE(loop->effective_writes.size() == 3);
  CHECK(loop->effective_writes[0].name == "b");
  CHECK(loop->effective_writes[1].name == "a");
  CHECK(loop->effective_writes[2].name == "k");
}

TEST_CASE("resolve: function write sets include callee effects on globals") {
  testutil::Compiled c = testutil::compile(
      "let ref g: int = 0\n"
      "let poke (): unit writes { g } = g <- g + 1\n"
      "let f (): unit = poke ()");
  REQUIRE(c.program.functions[1].effective_writes.size() == 1);
  CHECK(c.program.functions[1].effective_writes[0].name == "g");
}

TEST_CASE("resolve: running it twice is the identity") {
  std::string src =
      "let ref g: int = 3\n"
      "let aux (a: int): int ensures { result > a } = a + 1\n"
      "let f (n: int): int\n"
      "  requires { n >= 0 }\n"
      "= let ref s = aux n in\n"
      "  while s < 10 do invariant { s > 0 } s <- s + 1 done;\n"
      "  assert { s >= 10 };\n"
      "  s + g";
  ResolveResult once = resolve(parse(src, "t.mw"));
  REQUIRE(once.ok());
  ResolveResult twice = resolve(once.program);
  REQUIRE(twice.ok());
  CHECK(program_equal(once.program, twice.program, /*compare_ids=*/true));
}

// ============================================================================
// Typechecking
// ============================================================================

namespace {

std::vector<std::string> type_codes(const std::string& src) {
  ResolveResult rr = resolve(parse(src, "t.mw"));
  REQUIRE(rr.ok());
  TypecheckResult tr = typecheck(rr.program);
  std::vector<std::string> codes;
  for (const auto& d : tr.errors) codes.push_back(d.code);
  return codes;
}

}  // namespace

TEST_CASE("typecheck: records declaration types and return types") {
  testutil::Compiled c = testutil::compile(
      "let ref flag: bool = false\n"
      "let f (n: int): int = let b = n > 0 in if b then n else 0 - n");
  CHECK(c.types.fn_return("f") == Ty::Int);
  CHECK(c.types.var_type(c.program.globals[0].ident.id) == Ty::Bool);
  const auto& let = std::get<LetExpr>(c.program.functions[0].body->v);
  CHECK(c.types.var_type(let.var.id) == Ty::Bool);
}

TEST_CASE("typecheck: rejects ill-typed programs without giving up early") {
  using Codes = std::vector<std::string>;
  CHECK(type_codes("let f (b: bool): int = b + 1") == Codes{"TypeMismatch"});
  CHECK(type_codes("let f (): unit = assert { 1 + 1 }") == Codes{"TypeMismatch"});
  CHECK(type_codes("let f (): int = 1; 2") == Codes{"TypeMismatch"});  // first arm must be unit
  CHECK(type_codes("let f (n: int): bool = if n then true else false") == Codes{"TypeMismatch"});
  CHECK(type_codes("let f (): unit ensures { result } = ()") == Codes{"TypeMismatch"});
  // Recursion without a declared return type is not inferrable.
  CHECK(type_codes("let f (n: int) = f (n - 1)") == Codes{"UnknownReturnType"});
  // Two independent errors are both reported.
  CHECK(type_codes("let f (b: bool): int = begin assert { 3 }; b * 2 end").size() == 2);
}

TEST_CASE("typecheck: annotation formulas must be boolean") {
  CHECK(type_codes("let f (n: int): int requires { n + 1 } = n") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(type_codes("let f (n: int): int = let ref i = 0 in while i < n do invariant { i } i <- "
                   "i + 1 done; i") == std::vector<std::string>{"TypeMismatch"});
}
