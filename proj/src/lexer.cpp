#include "contracheck/lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace contracheck {

namespace {

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "let",      "ref",     "in",        "if",     "then",   "else",
      "while",    "do",      "done",      "assert", "requires", "ensures",
      "invariant", "writes", "forall",    "exists", "not",    "true",
      "false",    "int",     "bool",      "unit",   "begin",  "end",
      "div",      "mod",     "result"};
  return kw;
}

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view src, const std::string& filename) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto here = [&]() { return SourceLoc{filename, line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](size_t off = 0) -> char {
    return i + off < src.size() ? src[i + off] : '\0';
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '(' && peek(1) == '*') {
      SourceLoc open = here();
      advance(2);
      int depth = 1;
      while (depth > 0) {
        if (i >= src.size()) throw LexError(open, "unterminated comment");
        if (peek() == '(' && peek(1) == '*') {
          ++depth;
          advance(2);
        } else if (peek() == '*' && peek(1) == ')') {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      }
      continue;
    }
    SourceLoc loc = here();
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back(Token{TokKind::Int, std::move(text), loc});
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      TokKind k = keywords().count(text) ? TokKind::Keyword : TokKind::Ident;
      out.push_back(Token{k, std::move(text), loc});
      continue;
    }

    auto sym = [&](const char* s, size_t n) {
      advance(n);
      out.push_back(Token{TokKind::Sym, s, loc});
    };
    switch (c) {
      case '<':
        if (peek(1) == '-') { sym("<-", 2); continue; }
        if (peek(1) == '=') { sym("<=", 2); continue; }
        if (peek(1) == '>') { sym("<>", 2); continue; }
        sym("<", 1);
        continue;
      case '>':
        if (peek(1) == '=') { sym(">=", 2); continue; }
        sym(">", 1);
        continue;
      case '-':
        if (peek(1) == '>') { sym("->", 2); continue; }
        sym("-", 1);
        continue;
      case '/':
        if (peek(1) == '\\') { sym("/\\", 2); continue; }
        break;
      case '\\':
        if (peek(1) == '/') { sym("\\/", 2); continue; }
        break;
      case '&':
        if (peek(1) == '&') { sym("/\\", 2); continue; }  // synonym
        break;
      case '|':
        if (peek(1) == '|') { sym("\\/", 2); continue; }  // synonym
        break;
      case '!':
        if (peek(1) == '=') { sym("<>", 2); continue; }  // synonym
        break;
      case '.':
        if (peek(1) == '.') { sym("..", 2); continue; }
        sym(".", 1);
        continue;
      case '+': sym("+", 1); continue;
      case '*': sym("*", 1); continue;
      case '=': sym("=", 1); continue;
      case '(':
        if (peek(1) == ')') { sym("()", 2); continue; }
        sym("(", 1);
        continue;
      case ')': sym(")", 1); continue;
      case '{': sym("{", 1); continue;
      case '}': sym("}", 1); continue;
      case ';': sym(";", 1); continue;
      case ',': sym(",", 1); continue;
      case ':': sym(":", 1); continue;
      default: break;
    }
    throw LexError(loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{TokKind::Eof, "<eof>", here()});
  return out;
}

}  // namespace contracheck
