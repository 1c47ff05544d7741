#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "contracheck/source_loc.hpp"

namespace contracheck {

// A compile-time problem found while resolving or typechecking.
// `code` is a stable machine-readable tag ("UnboundVariable", ...).
struct Diag {
  SourceLoc loc;
  std::string code;
  std::string message;

  std::string to_string() const {
    return loc.to_string() + ": error [" + code + "]: " + message;
  }
};

// Lexing failure: an unexpected character or unterminated token.
class LexError : public std::runtime_error {
 public:
  LexError(SourceLoc loc, std::string message)
      : std::runtime_error(loc.to_string() + ": lex error: " + message),
        loc(std::move(loc)), message(std::move(message)) {}
  SourceLoc loc;
  std::string message;
};

// Parsing failure with the set of token kinds that would have been accepted.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, std::string expected, std::string found)
      : std::runtime_error(loc.to_string() + ": parse error: expected " + expected +
                           ", found " + found),
        loc(std::move(loc)), expected(std::move(expected)), found(std::move(found)) {}
  SourceLoc loc;
  std::string expected;
  std::string found;
};

}  // namespace contracheck
