#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "contracheck/diagnostics.hpp"
#include "contracheck/source_loc.hpp"

namespace contracheck {

enum class TokKind { Ident, Keyword, Int, Sym, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  SourceLoc loc;
};

// Tokenizes a whole file. Comments are (* ... *), nesting allowed.
// Throws LexError on unexpected characters or an unterminated comment.
std::vector<Token> tokenize(std::string_view source, const std::string& filename);

}  // namespace contracheck
