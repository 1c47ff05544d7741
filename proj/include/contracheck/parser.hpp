#pragma once

#include <string>
#include <string_view>

#include "contracheck/ast.hpp"
#include "contracheck/diagnostics.hpp"

namespace contracheck {

// Parses a whole source file. Identifiers are left unresolved (id 0).
// Throws ParseError / LexError on malformed input.
Program parse(std::string_view source, const std::string& filename);

// Parses a single formula, as it would appear between annotation braces.
Formula parse_formula_text(std::string_view source, const std::string& filename);

}  // namespace contracheck
