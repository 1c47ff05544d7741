#pragma once

#include <string>

#include "contracheck/ast.hpp"

namespace contracheck {

// Renders trees back to concrete syntax. For any parsed program,
// parse(pretty(parse(s))) is structurally equal to parse(s).
std::string pretty(const Expr& e);
std::string pretty(const Formula& f);
std::string pretty(const Program& p);

}  // namespace contracheck
