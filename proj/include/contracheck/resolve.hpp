#pragma once

#include <vector>

#include "contracheck/ast.hpp"
#include "contracheck/diagnostics.hpp"

namespace contracheck {

struct ResolveResult {
  Program program;
  std::vector<Diag> errors;
  bool ok() const { return errors.empty(); }
};

// Gives every declaration a unique positive id and every use the id of its
// declaration, checks scoping and mutability rules, verifies annotation
// purity, and computes effective write sets for functions and loops
// (checking declared writes clauses against the inferred ones).
// Running it twice yields a structurally identical program.
ResolveResult resolve(const Program& raw);

}  // namespace contracheck
