#pragma once

#include <unordered_map>
#include <vector>

#include "contracheck/ast.hpp"
#include "contracheck/diagnostics.hpp"

namespace contracheck {

// Types recorded while checking: every declaration's type (keyed by its
// unique id) and every function's return type (declared or inferred).
struct TypeInfo {
  std::unordered_map<int, Ty> var_types;
  std::unordered_map<std::string, Ty> fn_returns;

  Ty var_type(int id) const {
    auto it = var_types.find(id);
    return it == var_types.end() ? Ty::Int : it->second;
  }
  Ty fn_return(const std::string& name) const {
    auto it = fn_returns.find(name);
    return it == fn_returns.end() ? Ty::Unit : it->second;
  }
};

struct TypecheckResult {
  TypeInfo info;
  std::vector<Diag> errors;
  bool ok() const { return errors.empty(); }
};

// Checks a resolved program. Types are int, bool and unit; equality is
// defined on int and bool; annotations must be boolean; the first arm of a
// sequence must be unit. A function used before its return type is known
// (recursion or forward calls without an annotation) must declare one.
TypecheckResult typecheck(const Program& prog);

}  // namespace contracheck
