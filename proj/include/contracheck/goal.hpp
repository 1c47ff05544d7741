#pragma once

#include <string>
#include <vector>

#include "contracheck/ast.hpp"

namespace contracheck {

// One row of a goal's variable map: a logical variable of the goal formula,
// the program variable whose value it stands for, and the program point
// where that value is taken (function entry, an assignment, a call, a loop).
struct VarMapEntry {
  Ident logic_var;
  Ty type = Ty::Int;
  Ident program_var;
  SourceLoc site;
};

// An atomic proof obligation: premises -> conclusion, with enough metadata
// to point back at the annotation being proved and to translate solver
// models into executable counterexamples.
struct Goal {
  std::string id;        // stable: <function>:<kind-tag>:<ordinal>
  std::string function;  // enclosing function
  std::vector<Formula> premises;
  Formula conclusion;
  SourceLoc source;  // the annotation this goal checks
  AnnotationKind kind;
  std::vector<VarMapEntry> var_map;  // introduction order
};

// premises1 /\ ... /\ premisesN -> conclusion (just the conclusion when
// there are no premises).
Formula goal_formula(const Goal& g);

}  // namespace contracheck
