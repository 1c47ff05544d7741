#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contracheck/goal.hpp"

namespace contracheck {

// One observation of a candidate execution: program variable `var` holds
// `value` when control passes the program point `loc` (function entry, an
// assignment, a call, a loop). `var` may be the result pseudo-variable of a
// call (see result_ident()).
struct CeTriple {
  Ident var;
  SourceLoc loc;
  Value value;

  bool operator==(const CeTriple& o) const {
    return var == o.var && loc == o.loc && value == o.value;
  }
};

// A solver model translated back into program terms. `complete` is false
// when the model omitted or mistyped some variables of the goal.
struct CandidateCounterexample {
  std::vector<CeTriple> triples;  // sorted by location, ties in introduction order
  std::string origin_goal;
  bool complete = true;
};

// Maps a model (solver names -> values, as returned by a solver) onto the
// goal's variable map.
CandidateCounterexample model_to_ce(const Goal& g,
                                    const std::vector<std::pair<std::string, Value>>& model);

// Answers "which value does this variable take when execution passes this
// point the k-th time" from a counterexample. Each (variable, location)
// pair keeps its own query counter; when a repeat visit has no dedicated
// triple, the first one is reused and the fallback flag set.
class Oracle {
 public:
  explicit Oracle(const CandidateCounterexample& ce) : ce_(&ce) {}

  // The value for the next visit of (var, loc); empty when the
  // counterexample has nothing for that point.
  std::optional<Value> next_value(const Ident& var, const SourceLoc& loc);

  // Restarts all visit counters (a fresh execution attempt).
  void reset() { visits_.clear(); }

  bool used_fallback() const { return used_fallback_; }
  const CandidateCounterexample& ce() const { return *ce_; }

 private:
  const CandidateCounterexample* ce_;
  std::map<std::pair<int, std::string>, int> visits_;
  bool used_fallback_ = false;
};

}  // namespace contracheck
