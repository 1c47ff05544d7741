#pragma once

#include <string>

#include "contracheck/goal.hpp"
#include "contracheck/interp.hpp"

namespace contracheck {

// What a failed proof attempt means, decided by comparing a standard and a
// giant-step checked execution of the same counterexample.
enum class Verdict {
  NonConformance,           // execution violates exactly the checked annotation
  NonConformanceElsewhere,  // execution violates some other annotation
  SubcontractWeakness,      // a contract or invariant in the context is too weak
  InvalidCounterexample,    // the counterexample contradicts the goal's premises
  Discarded,                // the counterexample does not refute anything
  NonConclusive,            // neither execution could decide
};

std::string verdict_name(Verdict v);

struct Categorisation {
  Verdict verdict;
  std::string explanation;
};

// The decision ladder, total over all outcome combinations:
//   1. standard execution fails at the goal's own annotation -> non-conformance;
//      at any other annotation -> non-conformance elsewhere.
//   2. otherwise the giant-step outcome decides: a failure means a
//      subcontract weakness when the standard run completed normally (when
//      it was non-conclusive, the answer stays imprecise); stuck means the
//      counterexample was invalid; normal means it refutes nothing.
//   3. anything else is non-conclusive.
Categorisation categorise(const Goal& goal, const ExecOutcome& std_outcome,
                          const ExecOutcome& giant_outcome);

}  // namespace contracheck
