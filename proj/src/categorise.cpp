#include "contracheck/categorise.hpp"

namespace contracheck {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NonConformance: return "non-conformance";
    case Verdict::NonConformanceElsewhere: return "non-conformance elsewhere";
    case Verdict::SubcontractWeakness: return "subcontract weakness";
    case Verdict::InvalidCounterexample: return "invalid counterexample";
    case Verdict::Discarded: return "discarded";
    case Verdict::NonConclusive: return "non-conclusive";
  }
  return "?";
}

Categorisation categorise(const Goal& goal, const ExecOutcome& std_outcome,
                          const ExecOutcome& giant_outcome) {
  if (std_outcome.kind == OutcomeKind::Failure) {
    if (std_outcome.fail_loc == goal.source)
      return {Verdict::NonConformance,
              "the checked execution violates this annotation: " + std_outcome.detail};
    return {Verdict::NonConformanceElsewhere,
            "the counterexample does not explain this goal, but execution violates " +
                ann_kind_name(std_outcome.fail_kind.kind) + " at " +
                std_outcome.fail_loc.to_string()};
  }

  bool std_normal = std_outcome.kind == OutcomeKind::Normal;

  switch (giant_outcome.kind) {
    case OutcomeKind::Failure:
      if (std_normal)
        return {Verdict::SubcontractWeakness,
                "normal execution satisfies all annotations, but with contract values " +
                    ann_kind_name(giant_outcome.fail_kind.kind) + " at " +
                    giant_outcome.fail_loc.to_string() + " fails"};
      if (std_outcome.kind == OutcomeKind::NonConclusive)
        return {Verdict::NonConclusive,
                "non-conformance or subcontract weakness: the standard execution was "
                "inconclusive (" +
                    std_outcome.to_string() + ") and the giant-step execution fails at " +
                    giant_outcome.fail_loc.to_string()};
      return {Verdict::NonConclusive, "standard execution: " + std_outcome.to_string() +
                                          "; giant-step execution: " +
                                          giant_outcome.to_string()};
    case OutcomeKind::Stuck:
      return {Verdict::InvalidCounterexample,
              "the counterexample contradicts the goal's premises: " + giant_outcome.detail};
    case OutcomeKind::Normal:
      return {Verdict::Discarded,
              "the counterexample satisfies the goal and refutes nothing"};
    default:
      return {Verdict::NonConclusive, "standard execution: " + std_outcome.to_string() +
                                          "; giant-step execution: " +
                                          giant_outcome.to_string()};
  }
}

}  // namespace contracheck
