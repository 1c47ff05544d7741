#include "contracheck/report.hpp"

#include <map>
#include <sstream>

#include "contracheck/pretty.hpp"

namespace contracheck {

namespace {

using nlohmann::ordered_json;

ordered_json loc_json(const SourceLoc& loc) {
  return ordered_json{{"file", loc.file}, {"line", loc.line}, {"column", loc.column}};
}

ordered_json kind_json(const AnnotationKind& k) {
  ordered_json j;
  j["name"] = ann_kind_name(k.kind);
  switch (k.kind) {
    case AnnKind::Precondition:
      j["call_site"] = loc_json(k.call_site);
      break;
    case AnnKind::Postcondition:
      j["function"] = k.function;
      break;
    case AnnKind::LoopInvariantInit:
    case AnnKind::LoopInvariantPreserved:
      j["index"] = k.index;
      if (!k.label.empty()) j["label"] = k.label;
      break;
    case AnnKind::Assertion:
      break;
  }
  return j;
}

ordered_json goal_json(const GoalResult& g, bool trace) {
  ordered_json j;
  j["id"] = g.goal.id;
  j["kind"] = kind_json(g.goal.kind);
  j["loc"] = loc_json(g.goal.source);
  j["formula"] = pretty(goal_formula(g.goal));
  j["status"] = goal_status_name(g.status);
  j["solver"] = ordered_json{{"status", solver_status_name(g.solver_status)},
                             {"detail", g.solver_detail},
                             {"ms", g.solve_ms}};
  if (g.categorisation) {
    j["verdict"] = verdict_name(g.categorisation->verdict);
    j["explanation"] = g.categorisation->explanation;
  }
  if (g.counterexample) {
    ordered_json ce = ordered_json::array();
    for (const auto& t : g.counterexample->triples)
      ce.push_back(ordered_json{{"var", t.var.name},
                                {"loc", loc_json(t.loc)},
                                {"value", t.value.to_string()}});
    j["counterexample"] = std::move(ce);
    if (!g.counterexample->complete) j["counterexample_complete"] = false;
  }
  if (g.std_outcome) j["std_outcome"] = g.std_outcome->to_string();
  if (g.giant_outcome) j["giant_outcome"] = g.giant_outcome->to_string();
  if (trace) {
    if (!g.std_trace.empty()) j["std_trace"] = g.std_trace;
    if (!g.giant_trace.empty()) j["giant_trace"] = g.giant_trace;
  }
  return j;
}

// What the goal checks, for humans: "postcondition of isqrt",
// "loop invariant I2 preserved", "precondition for the call at ...".
std::string describe_goal(const Goal& g) {
  const AnnotationKind& k = g.kind;
  switch (k.kind) {
    case AnnKind::Precondition:
      return "precondition (call at " + k.call_site.to_string() + ")";
    case AnnKind::Postcondition:
      return "postcondition of " + k.function;
    case AnnKind::LoopInvariantInit:
      return "loop invariant " + (k.label.empty() ? "#" + std::to_string(k.index) : k.label) +
             " initially holds";
    case AnnKind::LoopInvariantPreserved:
      return "loop invariant " + (k.label.empty() ? "#" + std::to_string(k.index) : k.label) +
             " preserved";
    case AnnKind::Assertion:
      return "assertion";
  }
  return "?";
}

std::string status_label(const GoalResult& g) {
  if (g.categorisation) return verdict_name(g.categorisation->verdict);
  return goal_status_name(g.status);
}

}  // namespace

ordered_json report_json(const RunResult& r) {
  ordered_json j;
  j["version"] = 1;
  j["files"] = r.config.files;
  j["meta"] = ordered_json{{"solver", r.config.solver},
                           {"timeout_s", r.config.timeout_s},
                           {"bound", r.config.bound.str()},
                           {"fuel", r.config.fuel},
                           {"wall_ms", r.wall_ms}};
  ordered_json errs = ordered_json::array();
  for (const auto& d : r.errors)
    errs.push_back(ordered_json{{"loc", loc_json(d.loc)}, {"code", d.code}, {"message", d.message}});
  j["errors"] = std::move(errs);
  ordered_json fns = ordered_json::array();
  for (const auto& f : r.functions) {
    ordered_json fj;
    fj["name"] = f.name;
    fj["file"] = f.file;
    ordered_json goals = ordered_json::array();
    for (const auto& g : f.goals) goals.push_back(goal_json(g, r.config.trace));
    fj["goals"] = std::move(goals);
    fns.push_back(std::move(fj));
  }
  j["functions"] = std::move(fns);
  return j;
}

std::string report_text(const RunResult& r) {
  std::ostringstream out;
  for (const auto& d : r.errors) out << d.to_string() << "\n";
  if (!r.compile_ok) return out.str();

  size_t total = 0, proved = 0;
  std::map<std::string, int> by_label;
  for (const auto& f : r.functions) {
    if (f.goals.empty()) continue;
    out << f.file << ": " << f.name << "\n";
    for (const auto& g : f.goals) {
      ++total;
      std::string label = status_label(g);
      ++by_label[label];
      if (g.status == GoalStatus::Proved) ++proved;
      out << "  [" << label << "] " << g.goal.id << ": " << describe_goal(g.goal);
      // A call to a function without an explicit precondition is checked
      // against "true" located at the call itself; naming the spot twice
      // would be noise.
      if (g.goal.kind.kind != AnnKind::Precondition || g.goal.kind.call_site != g.goal.source)
        out << " at " << g.goal.source.to_string();
      out << "\n";
      if (g.status == GoalStatus::Proved) continue;
      if (!g.solver_detail.empty() || g.status != GoalStatus::Categorised)
        out << "      solver: " << solver_status_name(g.solver_status)
            << (g.solver_detail.empty() ? "" : " — " + g.solver_detail) << "\n";
      if (g.counterexample && !g.counterexample->triples.empty()) {
        out << "      counterexample:";
        for (const auto& t : g.counterexample->triples)
          out << " " << t.var.name << " = " << t.value.to_string() << " at "
              << t.loc.to_string() << ";";
        out << "\n";
      }
      if (g.std_outcome) out << "      standard execution:   " << g.std_outcome->to_string() << "\n";
      if (g.giant_outcome) out << "      giant-step execution: " << g.giant_outcome->to_string() << "\n";
      if (g.categorisation) out << "      => " << g.categorisation->explanation << "\n";
      for (const auto& line : g.std_trace) out << "      std   | " << line << "\n";
      for (const auto& line : g.giant_trace) out << "      giant | " << line << "\n";
    }
  }
  out << total << " goal" << (total == 1 ? "" : "s");
  if (total > 0) {
    out << ":";
    bool first = true;
    for (const auto& [label, count] : by_label) {
      out << (first ? " " : ", ") << count << " " << label;
      first = false;
    }
  }
  out << "\n";
  return out.str();
}

}  // namespace contracheck
