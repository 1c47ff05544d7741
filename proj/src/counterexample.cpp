#include "contracheck/counterexample.hpp"

#include <algorithm>

#include "contracheck/smtlib.hpp"

namespace contracheck {

CandidateCounterexample model_to_ce(const Goal& g,
                                    const std::vector<std::pair<std::string, Value>>& model) {
  CandidateCounterexample ce;
  ce.origin_goal = g.id;

  std::map<std::string, Value> values;
  for (const auto& [name, v] : model) values.emplace(name, v);

  SymbolTable t = goal_symbols(g);
  for (size_t i = 0; i < g.var_map.size(); ++i) {
    const VarMapEntry& entry = g.var_map[i];
    auto it = values.find(t.names[i]);
    if (it == values.end()) {
      ce.complete = false;
      continue;
    }
    bool well_typed = entry.type == Ty::Bool ? it->second.is_bool() : it->second.is_int();
    if (!well_typed) {
      ce.complete = false;
      continue;
    }
    ce.triples.push_back(CeTriple{entry.program_var, entry.site, it->second});
  }

  std::stable_sort(ce.triples.begin(), ce.triples.end(),
                   [](const CeTriple& a, const CeTriple& b) { return a.loc < b.loc; });
  return ce;
}

std::optional<Value> Oracle::next_value(const Ident& var, const SourceLoc& loc) {
  int k = visits_[{var.id, loc.to_string()}]++;
  int seen = 0;
  const CeTriple* first = nullptr;
  for (const auto& t : ce_->triples) {
    if (t.var.id != var.id || !(t.loc == loc)) continue;
    if (!first) first = &t;
    if (seen == k) return t.value;
    ++seen;
  }
  if (k > 0 && first) {
    // A later visit of a point the counterexample describes only once:
    // reuse the first value rather than giving up outright.
    used_fallback_ = true;
    return first->value;
  }
  return std::nullopt;
}

}  // namespace contracheck
