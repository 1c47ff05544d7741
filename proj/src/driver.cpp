#include "contracheck/driver.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "contracheck/parser.hpp"
#include "contracheck/resolve.hpp"
#include "contracheck/smtlib.hpp"
#include "contracheck/wp.hpp"

namespace contracheck {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// A file that made it through the front end, plus its goals in declaration
// order. Kept alive for the whole run so worker threads can share it.
struct CompiledFile {
  std::string file;
  Program program;
  TypeInfo types;
};

SolverAnswer solve(const Goal& g, const RunConfig& cfg) {
  if (cfg.solver == "builtin") return solve_builtin(g, cfg.bound, cfg.solver_steps);
  return solve_external(cfg.solver, emit_query(g, cfg.expand_limit), cfg.timeout_s);
}

}  // namespace

std::string goal_status_name(GoalStatus s) {
  switch (s) {
    case GoalStatus::Proved: return "proved";
    case GoalStatus::Categorised: return "categorised";
    case GoalStatus::Unknown: return "unknown";
    case GoalStatus::Timeout: return "timeout";
    case GoalStatus::Error: return "error";
  }
  return "?";
}

bool RunResult::all_proved() const {
  for (const auto& f : functions)
    for (const auto& g : f.goals)
      if (g.status != GoalStatus::Proved) return false;
  return true;
}

int RunResult::exit_code() const {
  if (!compile_ok) return 2;
  return all_proved() ? 0 : 1;
}

GoalResult process_goal(const Program& prog, const TypeInfo& types, const Goal& goal,
                        const RunConfig& cfg) {
  GoalResult r;
  r.goal = goal;

  auto t0 = Clock::now();
  SolverAnswer ans = solve(goal, cfg);
  r.solve_ms = ms_since(t0);
  r.solver_status = ans.status;
  r.solver_detail = ans.detail;

  if (ans.status == SolverStatus::Unsat) {
    r.status = GoalStatus::Proved;
    return r;
  }

  // A model, even one attached to an "unknown", is worth executing; without
  // one all we can report is the solver's own answer.
  if (ans.model.empty()) {
    switch (ans.status) {
      case SolverStatus::Timeout: r.status = GoalStatus::Timeout; break;
      case SolverStatus::Error: r.status = GoalStatus::Error; break;
      default: r.status = GoalStatus::Unknown; break;
    }
    return r;
  }

  r.counterexample = model_to_ce(goal, ans.model);

  const FunctionDecl* f = prog.find_function(goal.function);
  if (!f) {  // cannot happen for goals produced by split_goals
    r.status = GoalStatus::Error;
    r.solver_detail = "goal references unknown function " + goal.function;
    return r;
  }

  ExecOptions opts;
  opts.fuel = cfg.fuel;
  opts.trace = cfg.trace;

  Oracle std_oracle(*r.counterexample);
  Interp std_interp(prog, types, ExecMode::Standard, opts);
  ExecResult std_run = std_interp.run(*f, &std_oracle);

  Oracle giant_oracle(*r.counterexample);
  Interp giant_interp(prog, types, ExecMode::GiantStep, opts);
  ExecResult giant_run = giant_interp.run(*f, &giant_oracle);

  r.std_outcome = std_run.outcome;
  r.giant_outcome = giant_run.outcome;
  if (cfg.trace) {
    r.std_trace = std::move(std_run.trace);
    r.giant_trace = std::move(giant_run.trace);
  }
  r.categorisation = categorise(goal, std_run.outcome, giant_run.outcome);
  r.status = GoalStatus::Categorised;
  return r;
}

RunResult run_verify_sources(const RunConfig& cfg,
                             const std::vector<std::pair<std::string, std::string>>& sources) {
  auto t0 = Clock::now();
  RunResult result;
  result.config = cfg;
  // The report lists what was actually verified, whether the texts came
  // from disk or from memory.
  result.config.files.clear();
  for (const auto& [name, text] : sources) result.config.files.push_back(name);

  std::vector<CompiledFile> units;
  for (const auto& [name, text] : sources) {
    CompiledFile unit;
    unit.file = name;
    try {
      Program raw = parse(text, name);
      ResolveResult rr = resolve(raw);
      if (!rr.ok()) {
        result.errors.insert(result.errors.end(), rr.errors.begin(), rr.errors.end());
        result.compile_ok = false;
        continue;
      }
      TypecheckResult tr = typecheck(rr.program);
      if (!tr.ok()) {
        result.errors.insert(result.errors.end(), tr.errors.begin(), tr.errors.end());
        result.compile_ok = false;
        continue;
      }
      unit.program = std::move(rr.program);
      unit.types = std::move(tr.info);
    } catch (const LexError& e) {
      result.errors.push_back({e.loc, "LexError", e.message});
      result.compile_ok = false;
      continue;
    } catch (const ParseError& e) {
      result.errors.push_back({e.loc, "ParseError", "expected " + e.expected + ", found " + e.found});
      result.compile_ok = false;
      continue;
    }
    units.push_back(std::move(unit));
  }

  if (!result.compile_ok) {
    result.wall_ms = ms_since(t0);
    return result;
  }

  // Lay out every goal up front so results land in deterministic order no
  // matter which worker finishes first.
  struct Slot {
    const CompiledFile* unit;
    Goal goal;
    size_t fn_index;
    size_t goal_index;
  };
  std::vector<Slot> slots;
  for (const auto& unit : units) {
    for (const auto& f : unit.program.functions) {
      if (!f.body) continue;  // contract-only: nothing to verify
      SplitResult sr = split_goals(unit.program, unit.types, f);
      for (const auto& d : sr.errors) result.errors.push_back(d);
      FunctionResult fr;
      fr.name = f.name.name;
      fr.file = unit.file;
      fr.goals.resize(sr.goals.size());
      size_t fn_index = result.functions.size();
      for (size_t i = 0; i < sr.goals.size(); ++i)
        slots.push_back({&unit, sr.goals[i], fn_index, i});
      result.functions.push_back(std::move(fr));
    }
  }

  size_t jobs = cfg.jobs > 0 ? size_t(cfg.jobs)
                             : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<size_t>(1, slots.size()));

  auto work = [&](std::atomic<size_t>& next) {
    for (size_t i = next.fetch_add(1); i < slots.size(); i = next.fetch_add(1)) {
      Slot& s = slots[i];
      result.functions[s.fn_index].goals[s.goal_index] =
          process_goal(s.unit->program, s.unit->types, s.goal, cfg);
    }
  };

  std::atomic<size_t> next{0};
  if (jobs <= 1) {
    work(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t i = 0; i < jobs; ++i) pool.emplace_back([&] { work(next); });
    for (auto& t : pool) t.join();
  }

  result.wall_ms = ms_since(t0);
  return result;
}

RunResult run_verify(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> sources;
  RunResult io_failed;
  io_failed.config = cfg;
  for (const auto& path : cfg.files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      io_failed.errors.push_back({SourceLoc{path, 0, 0}, "IoError", "cannot open file"});
      io_failed.compile_ok = false;
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    sources.emplace_back(path, buf.str());
  }
  if (!io_failed.compile_ok) return io_failed;
  return run_verify_sources(cfg, sources);
}

}  // namespace contracheck
