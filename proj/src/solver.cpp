#include "contracheck/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <stdlib.h>
#include <string.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "contracheck/ast_ops.hpp"
#include "contracheck/smtlib.hpp"

namespace contracheck {

std::string solver_status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
    case SolverStatus::Error: return "error";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Formula evaluation over candidate assignments

// Raised when a candidate cannot be judged: division by zero, a quantifier
// range too wide to enumerate, or a term outside the searchable fragment.
struct EvalError {};

constexpr long long kQuantifierCap = 4096;

struct SearchEval {
  std::map<int, Value>* env;

  Value expr(const Expr& e) {
    return std::visit(
        [&](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return Value::integer(x.value);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return Value::boolean(x.value);
          } else if constexpr (std::is_same_v<T, UnitLit>) {
            return Value::unit();
          } else if constexpr (std::is_same_v<T, VarRef>) {
            auto it = env->find(x.var.id);
            if (it == env->end()) throw EvalError{};
            return it->second;
          } else if constexpr (std::is_same_v<T, Binary>) {
            Value a = expr(x.lhs), b = expr(x.rhs);
            switch (x.op) {
              case BinOp::Add: return Value::integer(a.as_int() + b.as_int());
              case BinOp::Sub: return Value::integer(a.as_int() - b.as_int());
              case BinOp::Mul: return Value::integer(a.as_int() * b.as_int());
              case BinOp::Div:
                if (b.as_int() == 0) throw EvalError{};
                return Value::integer(euclid_div(a.as_int(), b.as_int()));
              case BinOp::Mod:
                if (b.as_int() == 0) throw EvalError{};
                return Value::integer(euclid_mod(a.as_int(), b.as_int()));
              case BinOp::Eq: return Value::boolean(a == b);
              case BinOp::Ne: return Value::boolean(!(a == b));
              case BinOp::Lt: return Value::boolean(a.as_int() < b.as_int());
              case BinOp::Le: return Value::boolean(a.as_int() <= b.as_int());
              case BinOp::Gt: return Value::boolean(a.as_int() > b.as_int());
              case BinOp::Ge: return Value::boolean(a.as_int() >= b.as_int());
            }
            throw EvalError{};
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return Value::boolean(!expr(x.arg).as_bool());
          } else {
            throw EvalError{};  // effectful terms never reach the solver
          }
        },
        e->v);
  }

  bool formula(const Formula& f) {
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            Value v = expr(x.expr);
            if (!v.is_bool()) throw EvalError{};
            return v.as_bool();
          } else if constexpr (std::is_same_v<T, FNot>) {
            return !formula(x.arg);
          } else if constexpr (std::is_same_v<T, FAnd>) {
            return formula(x.lhs) && formula(x.rhs);
          } else if constexpr (std::is_same_v<T, FOr>) {
            return formula(x.lhs) || formula(x.rhs);
          } else if constexpr (std::is_same_v<T, FImplies>) {
            return !formula(x.lhs) || formula(x.rhs);
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            Int lo = expr(x.lo).as_int(), hi = expr(x.hi).as_int();
            if (hi - lo > kQuantifierCap) throw EvalError{};
            bool had = env->count(x.binder.id) > 0;
            Value saved = had ? (*env)[x.binder.id] : Value::unit();
            bool result = x.is_forall;
            for (Int k = lo; k < hi; ++k) {
              (*env)[x.binder.id] = Value::integer(k);
              bool b;
              try {
                b = formula(x.body);
              } catch (...) {
                if (had) (*env)[x.binder.id] = saved; else env->erase(x.binder.id);
                throw;
              }
              if (x.is_forall ? !b : b) {
                result = !x.is_forall;
                break;
              }
            }
            if (had) (*env)[x.binder.id] = saved; else env->erase(x.binder.id);
            return result;
          } else {
            throw EvalError{};  // quantified havocs never appear in premises
          }
        },
        f->v);
  }
};

// ---------------------------------------------------------------------------
// Interval reasoning used to justify Unsat answers

struct Interval {
  std::optional<Int> lo, hi;  // absent bound = unbounded

  static Interval exact(const Int& v) { return Interval{v, v}; }
  static Interval top() { return Interval{}; }
};

std::optional<Int> add_bound(const std::optional<Int>& a, const std::optional<Int>& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

Interval iv_add(const Interval& a, const Interval& b) {
  return Interval{add_bound(a.lo, b.lo), add_bound(a.hi, b.hi)};
}
Interval iv_neg(const Interval& a) {
  return Interval{a.hi ? std::optional<Int>(-*a.hi) : std::nullopt,
                  a.lo ? std::optional<Int>(-*a.lo) : std::nullopt};
}
Interval iv_mul(const Interval& a, const Interval& b) {
  if (!a.lo || !a.hi || !b.lo || !b.hi) return Interval::top();
  Int c[4] = {*a.lo * *b.lo, *a.lo * *b.hi, *a.hi * *b.lo, *a.hi * *b.hi};
  return Interval{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

struct IntervalPass {
  std::map<int, Interval> iv;
  bool changed = false;

  Interval of_expr(const Expr& e) {
    return std::visit(
        [&](const auto& x) -> Interval {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return Interval::exact(x.value);
          } else if constexpr (std::is_same_v<T, VarRef>) {
            auto it = iv.find(x.var.id);
            return it == iv.end() ? Interval::top() : it->second;
          } else if constexpr (std::is_same_v<T, Binary>) {
            switch (x.op) {
              case BinOp::Add: return iv_add(of_expr(x.lhs), of_expr(x.rhs));
              case BinOp::Sub: return iv_add(of_expr(x.lhs), iv_neg(of_expr(x.rhs)));
              case BinOp::Mul: return iv_mul(of_expr(x.lhs), of_expr(x.rhs));
              default: return Interval::top();
            }
          } else {
            return Interval::top();
          }
        },
        e->v);
  }

  void tighten_lo(int var, const std::optional<Int>& lo) {
    if (!lo) return;
    Interval& v = iv[var];
    if (!v.lo || *lo > *v.lo) {
      v.lo = lo;
      changed = true;
    }
  }
  void tighten_hi(int var, const std::optional<Int>& hi) {
    if (!hi) return;
    Interval& v = iv[var];
    if (!v.hi || *hi < *v.hi) {
      v.hi = hi;
      changed = true;
    }
  }

  // var <op> interval(other)
  void apply(int var, BinOp op, const Interval& o) {
    switch (op) {
      case BinOp::Eq:
        tighten_lo(var, o.lo);
        tighten_hi(var, o.hi);
        break;
      case BinOp::Lt: tighten_hi(var, o.hi ? std::optional<Int>(*o.hi - 1) : std::nullopt); break;
      case BinOp::Le: tighten_hi(var, o.hi); break;
      case BinOp::Gt: tighten_lo(var, o.lo ? std::optional<Int>(*o.lo + 1) : std::nullopt); break;
      case BinOp::Ge: tighten_lo(var, o.lo); break;
      default: break;
    }
  }

  static BinOp flip(BinOp op) {
    switch (op) {
      case BinOp::Lt: return BinOp::Gt;
      case BinOp::Le: return BinOp::Ge;
      case BinOp::Gt: return BinOp::Lt;
      case BinOp::Ge: return BinOp::Le;
      default: return op;
    }
  }

  void scan(const Formula& f) {
    const auto* atom = std::get_if<Atom>(&f->v);
    if (!atom) return;
    const auto* bin = std::get_if<Binary>(&atom->expr->v);
    if (!bin) return;
    if (bin->op == BinOp::Ne) return;
    const auto* lv = std::get_if<VarRef>(&bin->lhs->v);
    const auto* rv = std::get_if<VarRef>(&bin->rhs->v);
    if (lv) apply(lv->var.id, bin->op, of_expr(bin->rhs));
    if (rv) apply(rv->var.id, flip(bin->op), of_expr(bin->lhs));
  }

  void run(const std::vector<Formula>& premises) {
    for (int round = 0; round < 16; ++round) {
      changed = false;
      for (const auto& p : premises) scan(p);
      if (!changed) break;
    }
  }
};

// ---------------------------------------------------------------------------
// The search itself

struct VarSlot {
  int id = 0;
  Ty type = Ty::Int;
  Expr forced;                // premise var = t pins the value
  std::vector<int> ready;     // premises fully assigned once this var is set
};

struct BuiltinSearch {
  const Goal& g;
  Int bound;
  long long budget;

  std::map<int, Value> env;
  SearchEval eval{&env};
  std::vector<VarSlot> slots;
  std::vector<int> closed_premises;
  int conclusion_pos = -1;  // position whose assignment makes the conclusion closed
  std::optional<bool> concl_val;
  bool saw_eval_error = false;
  bool out_of_budget = false;

  bool step() {
    if (--budget < 0) {
      out_of_budget = true;
      return false;
    }
    return true;
  }

  bool check_premise(const Formula& p) {
    if (!step()) return false;
    try {
      return eval.formula(p);
    } catch (EvalError&) {
      saw_eval_error = true;
      return false;
    }
  }

  // Evaluates the conclusion once all its variables are set. A true
  // conclusion kills the branch (we need premises /\ not conclusion).
  bool conclusion_allows_model() {
    if (!step()) return false;
    try {
      concl_val = eval.formula(g.conclusion);
    } catch (EvalError&) {
      saw_eval_error = true;
      return false;
    }
    return !*concl_val;
  }

  bool try_value(size_t pos, const Value& v) {
    const VarSlot& slot = slots[pos];
    env[slot.id] = v;
    if (!step()) return false;
    for (int pi : slot.ready) {
      if (!check_premise(g.premises[pi])) {
        env.erase(slot.id);
        return false;
      }
      if (out_of_budget) return false;
    }
    if (int(pos) == conclusion_pos && !conclusion_allows_model()) {
      env.erase(slot.id);
      return false;
    }
    if (dfs(pos + 1)) return true;
    env.erase(slot.id);
    return false;
  }

  bool dfs(size_t pos) {
    if (out_of_budget) return false;
    if (pos == slots.size()) return concl_val.has_value() && !*concl_val;
    const VarSlot& slot = slots[pos];
    if (slot.forced) {
      Value v = Value::unit();
      try {
        if (!step()) return false;
        v = eval.expr(slot.forced);
      } catch (EvalError&) {
        saw_eval_error = true;
        return false;
      }
      if (slot.type == Ty::Bool ? !v.is_bool() : !v.is_int()) return false;
      return try_value(pos, v);
    }
    if (slot.type == Ty::Bool) {
      if (try_value(pos, Value::boolean(false))) return true;
      if (out_of_budget) return false;
      return try_value(pos, Value::boolean(true));
    }
    for (Int k = 0; k <= bound; ++k) {
      if (try_value(pos, Value::integer(k))) return true;
      if (out_of_budget) return false;
      if (k > 0) {
        if (try_value(pos, Value::integer(-k))) return true;
        if (out_of_budget) return false;
      }
    }
    return false;
  }
};

const VarRef* as_var(const Expr& e) { return std::get_if<VarRef>(&e->v); }

}  // namespace

SolverAnswer solve_builtin(const Goal& g, const Int& bound, long long max_steps) {
  SolverAnswer ans;
  ans.detail = "builtin";

  BuiltinSearch search{g, bound, max_steps};

  // Only variables the formulas mention take part in the search; the rest
  // can be anything and default to 0/false in the reported model.
  std::set<int> relevant;
  std::vector<std::set<int>> premise_vars;
  premise_vars.reserve(g.premises.size());
  for (const auto& p : g.premises) {
    std::set<int> fv = free_vars(p);
    relevant.insert(fv.begin(), fv.end());
    premise_vars.push_back(std::move(fv));
  }
  std::set<int> concl_vars = free_vars(g.conclusion);
  relevant.insert(concl_vars.begin(), concl_vars.end());

  std::map<int, int> position;  // var id -> slot index
  for (const auto& entry : g.var_map) {
    if (!relevant.count(entry.logic_var.id)) continue;
    position[entry.logic_var.id] = int(search.slots.size());
    search.slots.push_back(VarSlot{entry.logic_var.id, entry.type, nullptr, {}});
    relevant.erase(entry.logic_var.id);
  }
  if (!relevant.empty()) {
    // Free variables outside the variable map: the goal is not closed, so
    // no finite search can be trusted.
    ans.status = SolverStatus::Error;
    ans.detail = "goal mentions variables outside its variable map";
    return ans;
  }

  auto ready_at = [&](const std::set<int>& vars) -> int {
    int pos = -1;
    for (int id : vars) pos = std::max(pos, position.at(id));
    return pos;
  };
  for (size_t i = 0; i < g.premises.size(); ++i) {
    int pos = ready_at(premise_vars[i]);
    if (pos < 0)
      search.closed_premises.push_back(int(i));
    else
      search.slots[pos].ready.push_back(int(i));
  }
  search.conclusion_pos = ready_at(concl_vars);

  // A premise of the shape v = t (or t = v) where t only uses variables
  // assigned before v leaves a single candidate value for v.
  for (size_t i = 0; i < g.premises.size(); ++i) {
    const auto* atom = std::get_if<Atom>(&g.premises[i]->v);
    if (!atom) continue;
    const auto* bin = std::get_if<Binary>(&atom->expr->v);
    if (!bin || bin->op != BinOp::Eq) continue;
    int pos = ready_at(premise_vars[i]);
    if (pos < 0) continue;
    VarSlot& slot = search.slots[pos];
    if (slot.forced) continue;
    const VarRef* lv = as_var(bin->lhs);
    const VarRef* rv = as_var(bin->rhs);
    if (lv && lv->var.id == slot.id && free_vars(bin->rhs).count(slot.id) == 0)
      slot.forced = bin->rhs;
    else if (rv && rv->var.id == slot.id && free_vars(bin->lhs).count(slot.id) == 0)
      slot.forced = bin->lhs;
  }

  // Premises and conclusion with no variables at all decide the goal
  // upfront.
  bool closed_ok = true;
  for (int pi : search.closed_premises) {
    if (!search.check_premise(g.premises[pi])) {
      if (search.saw_eval_error || search.out_of_budget) {
        ans.status = SolverStatus::Unknown;
        ans.detail = "could not evaluate a closed premise";
        return ans;
      }
      closed_ok = false;
      break;
    }
  }
  if (!closed_ok) {
    ans.status = SolverStatus::Unsat;  // an impossible premise proves the goal
    return ans;
  }
  if (search.conclusion_pos < 0) {
    if (!search.conclusion_allows_model()) {
      if (search.saw_eval_error || search.out_of_budget) {
        ans.status = SolverStatus::Unknown;
        ans.detail = "could not evaluate the conclusion";
      } else {
        ans.status = SolverStatus::Unsat;
      }
      return ans;
    }
  }

  bool found = search.dfs(0);

  if (found) {
    ans.status = SolverStatus::Sat;
    SymbolTable t = goal_symbols(g);
    for (size_t i = 0; i < g.var_map.size(); ++i) {
      const auto& entry = g.var_map[i];
      auto it = search.env.find(entry.logic_var.id);
      Value v = it != search.env.end()
                    ? it->second
                    : (entry.type == Ty::Bool ? Value::boolean(false) : Value::integer(0));
      ans.model.emplace_back(t.names[i], v);
    }
    return ans;
  }

  if (search.out_of_budget) {
    ans.status = SolverStatus::Unknown;
    ans.detail = "search budget exhausted";
    return ans;
  }
  if (search.saw_eval_error) {
    ans.status = SolverStatus::Unknown;
    ans.detail = "search incomplete: some candidates could not be evaluated";
    return ans;
  }

  // Exhausted without a model. That proves the goal only if the premises
  // confine every searched variable to the searched range.
  IntervalPass intervals;
  intervals.run(g.premises);
  for (const auto& slot : search.slots) {
    if (slot.type == Ty::Bool || slot.forced) continue;
    auto it = intervals.iv.find(slot.id);
    if (it == intervals.iv.end() || !it->second.lo || !it->second.hi ||
        *it->second.lo < -bound || *it->second.hi > bound) {
      ans.status = SolverStatus::Unknown;
      ans.detail = "no model within bound " + bound.str();
      return ans;
    }
  }
  ans.status = SolverStatus::Unsat;
  return ans;
}

// ---------------------------------------------------------------------------
// External solver processes

namespace {

void ignore_sigpipe() {
  static bool done = false;
  if (!done) {
    signal(SIGPIPE, SIG_IGN);
    done = true;
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

SolverAnswer solve_external(const std::string& cmd, const std::string& script, double timeout_s) {
  SolverAnswer ans;
  ans.status = SolverStatus::Error;
  if (timeout_s <= 0) {
    ans.status = SolverStatus::Timeout;
    ans.detail = "timeout elapsed before the solver started";
    return ans;
  }
  ignore_sigpipe();

  std::string command = cmd;
  std::string tmppath;
  bool via_file = command.find("{file}") != std::string::npos;
  if (via_file) {
    char path[] = "/tmp/contracheck-query-XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) {
      ans.detail = std::string("cannot create temp file: ") + strerror(errno);
      return ans;
    }
    size_t off = 0;
    while (off < script.size()) {
      ssize_t n = write(fd, script.data() + off, script.size() - off);
      if (n <= 0) break;
      off += size_t(n);
    }
    close(fd);
    tmppath = path;
    size_t p;
    while ((p = command.find("{file}")) != std::string::npos) command.replace(p, 6, tmppath);
  }

  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) || pipe(out_pipe) || pipe(err_pipe)) {
    ans.detail = "pipe failed";
    if (!tmppath.empty()) unlink(tmppath.c_str());
    return ans;
  }

  pid_t pid = fork();
  if (pid < 0) {
    ans.detail = "fork failed";
    if (!tmppath.empty()) unlink(tmppath.c_str());
    return ans;
  }
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);

  const std::string& stdin_data = via_file ? std::string() : script;
  size_t written = 0;
  bool writing = !via_file && !stdin_data.empty();
  if (!writing) {
    close(in_pipe[1]);
    in_pipe[1] = -1;
  }

  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);
  if (in_pipe[1] >= 0) fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  std::string out_buf, err_buf;
  bool out_open = true, err_open = true;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
  bool timed_out = false;

  while (out_open || err_open || writing) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    int wait_ms = int(std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
    wait_ms = std::max(1, std::min(wait_ms, 200));

    struct pollfd fds[3];
    int nfds = 0;
    int out_idx = -1, err_idx = -1, in_idx = -1;
    if (out_open) {
      out_idx = nfds;
      fds[nfds++] = {out_pipe[0], POLLIN, 0};
    }
    if (err_open) {
      err_idx = nfds;
      fds[nfds++] = {err_pipe[0], POLLIN, 0};
    }
    if (writing) {
      in_idx = nfds;
      fds[nfds++] = {in_pipe[1], POLLOUT, 0};
    }
    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    char buf[4096];
    if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t n = read(out_pipe[0], buf, sizeof buf);
      if (n > 0)
        out_buf.append(buf, size_t(n));
      else if (n == 0 || (n < 0 && errno != EAGAIN))
        out_open = false;
    }
    if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t n = read(err_pipe[0], buf, sizeof buf);
      if (n > 0)
        err_buf.append(buf, size_t(n));
      else if (n == 0 || (n < 0 && errno != EAGAIN))
        err_open = false;
    }
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = write(in_pipe[1], stdin_data.data() + written, stdin_data.size() - written);
      if (n > 0) written += size_t(n);
      if ((n < 0 && errno != EAGAIN) || written == stdin_data.size()) {
        close(in_pipe[1]);
        in_pipe[1] = -1;
        writing = false;
      }
    }
  }

  if (in_pipe[1] >= 0) close(in_pipe[1]);
  close(out_pipe[0]);
  close(err_pipe[0]);

  int status = 0;
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    if (!tmppath.empty()) unlink(tmppath.c_str());
    ans.status = SolverStatus::Timeout;
    std::ostringstream d;
    d << "killed after " << timeout_s << "s";
    ans.detail = d.str();
    return ans;
  }
  waitpid(pid, &status, 0);
  if (!tmppath.empty()) unlink(tmppath.c_str());

  // The first recognisable line is the verdict; anything after it may hold
  // the model. Diagnostic lines such as (error ...) are skipped.
  std::istringstream lines(out_buf);
  std::string line, answer;
  size_t model_from = 0;
  while (std::getline(lines, line)) {
    std::string t = trim(line);
    if (t == "sat" || t == "unsat" || t == "unknown" || t == "timeout") {
      answer = t;
      model_from = size_t(lines.tellg()) == size_t(-1) ? out_buf.size() : size_t(lines.tellg());
      break;
    }
  }

  if (answer == "unsat") {
    ans.status = SolverStatus::Unsat;
    ans.detail = "unsat";
  } else if (answer == "sat") {
    ans.status = SolverStatus::Sat;
    ans.detail = "sat";
    ans.model = parse_model(out_buf.substr(model_from));
  } else if (answer == "unknown") {
    ans.status = SolverStatus::Unknown;
    ans.detail = "solver answered unknown";
  } else if (answer == "timeout") {
    ans.status = SolverStatus::Timeout;
    ans.detail = "solver reported a timeout";
  } else {
    ans.status = SolverStatus::Error;
    std::string head = trim(out_buf.substr(0, 200));
    std::string err = trim(err_buf.substr(0, 200));
    ans.detail = "unrecognised solver output";
    if (!head.empty()) ans.detail += ": " + head;
    if (!err.empty()) ans.detail += " | stderr: " + err;
    if (head.empty() && err.empty() && WIFEXITED(status))
      ans.detail += " (exit code " + std::to_string(WEXITSTATUS(status)) + ")";
  }
  return ans;
}

}  // namespace contracheck
