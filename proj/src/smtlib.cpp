#include "contracheck/smtlib.hpp"

#include <cctype>
#include <sstream>

#include "contracheck/ast_ops.hpp"

namespace contracheck {

namespace {

// SMT-LIB simple symbols may contain letters, digits and a fixed set of
// punctuation ('!' among them) but must not start with a digit. Source
// identifiers can also contain primes, which force the quoted form.
bool needs_quoting(const std::string& name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return true;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!' || c == '.' ||
        c == '-')
      continue;
    return true;
  }
  return false;
}

std::string smt_symbol(const std::string& name) {
  return needs_quoting(name) ? "|" + name + "|" : name;
}

std::string sort_name(Ty t) { return t == Ty::Bool ? "Bool" : "Int"; }

struct TermPrinter {
  const std::map<int, std::string>& names;
  int expand_limit;
  std::ostringstream out;
  std::map<int, std::string> bound;  // range-quantifier binders in scope

  void var(const Ident& v) {
    auto b = bound.find(v.id);
    if (b != bound.end()) {
      out << smt_symbol(b->second);
      return;
    }
    auto it = names.find(v.id);
    // Unmapped variables keep their source name; emit_query never produces
    // them, but test callers may render open formulas.
    out << smt_symbol(it != names.end() ? it->second : v.name);
  }

  void expr(const Expr& e) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            if (x.value < 0)
              out << "(- " << -x.value << ")";
            else
              out << x.value;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            out << (x.value ? "true" : "false");
          } else if constexpr (std::is_same_v<T, VarRef>) {
            var(x.var);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const char* op = nullptr;
            bool negate = false;
            switch (x.op) {
              case BinOp::Add: op = "+"; break;
              case BinOp::Sub: op = "-"; break;
              case BinOp::Mul: op = "*"; break;
              case BinOp::Div: op = "div"; break;
              case BinOp::Mod: op = "mod"; break;
              case BinOp::Eq: op = "="; break;
              case BinOp::Ne: op = "="; negate = true; break;
              case BinOp::Lt: op = "<"; break;
              case BinOp::Le: op = "<="; break;
              case BinOp::Gt: op = ">"; break;
              case BinOp::Ge: op = ">="; break;
            }
            if (negate) out << "(not ";
            out << "(" << op << " ";
            expr(x.lhs);
            out << " ";
            expr(x.rhs);
            out << ")";
            if (negate) out << ")";
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            out << "(not ";
            expr(x.arg);
            out << ")";
          } else {
            // Goal formulas contain only effect-free terms; anything else
            // indicates a broken invariant upstream.
            out << "unsupported-term";
          }
        },
        e->v);
  }

  // A bounded quantifier whose bounds are integer literals covering few
  // values is unrolled; solvers handle the resulting ground formula far
  // more predictably than a quantified one.
  bool try_expand(const QuantRange& q) {
    const auto* lo = std::get_if<IntLit>(&q.lo->v);
    const auto* hi = std::get_if<IntLit>(&q.hi->v);
    if (!lo || !hi) return false;
    if (hi->value - lo->value > expand_limit) return false;
    if (hi->value <= lo->value) {
      out << (q.is_forall ? "true" : "false");
      return true;
    }
    out << "(" << (q.is_forall ? "and" : "or");
    for (Int k = lo->value; k < hi->value; ++k) {
      Subst s;
      s.emplace(q.binder.id, mk_int(q.lo->loc, k));
      out << " ";
      formula(subst_formula(q.body, s));
    }
    out << ")";
    return true;
  }

  void formula(const Formula& f) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Atom>) {
            expr(x.expr);
          } else if constexpr (std::is_same_v<T, FNot>) {
            out << "(not ";
            formula(x.arg);
            out << ")";
          } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr> ||
                               std::is_same_v<T, FImplies>) {
            out << "(" << (std::is_same_v<T, FAnd> ? "and" : std::is_same_v<T, FOr> ? "or" : "=>")
                << " ";
            formula(x.lhs);
            out << " ";
            formula(x.rhs);
            out << ")";
          } else if constexpr (std::is_same_v<T, QuantRange>) {
            if (try_expand(x)) return;
            std::string b = x.binder.name + "!" + std::to_string(x.binder.id);
            out << "(" << (x.is_forall ? "forall" : "exists") << " ((" << smt_symbol(b)
                << " Int)) (" << (x.is_forall ? "=>" : "and") << " (and (<= ";
            expr(x.lo);
            out << " " << smt_symbol(b) << ") (< " << smt_symbol(b) << " ";
            expr(x.hi);
            out << ")) ";
            auto saved = bound.find(x.binder.id) != bound.end()
                             ? std::optional<std::string>(bound[x.binder.id])
                             : std::nullopt;
            bound[x.binder.id] = b;
            formula(x.body);
            if (saved)
              bound[x.binder.id] = *saved;
            else
              bound.erase(x.binder.id);
            out << "))";
          } else if constexpr (std::is_same_v<T, ForallLogic>) {
            out << "(forall (";
            for (size_t i = 0; i < x.binders.size(); ++i) {
              if (i) out << " ";
              out << "(";
              var(x.binders[i].logic_var);
              out << " " << sort_name(x.binders[i].type) << ")";
            }
            out << ") ";
            formula(x.body);
            out << ")";
          } else if constexpr (std::is_same_v<T, Check>) {
            formula(x.inner);
          }
        },
        f->v);
  }
};

}  // namespace

SymbolTable goal_symbols(const Goal& g) {
  SymbolTable t;
  for (const auto& entry : g.var_map) {
    std::string base = entry.logic_var.name;
    std::string name = base;
    int k = 1;
    while (t.index_of.count(name)) name = base + "!" + std::to_string(++k);
    t.index_of[name] = int(t.names.size());
    t.names.push_back(name);
    t.by_id[entry.logic_var.id] = name;
  }
  return t;
}

std::string formula_to_smt(const Formula& f, const std::map<int, std::string>& names,
                           int expand_limit) {
  TermPrinter p{names, expand_limit};
  p.formula(f);
  return p.out.str();
}

std::string emit_query(const Goal& g, int expand_limit) {
  SymbolTable t = goal_symbols(g);
  std::ostringstream out;
  out << "(set-logic ALL)\n";
  for (size_t i = 0; i < g.var_map.size(); ++i)
    out << "(declare-const " << smt_symbol(t.names[i]) << " " << sort_name(g.var_map[i].type)
        << ")\n";
  for (const auto& p : g.premises)
    out << "(assert " << formula_to_smt(p, t.by_id, expand_limit) << ")\n";
  out << "(assert (not " << formula_to_smt(g.conclusion, t.by_id, expand_limit) << "))\n";
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Model parsing

namespace {

// Minimal s-expression reader; model outputs are small, so simplicity wins.
struct SExp {
  bool is_list = false;
  std::string atom;
  std::vector<SExp> items;
};

struct SExpReader {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool read(SExp& out) {
    skip_ws();
    if (pos >= s.size()) return false;
    char c = s[pos];
    if (c == ')') {  // stray close: consume and fail this form
      ++pos;
      return false;
    }
    if (c == '(') {
      ++pos;
      out = SExp{true, "", {}};
      while (true) {
        skip_ws();
        if (pos >= s.size()) return true;  // unterminated: accept what we have
        if (s[pos] == ')') {
          ++pos;
          return true;
        }
        SExp child;
        if (!read(child)) return true;
        out.items.push_back(std::move(child));
      }
    }
    if (c == '|') {
      size_t end = s.find('|', pos + 1);
      if (end == std::string::npos) end = s.size();
      out = SExp{false, s.substr(pos + 1, end - pos - 1), {}};
      pos = std::min(end + 1, s.size());
      return true;
    }
    if (c == '"') {
      size_t end = pos + 1;
      while (end < s.size() && s[end] != '"') ++end;
      out = SExp{false, s.substr(pos, std::min(end + 1, s.size()) - pos), {}};
      pos = std::min(end + 1, s.size());
      return true;
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')' && s[pos] != ';')
      ++pos;
    out = SExp{false, s.substr(start, pos - start), {}};
    return true;
  }
};

bool is_numeral(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// A model value: a numeral, (- numeral), true or false.
bool read_value(const SExp& e, const std::string& sort, Value& out) {
  if (sort == "Int") {
    if (!e.is_list && is_numeral(e.atom)) {
      out = Value::integer(Int(e.atom));
      return true;
    }
    if (e.is_list && e.items.size() == 2 && !e.items[0].is_list && e.items[0].atom == "-" &&
        !e.items[1].is_list && is_numeral(e.items[1].atom)) {
      out = Value::integer(-Int(e.items[1].atom));
      return true;
    }
    return false;
  }
  if (sort == "Bool" && !e.is_list && (e.atom == "true" || e.atom == "false")) {
    out = Value::boolean(e.atom == "true");
    return true;
  }
  return false;
}

void collect_define_funs(const SExp& e, std::vector<std::pair<std::string, Value>>& out) {
  if (!e.is_list) return;
  // (define-fun name () Sort value)
  if (e.items.size() == 5 && !e.items[0].is_list && e.items[0].atom == "define-fun" &&
      !e.items[1].is_list && e.items[2].is_list && e.items[2].items.empty() &&
      !e.items[3].is_list) {
    Value v = Value::unit();
    if (read_value(e.items[4], e.items[3].atom, v)) out.emplace_back(e.items[1].atom, v);
    return;
  }
  for (const auto& child : e.items) collect_define_funs(child, out);
}

}  // namespace

std::vector<std::pair<std::string, Value>> parse_model(const std::string& text) {
  std::vector<std::pair<std::string, Value>> out;
  SExpReader r{text};
  SExp form;
  while (r.read(form)) collect_define_funs(form, out);
  return out;
}

}  // namespace contracheck
