#include "pfisterlab/folang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "pfisterlab/error.hpp"

namespace pfl::fo {

// --- construction -----------------------------------------------------------

namespace {

TermPtr make_term(Term::Kind kind, std::string name, TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Term>(Term{kind, std::move(name), std::move(lhs), std::move(rhs)});
}

FormulaPtr make_formula(Formula::Kind kind, TermPtr a, TermPtr b, FormulaPtr lhs, FormulaPtr rhs, std::string v) {
  return std::make_shared<const Formula>(
      Formula{kind, std::move(a), std::move(b), std::move(lhs), std::move(rhs), std::move(v)});
}

}  // namespace

TermPtr var(std::string name) { return make_term(Term::Kind::Var, std::move(name), nullptr, nullptr); }
TermPtr zero() { return make_term(Term::Kind::Zero, "", nullptr, nullptr); }
TermPtr one() { return make_term(Term::Kind::One, "", nullptr, nullptr); }
TermPtr add(TermPtr a, TermPtr b) { return make_term(Term::Kind::Add, "", std::move(a), std::move(b)); }
TermPtr sub(TermPtr a, TermPtr b) { return make_term(Term::Kind::Sub, "", std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return make_term(Term::Kind::Mul, "", std::move(a), std::move(b)); }
TermPtr neg(TermPtr a) { return make_term(Term::Kind::Neg, "", std::move(a), nullptr); }

FormulaPtr eq(TermPtr a, TermPtr b) {
  return make_formula(Formula::Kind::Eq, std::move(a), std::move(b), nullptr, nullptr, "");
}
FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return make_formula(Formula::Kind::And, nullptr, nullptr, std::move(a), std::move(b), "");
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return make_formula(Formula::Kind::Or, nullptr, nullptr, std::move(a), std::move(b), "");
}
FormulaPtr negation(FormulaPtr a) {
  return make_formula(Formula::Kind::Not, nullptr, nullptr, std::move(a), nullptr, "");
}
FormulaPtr exists(std::string v, FormulaPtr body) {
  return make_formula(Formula::Kind::Exists, nullptr, nullptr, std::move(body), nullptr, std::move(v));
}
FormulaPtr forall(std::string v, FormulaPtr body) {
  return make_formula(Formula::Kind::Forall, nullptr, nullptr, std::move(body), nullptr, std::move(v));
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return eq(zero(), zero());
  FormulaPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return !a && !b;
  return a->kind == b->kind && a->name == b->name && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return a->kind == b->kind && a->var == b->var && equal(a->a, b->a) && equal(a->b, b->b) &&
         equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

namespace {

void term_vars(const TermPtr& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var && !bound.count(t->name)) out.insert(t->name);
  term_vars(t->lhs, bound, out);
  term_vars(t->rhs, bound, out);
}

void formula_vars(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::Eq:
      term_vars(f->a, bound, out);
      term_vars(f->b, bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      bound.insert(f->var);
      formula_vars(f->lhs, bound, out);
      return;
    default:
      formula_vars(f->lhs, bound, out);
      formula_vars(f->rhs, bound, out);
  }
}

}  // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  formula_vars(f, {}, out);
  return {out.begin(), out.end()};
}

std::size_t quantifier_count(const FormulaPtr& f) {
  if (!f) return 0;
  bool q = f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall;
  return (q ? 1 : 0) + quantifier_count(f->lhs) + quantifier_count(f->rhs);
}

// --- parsing ----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  FormulaPtr formula_all() {
    auto f = formula();
    expect_end();
    return f;
  }
  TermPtr term_all() {
    auto t = term();
    expect_end();
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, "position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (peek() != '\0') error("unexpected trailing input");
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_]))) error("expected a variable");
    while (pos_ < s_.size() &&
           (std::islower(static_cast<unsigned char>(s_[pos_])) || std::isdigit(static_cast<unsigned char>(s_[pos_]))))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  FormulaPtr formula() {
    auto f = conjunction();
    while (accept('|')) f = disj(f, conjunction());
    return f;
  }
  FormulaPtr conjunction() {
    auto f = unary();
    while (accept('&')) f = conj(f, unary());
    return f;
  }
  FormulaPtr unary() {
    char c = peek();
    if (c == '!') {
      ++pos_;
      return negation(unary());
    }
    if (c == 'E' || c == 'A') {
      ++pos_;
      std::string v = ident();
      expect('.');
      auto body = formula();
      return c == 'E' ? exists(v, body) : forall(v, body);
    }
    if (c == '(' && !parenthesized_term()) {
      ++pos_;
      auto f = formula();
      expect(')');
      return f;
    }
    auto a = term();
    expect('=');
    auto b = term();
    return eq(a, b);
  }
  // At '(' in formula position: a term iff the matching ')' is followed by
  // '=' or a term operator.
  bool parenthesized_term() {
    int depth = 0;
    for (std::size_t i = pos_; i < s_.size(); ++i) {
      if (s_[i] == '(') ++depth;
      else if (s_[i] == ')' && --depth == 0) {
        std::size_t j = i + 1;
        while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
        return j < s_.size() && (s_[j] == '=' || s_[j] == '+' || s_[j] == '-' || s_[j] == '*');
      }
    }
    return false;
  }

  TermPtr term() {
    auto t = product();
    for (;;) {
      if (accept('+')) t = add(t, product());
      else if (accept('-')) t = sub(t, product());
      else return t;
    }
  }
  TermPtr product() {
    auto t = factor();
    while (accept('*')) t = mul(t, factor());
    return t;
  }
  TermPtr factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return neg(factor());
    }
    if (c == '(') {
      ++pos_;
      auto t = term();
      expect(')');
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("only the constants 0 and 1");
      if (c == '0') return zero();
      if (c == '1') return one();
      --pos_;
      error("only the constants 0 and 1");
    }
    return var(ident());
  }
};

// Binding strength; larger binds tighter.
int term_level(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Add:
    case Term::Kind::Sub: return 1;
    case Term::Kind::Mul: return 2;
    case Term::Kind::Neg: return 3;
    default: return 4;
  }
}

std::string print_term(const TermPtr& t, int need) {
  std::string s;
  switch (t->kind) {
    case Term::Kind::Var: s = t->name; break;
    case Term::Kind::Zero: s = "0"; break;
    case Term::Kind::One: s = "1"; break;
    case Term::Kind::Add: s = print_term(t->lhs, 1) + " + " + print_term(t->rhs, 2); break;
    case Term::Kind::Sub: s = print_term(t->lhs, 1) + " - " + print_term(t->rhs, 2); break;
    case Term::Kind::Mul: s = print_term(t->lhs, 2) + "*" + print_term(t->rhs, 3); break;
    case Term::Kind::Neg: s = "-" + print_term(t->lhs, 3); break;
  }
  return term_level(t) < need ? "(" + s + ")" : s;
}

int formula_level(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 0;
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    case Formula::Kind::Eq: return 4;
  }
  return 4;
}

std::string print_formula(const FormulaPtr& f, int need) {
  std::string s;
  switch (f->kind) {
    case Formula::Kind::Eq: s = print_term(f->a, 0) + " = " + print_term(f->b, 0); break;
    case Formula::Kind::Or: s = print_formula(f->lhs, 1) + " | " + print_formula(f->rhs, 2); break;
    case Formula::Kind::And: s = print_formula(f->lhs, 2) + " & " + print_formula(f->rhs, 3); break;
    case Formula::Kind::Not: s = "!" + print_formula(f->lhs, 5); break;
    case Formula::Kind::Exists: s = "E " + f->var + ". " + print_formula(f->lhs, 0); break;
    case Formula::Kind::Forall: s = "A " + f->var + ". " + print_formula(f->lhs, 0); break;
  }
  return formula_level(f) < need ? "(" + s + ")" : s;
}

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).formula_all(); }
TermPtr parse_term(std::string_view text) { return Parser(text).term_all(); }
std::string print(const FormulaPtr& f) { return print_formula(f, 0); }
std::string print(const TermPtr& t) { return print_term(t, 0); }

// --- naive evaluation -------------------------------------------------------

namespace {

// Variables resolved to slots so enumeration does not touch strings.
struct SlotTerm {
  Term::Kind kind;
  int slot = -1;
  std::unique_ptr<SlotTerm> lhs, rhs;
};
struct SlotFormula {
  Formula::Kind kind;
  std::unique_ptr<SlotTerm> a, b;
  std::unique_ptr<SlotFormula> lhs, rhs;
  int slot = -1;
};

class Resolver {
 public:
  explicit Resolver(const Assignment& free) {
    for (const auto& [name, value] : free) {
      scope_[name].push_back(static_cast<int>(values.size()));
      values.push_back(value);
    }
  }
  std::vector<FqElem> values;

  std::unique_ptr<SlotTerm> term(const TermPtr& t) {
    auto out = std::make_unique<SlotTerm>();
    out->kind = t->kind;
    if (t->kind == Term::Kind::Var) {
      auto it = scope_.find(t->name);
      if (it == scope_.end() || it->second.empty())
        fail(ErrorKind::UnboundVariable, "variable '" + t->name + "' has no value");
      out->slot = it->second.back();
    }
    if (t->lhs) out->lhs = term(t->lhs);
    if (t->rhs) out->rhs = term(t->rhs);
    return out;
  }
  std::unique_ptr<SlotFormula> formula(const FormulaPtr& f) {
    auto out = std::make_unique<SlotFormula>();
    out->kind = f->kind;
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) {
      out->slot = static_cast<int>(values.size());
      values.push_back(FqElem{0});
      scope_[f->var].push_back(out->slot);
      out->lhs = formula(f->lhs);
      scope_[f->var].pop_back();
      return out;
    }
    if (f->a) out->a = term(f->a);
    if (f->b) out->b = term(f->b);
    if (f->lhs) out->lhs = formula(f->lhs);
    if (f->rhs) out->rhs = formula(f->rhs);
    return out;
  }

 private:
  std::map<std::string, std::vector<int>> scope_;
};

FqElem eval_term(const SlotTerm& t, std::vector<FqElem>& env, const FiniteField& k) {
  switch (t.kind) {
    case Term::Kind::Var: return env[t.slot];
    case Term::Kind::Zero: return k.zero();
    case Term::Kind::One: return k.one();
    case Term::Kind::Add: return k.add(eval_term(*t.lhs, env, k), eval_term(*t.rhs, env, k));
    case Term::Kind::Sub: return k.sub(eval_term(*t.lhs, env, k), eval_term(*t.rhs, env, k));
    case Term::Kind::Mul: return k.mul(eval_term(*t.lhs, env, k), eval_term(*t.rhs, env, k));
    case Term::Kind::Neg: return k.neg(eval_term(*t.lhs, env, k));
  }
  return k.zero();
}

bool eval_formula(const SlotFormula& f, std::vector<FqElem>& env, const FiniteField& k) {
  switch (f.kind) {
    case Formula::Kind::Eq: return eval_term(*f.a, env, k) == eval_term(*f.b, env, k);
    case Formula::Kind::And: return eval_formula(*f.lhs, env, k) && eval_formula(*f.rhs, env, k);
    case Formula::Kind::Or: return eval_formula(*f.lhs, env, k) || eval_formula(*f.rhs, env, k);
    case Formula::Kind::Not: return !eval_formula(*f.lhs, env, k);
    case Formula::Kind::Exists:
      for (std::uint32_t code = 0; code < k.order(); ++code) {
        env[f.slot] = FqElem{code};
        if (eval_formula(*f.lhs, env, k)) return true;
      }
      return false;
    case Formula::Kind::Forall:
      for (std::uint32_t code = 0; code < k.order(); ++code) {
        env[f.slot] = FqElem{code};
        if (!eval_formula(*f.lhs, env, k)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool eval_naive(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k) {
  Resolver r(assignment);
  auto compiled = r.formula(f);
  return eval_formula(*compiled, r.values, k);
}

// --- existential solver -----------------------------------------------------

namespace {

struct Monomial {
  std::vector<std::uint8_t> exps;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};
using Poly = std::map<Monomial, FqElem>;

struct PolyRing {
  const FiniteField& k;
  std::size_t n;

  Poly constant(FqElem c) const {
    Poly p;
    if (!k.is_zero(c)) p[Monomial{std::vector<std::uint8_t>(n, 0)}] = c;
    return p;
  }
  Poly variable(std::size_t i) const {
    Monomial m{std::vector<std::uint8_t>(n, 0)};
    m.exps[i] = 1;
    return {{m, k.one()}};
  }
  void accumulate(Poly& p, const Monomial& m, FqElem c) const {
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
      it->second = k.add(it->second, c);
      if (k.is_zero(it->second)) p.erase(it);
    }
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly out = a;
    for (const auto& [m, c] : b) accumulate(out, m, c);
    return out;
  }
  Poly neg(const Poly& a) const {
    Poly out;
    for (const auto& [m, c] : a) out[m] = k.neg(c);
    return out;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Monomial m{ma.exps};
        for (std::size_t i = 0; i < n; ++i) m.exps[i] = static_cast<std::uint8_t>(m.exps[i] + mb.exps[i]);
        accumulate(out, m, k.mul(ca, cb));
      }
    return out;
  }
};

Poly compile(const PolyRing& ring, const TermPtr& t, const std::map<std::string, std::size_t>& index,
             const Assignment& free) {
  switch (t->kind) {
    case Term::Kind::Var: {
      if (auto it = index.find(t->name); it != index.end()) return ring.variable(it->second);
      auto f = free.find(t->name);
      if (f == free.end()) fail(ErrorKind::UnboundVariable, "variable '" + t->name + "' has no value");
      return ring.constant(f->second);
    }
    case Term::Kind::Zero: return {};
    case Term::Kind::One: return ring.constant(ring.k.one());
    case Term::Kind::Add: return ring.add(compile(ring, t->lhs, index, free), compile(ring, t->rhs, index, free));
    case Term::Kind::Sub:
      return ring.add(compile(ring, t->lhs, index, free), ring.neg(compile(ring, t->rhs, index, free)));
    case Term::Kind::Mul: return ring.mul(compile(ring, t->lhs, index, free), compile(ring, t->rhs, index, free));
    case Term::Kind::Neg: return ring.neg(compile(ring, t->lhs, index, free));
  }
  return {};
}

// A monomial restricted to the branching variables.
struct Part {
  FqElem coeff;
  std::vector<std::pair<std::size_t, std::uint8_t>> factors;  // (branch position, exponent)
};

struct Equation {
  std::vector<Part> constant;                 // no linear variable
  std::vector<std::vector<Part>> linear;      // coefficient of each linear variable
  std::size_t ready = 0;                      // branch depth after which it can be checked
};

class Solver {
 public:
  Solver(const FiniteField& k, std::vector<Equation> eqs, std::size_t branch, std::size_t lin)
      : k_(k), eqs_(std::move(eqs)), branch_(branch), lin_(lin), vals_(branch) {
    for (std::size_t i = 0; i < eqs_.size(); ++i)
      if (!has_linear(eqs_[i])) by_depth_[eqs_[i].ready].push_back(i);
  }

  bool solve() {
    if (!check_depth(0)) return false;
    return dfs(0);
  }

 private:
  const FiniteField& k_;
  std::vector<Equation> eqs_;
  std::size_t branch_, lin_;
  std::vector<FqElem> vals_;
  std::map<std::size_t, std::vector<std::size_t>> by_depth_;

  static bool has_linear(const Equation& e) {
    for (const auto& l : e.linear)
      if (!l.empty()) return true;
    return false;
  }
  FqElem value(const std::vector<Part>& parts) const {
    FqElem acc = k_.zero();
    for (const auto& p : parts) {
      FqElem term = p.coeff;
      for (auto [i, e] : p.factors)
        for (std::uint8_t j = 0; j < e; ++j) term = k_.mul(term, vals_[i]);
      acc = k_.add(acc, term);
    }
    return acc;
  }
  // Equations with every branching variable below `depth` assigned.
  bool check_depth(std::size_t depth) const {
    auto it = by_depth_.find(depth);
    if (it == by_depth_.end()) return true;
    for (auto i : it->second)
      if (!k_.is_zero(value(eqs_[i].constant))) return false;
    return true;
  }
  bool dfs(std::size_t depth) {
    if (depth == branch_) return linear_solvable();
    for (std::uint32_t code = 0; code < k_.order(); ++code) {
      vals_[depth] = FqElem{code};
      if (check_depth(depth + 1) && dfs(depth + 1)) return true;
    }
    return false;
  }
  bool linear_solvable() const {
    std::vector<std::vector<FqElem>> rows;
    for (const auto& e : eqs_) {
      if (!has_linear(e)) continue;
      std::vector<FqElem> row;
      for (const auto& l : e.linear) row.push_back(value(l));
      row.push_back(k_.neg(value(e.constant)));
      rows.push_back(std::move(row));
    }
    // Gaussian elimination; inconsistent iff a row reduces to 0 = nonzero.
    std::size_t r = 0;
    for (std::size_t col = 0; col < lin_ && r < rows.size(); ++col) {
      std::size_t piv = r;
      while (piv < rows.size() && k_.is_zero(rows[piv][col])) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      FqElem inv = k_.inv(rows[r][col]);
      for (auto& x : rows[r]) x = k_.mul(x, inv);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || k_.is_zero(rows[i][col])) continue;
        FqElem f = rows[i][col];
        for (std::size_t j = col; j <= lin_; ++j) rows[i][j] = k_.sub(rows[i][j], k_.mul(f, rows[r][j]));
      }
      ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
      if (!k_.is_zero(rows[i][lin_])) return false;
    return true;
  }
};

}  // namespace

bool eval_existential(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k, bool* supported) {
  auto unsupported = [&]() {
    if (supported) *supported = false;
    return false;
  };
  if (supported) *supported = true;
  std::vector<std::string> names;
  FormulaPtr body = f;
  while (body->kind == Formula::Kind::Exists) {
    if (std::find(names.begin(), names.end(), body->var) != names.end()) return unsupported();
    names.push_back(body->var);
    body = body->lhs;
  }
  std::vector<FormulaPtr> atoms;
  std::function<bool(const FormulaPtr&)> flatten = [&](const FormulaPtr& g) {
    if (g->kind == Formula::Kind::And) return flatten(g->lhs) && flatten(g->rhs);
    if (g->kind != Formula::Kind::Eq) return false;
    atoms.push_back(g);
    return true;
  };
  if (!flatten(body)) return unsupported();

  std::size_t n = names.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[names[i]] = i;
  PolyRing ring{k, n};
  std::vector<Poly> polys;
  for (const auto& a : atoms)
    polys.push_back(ring.add(compile(ring, a->a, index, assignment), ring.neg(compile(ring, a->b, index, assignment))));

  // Linear variables: degree <= 1 everywhere and never multiplied together.
  std::vector<bool> linear(n, false);
  for (std::size_t v = n; v-- > 0;) {
    bool ok = true;
    for (const auto& p : polys)
      for (const auto& [m, c] : p) {
        if (m.exps[v] > 1) ok = false;
        if (m.exps[v] == 1)
          for (std::size_t u = 0; u < n; ++u)
            if (u != v && linear[u] && m.exps[u] > 0) ok = false;
      }
    linear[v] = ok;
  }
  std::vector<std::size_t> branch_pos(n), lin_pos(n);
  std::size_t nb = 0, nl = 0;
  for (std::size_t v = 0; v < n; ++v) (linear[v] ? lin_pos[v] = nl++ : branch_pos[v] = nb++);

  std::vector<Equation> eqs;
  for (const auto& p : polys) {
    Equation e;
    e.linear.assign(nl, {});
    for (const auto& [m, c] : p) {
      Part part{c, {}};
      std::optional<std::size_t> lv;
      for (std::size_t v = 0; v < n; ++v) {
        if (m.exps[v] == 0) continue;
        if (linear[v]) lv = lin_pos[v];
        else {
          part.factors.emplace_back(branch_pos[v], m.exps[v]);
          e.ready = std::max(e.ready, branch_pos[v] + 1);
        }
      }
      (lv ? e.linear[*lv] : e.constant).push_back(std::move(part));
    }
    eqs.push_back(std::move(e));
  }
  return Solver(k, std::move(eqs), nb, nl).solve();
}

bool eval(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k) {
  bool supported = false;
  bool r = eval_existential(f, assignment, k, &supported);
  return supported ? r : eval_naive(f, assignment, k);
}

// --- the formula for S_c ----------------------------------------------------

namespace {

// b1 X + b2 in K[X]/(X^2 + (1-x)X + c).
struct Pair {
  TermPtr b1, b2;
};

TermPtr times(const TermPtr& a, const TermPtr& b) {
  if (!a) return b;
  if (!b) return a;
  return mul(a, b);
}

// (pX + r)(sX + u) = (ps(x-1) + pu + rs) X + (ru - ps c)
Pair etale_mul(const Pair& a, const Pair& b) {
  TermPtr ps = mul(a.b1, b.b1);
  return {add(add(mul(ps, sub(var("x"), one())), mul(a.b1, b.b2)), mul(a.b2, b.b1)),
          sub(mul(a.b2, b.b2), mul(ps, var("c")))};
}

Pair scale(const TermPtr& s, const Pair& a) {
  if (!s) return a;
  return {mul(s, a.b1), mul(s, a.b2)};
}

Pair pair_add(const std::optional<Pair>& acc, const Pair& a) {
  if (!acc) return a;
  return {add(acc->b1, a.b1), add(acc->b2, a.b2)};
}

std::string indexed(const char* stem, std::size_t i) { return stem + std::to_string(i); }

}  // namespace

FormulaPtr emit_s_formula(std::size_t fold, int variant) {
  if (fold < 1) fail(ErrorKind::PreconditionFailed, "fold must be at least 1");
  if (variant != 0 && variant != 2) fail(ErrorKind::PreconditionFailed, "variant must be 0 or 2");
  std::size_t n = std::size_t{1} << fold;
  std::vector<Pair> coords, cofactors;
  for (std::size_t j = 0; j < n; ++j) {
    coords.push_back({var(indexed("y", j)), var(indexed("z", j))});
    cofactors.push_back({var(indexed("g", j)), var(indexed("h", j))});
  }
  auto symbol = [](std::size_t i) { return var(indexed("a", i + 1)); };

  std::optional<Pair> form;
  if (variant == 0) {
    // coefficient j: product of -a_i over the bits 1 << (fold-1-i) set in j
    for (std::size_t j = 0; j < n; ++j) {
      TermPtr coeff;
      for (std::size_t i = 0; i < fold; ++i)
        if (j >> (fold - 1 - i) & 1) coeff = times(coeff, neg(symbol(i)));
      form = pair_add(form, scale(coeff, etale_mul(coords[j], coords[j])));
    }
  } else {
    // blocks u^2 + uw + a_k w^2 with u = v_j, w = v_{j + n/2}
    std::size_t blocks = n / 2;
    for (std::size_t j = 0; j < blocks; ++j) {
      TermPtr coeff;
      for (std::size_t i = 0; i + 1 < fold; ++i)
        if (j >> (fold - 2 - i) & 1) coeff = times(coeff, symbol(i));
      const Pair& u = coords[j];
      const Pair& w = coords[blocks + j];
      Pair ww = etale_mul(w, w);
      Pair block = pair_add(pair_add(etale_mul(u, u), etale_mul(u, w)), scale(symbol(fold - 1), ww));
      form = pair_add(form, scale(coeff, block));
    }
  }
  std::optional<Pair> combo;
  for (std::size_t j = 0; j < n; ++j) combo = pair_add(combo, etale_mul(cofactors[j], coords[j]));

  FormulaPtr body = conj_all({eq(form->b1, zero()), eq(form->b2, zero()), eq(combo->b1, zero()), eq(combo->b2, one())});
  for (std::size_t j = n; j-- > 0;) body = exists(indexed("h", j), body), body = exists(indexed("g", j), body);
  for (std::size_t j = n; j-- > 0;) body = exists(indexed("z", j), body), body = exists(indexed("y", j), body);
  return body;
}

}  // namespace pfl::fo
