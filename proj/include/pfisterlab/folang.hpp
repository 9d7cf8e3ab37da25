#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pfisterlab/finite_field.hpp"

namespace pfl::fo {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
  enum class Kind { Var, Zero, One, Add, Sub, Mul, Neg };
  Kind kind;
  std::string name;  // Var
  TermPtr lhs, rhs;  // rhs unused for Neg
};

struct Formula {
  enum class Kind { Eq, And, Or, Not, Exists, Forall };
  Kind kind;
  TermPtr a, b;          // Eq
  FormulaPtr lhs, rhs;   // And, Or; Not and quantifiers use lhs
  std::string var;       // quantifiers
};

TermPtr var(std::string name);
TermPtr zero();
TermPtr one();
TermPtr add(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr neg(TermPtr a);

FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr negation(FormulaPtr a);
FormulaPtr exists(std::string v, FormulaPtr body);
FormulaPtr forall(std::string v, FormulaPtr body);
// Left-nested conjunction; the empty list is 0 = 0.
FormulaPtr conj_all(const std::vector<FormulaPtr>& parts);

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::vector<std::string> free_variables(const FormulaPtr& f);
std::size_t quantifier_count(const FormulaPtr& f);

// Grammar: E v. / A v. quantifiers (scope extends right), | below & below !,
// atoms t = t; terms with + - (left associative) below * below unary -.
FormulaPtr parse(std::string_view text);
TermPtr parse_term(std::string_view text);
std::string print(const FormulaPtr& f);
std::string print(const TermPtr& t);

using Assignment = std::map<std::string, FqElem>;

// Tarskian semantics by enumerating every quantifier over the carrier.
bool eval_naive(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k);

// Existential prefix over a conjunction of equations: backtracking over the
// variables that occur nonlinearly, linear algebra for the rest.  Returns
// false from `supported` when the formula has another shape.
bool eval_existential(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k,
                      bool* supported = nullptr);

// eval_existential when the shape allows it, eval_naive otherwise.
bool eval(const FormulaPtr& f, const Assignment& assignment, const FiniteField& k);

// Existential formula in x, c, a1..ak stating that <<a1..ak]] has a zero over
// K[X]/(X^2+(1-x)X+c) whose coordinates generate the unit ideal.  `variant`
// is 0 (characteristic not 2, diagonal expansion) or 2 (block expansion).
FormulaPtr emit_s_formula(std::size_t fold, int variant);

}  // namespace pfl::fo
