#pragma once

#include <optional>

#include "pfisterlab/factor.hpp"
#include "pfisterlab/finite_field.hpp"
#include "pfisterlab/function_field.hpp"
#include "pfisterlab/rational_field.hpp"

namespace pfl {

using QtField = FunctionField<RationalField>;
using FqtField = FunctionField<FiniteField>;

// Square tests and square roots in each supported field.
bool is_square(const RationalField& k, const Rational& a);
bool is_square(const FiniteField& k, FqElem a);
bool is_square(const FqtField& k, const FqtField::Elem& a);
bool is_square(const QtField& k, const QtField::Elem& a);
std::optional<Rational> sqrt(const RationalField& k, const Rational& a);
std::optional<FqElem> sqrt(const FiniteField& k, FqElem a);
std::optional<FqtField::Elem> sqrt(const FqtField& k, const FqtField::Elem& a);
std::optional<QtField::Elem> sqrt(const QtField& k, const QtField::Elem& a);

// Characteristic 2: x with x^2 + x = a, if any.
std::optional<FqElem> artin_schreier_root(const FiniteField& k, FqElem a);
std::optional<FqtField::Elem> artin_schreier_root(const FqtField& k, const FqtField::Elem& a);
// True iff a lies in {x^2 + x}.
bool artin_schreier_class(const FiniteField& k, FqElem a);
bool artin_schreier_class(const FqtField& k, const FqtField::Elem& a);

// X^2 + bX + c has no root in k.
bool quadratic_irreducible(const RationalField& k, const Rational& b, const Rational& c);
bool quadratic_irreducible(const FiniteField& k, FqElem b, FqElem c);
bool quadratic_irreducible(const FqtField& k, const FqtField::Elem& b, const FqtField::Elem& c);
bool quadratic_irreducible(const QtField& k, const QtField::Elem& b, const QtField::Elem& c);

int legendre(const Integer& a, const Integer& p);

}  // namespace pfl
