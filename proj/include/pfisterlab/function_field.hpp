#pragma once

#include <string>
#include <utility>

#include "pfisterlab/polynomial.hpp"

namespace pfl {

// Rational function field k(t).  Elements are reduced fractions with monic
// denominator, so structural equality is field equality.
template <FieldContext F>
class FunctionField {
 public:
  using Poly = typename Polynomials<F>::Elem;
  using Coeff = typename F::Elem;
  struct Elem {
    Poly num;
    Poly den;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  explicit FunctionField(F base) : polys_(std::move(base), "t") {}

  const F& base() const { return polys_.base(); }
  const Polynomials<F>& polys() const { return polys_; }
  long characteristic() const { return base().characteristic(); }

  Elem zero() const { return {Poly{}, polys_.one()}; }
  Elem one() const { return {polys_.one(), polys_.one()}; }
  Elem from_int(long n) const { return {polys_.from_int(n), polys_.one()}; }
  Elem from_base(const Coeff& c) const { return {polys_.constant(c), polys_.one()}; }
  Elem from_poly(const Poly& p) const { return {p, polys_.one()}; }
  Elem t() const { return {polys_.x(), polys_.one()}; }

  // num/den reduced to canonical form.
  Elem make(const Poly& num, const Poly& den) const {
    if (den.empty()) fail(ErrorKind::DivisionByZeroOrNonUnit, "zero denominator in " + descriptor());
    if (num.empty()) return zero();
    Poly g = polys_.gcd(num, den);
    Poly n = polys_.div(num, g), d = polys_.div(den, g);
    Coeff li = base().inv(polys_.leading(d));
    return {polys_.scale(n, li), polys_.scale(d, li)};
  }

  Elem add(const Elem& a, const Elem& b) const {
    if (polys_.equal(a.den, b.den)) return make(polys_.add(a.num, b.num), a.den);
    return make(polys_.add(polys_.mul(a.num, b.den), polys_.mul(b.num, a.den)), polys_.mul(a.den, b.den));
  }
  Elem neg(const Elem& a) const { return {polys_.neg(a.num), a.den}; }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.num.empty() || b.num.empty()) return zero();
    return make(polys_.mul(a.num, b.num), polys_.mul(a.den, b.den));
  }
  Elem inv(const Elem& a) const {
    if (a.num.empty()) fail(ErrorKind::DivisionByZeroOrNonUnit, "inverse of zero in " + descriptor());
    return make(a.den, a.num);
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    return {polys_.pow(a.num, static_cast<unsigned long>(e)), polys_.pow(a.den, static_cast<unsigned long>(e))};
  }
  Elem scale(const Elem& a, const Coeff& c) const { return mul(a, from_base(c)); }

  bool is_zero(const Elem& a) const { return a.num.empty(); }
  bool is_one(const Elem& a) const { return polys_.is_one(a.num) && polys_.is_one(a.den); }
  bool equal(const Elem& a, const Elem& b) const {
    return polys_.equal(a.num, b.num) && polys_.equal(a.den, b.den);
  }
  bool is_constant(const Elem& a) const { return polys_.is_constant(a.num) && polys_.is_constant(a.den); }
  bool is_polynomial(const Elem& a) const { return polys_.is_one(a.den); }
  Coeff constant_value(const Elem& a) const { return polys_.coeff(a.num, 0); }

  std::string to_string(const Elem& a) const {
    std::string n = polys_.to_string(a.num);
    if (polys_.is_one(a.den)) return n;
    std::string d = polys_.to_string(a.den);
    bool simple_num = polys_.degree(a.num) <= 0 && n.find('/') == std::string::npos && n.find('+') == std::string::npos;
    if (!simple_num) n = "(" + n + ")";
    if (polys_.degree(a.den) >= 1 && (d.find_first_of("+-*") != std::string::npos)) d = "(" + d + ")";
    return n + "/" + d;
  }
  std::string descriptor() const { return base().descriptor() + "(t)"; }

  bool operator==(const FunctionField& other) const { return polys_ == other.polys_; }

 private:
  Polynomials<F> polys_;
};

}  // namespace pfl
