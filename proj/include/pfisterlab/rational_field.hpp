#pragma once

#include <string>

#include "pfisterlab/error.hpp"
#include "pfisterlab/integer.hpp"

namespace pfl {

class RationalField {
 public:
  using Elem = Rational;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const { return n; }
  Elem from_integer(const Integer& n) const { return Rational(n); }
  long characteristic() const { return 0; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) fail(ErrorKind::DivisionByZeroOrNonUnit, "division by zero in Q");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  std::string to_string(const Elem& a) const { return a.get_str(); }
  std::string descriptor() const { return "Q"; }
  bool operator==(const RationalField&) const { return true; }
};

}  // namespace pfl
