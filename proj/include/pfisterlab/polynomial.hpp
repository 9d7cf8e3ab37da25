#pragma once

#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pfisterlab/error.hpp"
#include "pfisterlab/field.hpp"
#include "pfisterlab/rational_field.hpp"

namespace pfl {

inline constexpr long kMinusInfinity = std::numeric_limits<long>::min();

// Univariate polynomials over a field context.  Coefficients are stored low to
// high with no trailing zeros, so the zero polynomial is the empty vector.
template <FieldContext F>
class Polynomials {
 public:
  using Coeff = typename F::Elem;
  using Elem = std::vector<Coeff>;

  explicit Polynomials(F base, std::string var = "t") : k_(std::move(base)), var_(std::move(var)) {}

  const F& base() const { return k_; }
  const std::string& variable() const { return var_; }
  long characteristic() const { return k_.characteristic(); }

  Elem zero() const { return {}; }
  Elem one() const { return {k_.one()}; }
  Elem from_int(long n) const { return constant(k_.from_int(n)); }
  Elem constant(const Coeff& c) const { return k_.is_zero(c) ? Elem{} : Elem{c}; }
  Elem x() const { return {k_.zero(), k_.one()}; }
  Elem monomial(const Coeff& c, std::size_t n) const {
    if (k_.is_zero(c)) return {};
    Elem r(n + 1, k_.zero());
    r[n] = c;
    return r;
  }

  long degree(const Elem& f) const { return f.empty() ? kMinusInfinity : static_cast<long>(f.size()) - 1; }
  Coeff leading(const Elem& f) const { return f.empty() ? k_.zero() : f.back(); }
  Coeff coeff(const Elem& f, std::size_t i) const { return i < f.size() ? f[i] : k_.zero(); }
  bool is_zero(const Elem& f) const { return f.empty(); }
  bool is_one(const Elem& f) const { return f.size() == 1 && k_.is_one(f[0]); }
  bool is_constant(const Elem& f) const { return f.size() <= 1; }
  bool equal(const Elem& a, const Elem& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!k_.equal(a[i], b[i])) return false;
    return true;
  }

  Elem normalize(Elem f) const {
    while (!f.empty() && k_.is_zero(f.back())) f.pop_back();
    return f;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), k_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k_.add(coeff(a, i), coeff(b, i));
    return normalize(std::move(r));
  }
  Elem neg(const Elem& a) const {
    Elem r(a.size(), k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k_.neg(a[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem scale(const Elem& a, const Coeff& c) const {
    if (k_.is_zero(c)) return {};
    Elem r(a.size(), k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k_.mul(a[i], c);
    return normalize(std::move(r));
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, k_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (k_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k_.add(r[i + j], k_.mul(a[i], b[j]));
    }
    return normalize(std::move(r));
  }
  // Only nonzero constants are units.
  Elem inv(const Elem& f) const {
    if (f.size() != 1) fail(ErrorKind::DivisionByZeroOrNonUnit, "polynomial " + to_string(f) + " is not a unit");
    return {k_.inv(f[0])};
  }
  Elem shift(const Elem& a, std::size_t n) const {
    if (a.empty()) return {};
    Elem r(n, k_.zero());
    r.insert(r.end(), a.begin(), a.end());
    return r;
  }
  Elem pow(Elem a, unsigned long e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    if (b.empty()) fail(ErrorKind::DivisionByZeroOrNonUnit, "polynomial division by zero");
    Elem r = a;
    if (r.size() < b.size()) return {Elem{}, r};
    Elem quo(r.size() - b.size() + 1, k_.zero());
    Coeff lead_inv = k_.inv(b.back());
    while (r.size() >= b.size()) {
      std::size_t s = r.size() - b.size();
      Coeff f = k_.mul(r.back(), lead_inv);
      quo[s] = f;
      for (std::size_t i = 0; i < b.size(); ++i) r[s + i] = k_.sub(r[s + i], k_.mul(f, b[i]));
      r.pop_back();
      r = normalize(std::move(r));
    }
    return {normalize(std::move(quo)), r};
  }
  Elem div(const Elem& a, const Elem& b) const { return divmod(a, b).first; }
  Elem mod(const Elem& a, const Elem& b) const { return divmod(a, b).second; }
  // Exact quotient; fails when b does not divide a.
  Elem exact_div(const Elem& a, const Elem& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) fail(ErrorKind::PreconditionFailed, "inexact polynomial division");
    return q;
  }
  bool divides(const Elem& b, const Elem& a) const { return mod(a, b).empty(); }

  Elem monic(const Elem& f) const { return f.empty() ? f : scale(f, k_.inv(f.back())); }

  Elem gcd(Elem a, Elem b) const {
    while (!b.empty()) {
      Elem r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  struct Bezout {
    Elem g, s, t;  // g = s*a + t*b, g monic
  };
  Bezout xgcd(const Elem& a, const Elem& b) const {
    Elem r0 = a, r1 = b, s0 = one(), s1 = {}, t0 = {}, t1 = one();
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Elem s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      Elem t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    Coeff li = k_.inv(r0.back());
    return {scale(r0, li), scale(s0, li), scale(t0, li)};
  }

  // Inverse of a modulo m; fails unless gcd(a, m) = 1.
  Elem inverse_mod(const Elem& a, const Elem& m) const {
    auto b = xgcd(mod(a, m), m);
    if (!is_one(b.g)) fail(ErrorKind::DivisionByZeroOrNonUnit, "polynomial not invertible modulo");
    return mod(b.s, m);
  }

  Elem mulmod(const Elem& a, const Elem& b, const Elem& m) const { return mod(mul(a, b), m); }
  template <class E>
  Elem powmod(Elem a, E e, const Elem& m) const {
    Elem r = mod(one(), m);
    a = mod(a, m);
    while (e > 0) {
      if (e % 2 == 1) r = mulmod(r, a, m);
      e /= 2;
      if (e > 0) a = mulmod(a, a, m);
    }
    return r;
  }

  Coeff eval(const Elem& f, const Coeff& x) const {
    Coeff r = k_.zero();
    for (std::size_t i = f.size(); i-- > 0;) r = k_.add(k_.mul(r, x), f[i]);
    return r;
  }
  // f(g) for polynomials f, g.
  Elem compose(const Elem& f, const Elem& g) const {
    Elem r;
    for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, g), constant(f[i]));
    return r;
  }
  Elem derivative(const Elem& f) const {
    if (f.size() <= 1) return {};
    Elem r(f.size() - 1, k_.zero());
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = k_.mul(k_.from_int(static_cast<long>(i)), f[i]);
    return normalize(std::move(r));
  }
  // t^n f(1/t); n must be at least deg f.
  Elem reverse(const Elem& f, std::size_t n) const {
    Elem r(n + 1, k_.zero());
    for (std::size_t i = 0; i < f.size(); ++i) r[n - i] = f[i];
    return normalize(std::move(r));
  }
  // Largest e with g^e | f (f nonzero, deg g >= 1).
  long multiplicity(Elem f, const Elem& g) const {
    long e = 0;
    while (true) {
      auto [q, r] = divmod(f, g);
      if (!r.empty()) return e;
      f = std::move(q);
      ++e;
    }
  }

  std::string to_string(const Elem& f) const {
    if (f.empty()) return "0";
    std::string out;
    for (std::size_t i = f.size(); i-- > 0;) {
      const Coeff& c = f[i];
      if (k_.is_zero(c)) continue;
      bool negative = false;
      std::string cs;
      if constexpr (std::is_same_v<F, RationalField>) {
        negative = c < 0;
        cs = k_.to_string(negative ? Coeff(-c) : c);
      } else {
        cs = k_.to_string(c);
        if (cs.find_first_of("+-") != std::string::npos) cs = "(" + cs + ")";
      }
      if (negative) out += "-";
      else if (!out.empty()) out += "+";
      bool unit = cs == "1";
      if (i == 0) {
        out += cs;
        continue;
      }
      if (!unit) out += cs + "*";
      out += var_;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

  bool operator==(const Polynomials& other) const { return k_ == other.k_ && var_ == other.var_; }

 private:
  F k_;
  std::string var_;
};

}  // namespace pfl
