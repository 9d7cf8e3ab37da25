#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfisterlab/quadratic.hpp"

namespace pfl {

// A = K[X]/(X^2 + bX + c).  The pair (b1, b2) stands for b1*X + b2.  When the
// quadratic is reducible A has zero divisors and inv() reports them.
template <FieldContext K>
class EtaleAlgebra {
 public:
  using Base = typename K::Elem;
  struct Elem {
    Base b1;
    Base b2;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  EtaleAlgebra(K base, Base b, Base c)
      : k_(std::move(base)), b_(std::move(b)), c_(std::move(c)) {
    is_field_ = quadratic_irreducible(k_, b_, c_);
  }

  const K& base() const { return k_; }
  const Base& b() const { return b_; }
  const Base& c() const { return c_; }
  bool is_field() const { return is_field_; }
  long characteristic() const { return k_.characteristic(); }

  Elem zero() const { return {k_.zero(), k_.zero()}; }
  Elem one() const { return {k_.zero(), k_.one()}; }
  Elem from_int(long n) const { return {k_.zero(), k_.from_int(n)}; }
  Elem from_base(const Base& a) const { return {k_.zero(), a}; }
  Elem generator() const { return {k_.one(), k_.zero()}; }
  Elem make(const Base& b1, const Base& b2) const { return {b1, b2}; }

  Elem add(const Elem& x, const Elem& y) const { return {k_.add(x.b1, y.b1), k_.add(x.b2, y.b2)}; }
  Elem sub(const Elem& x, const Elem& y) const { return {k_.sub(x.b1, y.b1), k_.sub(x.b2, y.b2)}; }
  Elem neg(const Elem& x) const { return {k_.neg(x.b1), k_.neg(x.b2)}; }
  Elem mul(const Elem& x, const Elem& y) const {
    // (x1 X + x2)(y1 X + y2) with X^2 = -bX - c.
    Base xx = k_.mul(x.b1, y.b1);
    Base lin = k_.sub(k_.add(k_.mul(x.b1, y.b2), k_.mul(x.b2, y.b1)), k_.mul(b_, xx));
    Base cst = k_.sub(k_.mul(x.b2, y.b2), k_.mul(c_, xx));
    return {lin, cst};
  }
  Elem scale(const Elem& x, const Base& a) const { return {k_.mul(x.b1, a), k_.mul(x.b2, a)}; }
  // Image of b1 X + b2 under X -> -b - X.
  Elem conjugate(const Elem& x) const { return {k_.neg(x.b1), k_.sub(x.b2, k_.mul(b_, x.b1))}; }
  Base norm(const Elem& x) const {
    return k_.add(k_.sub(k_.mul(x.b2, x.b2), k_.mul(b_, k_.mul(x.b1, x.b2))), k_.mul(c_, k_.mul(x.b1, x.b1)));
  }
  Base trace(const Elem& x) const { return k_.sub(k_.add(x.b2, x.b2), k_.mul(b_, x.b1)); }
  bool is_unit(const Elem& x) const { return !k_.is_zero(norm(x)); }
  Elem inv(const Elem& x) const {
    Base n = norm(x);
    if (k_.is_zero(n)) fail(ErrorKind::DivisionByZeroOrNonUnit, "zero divisor " + to_string(x) + " in " + descriptor());
    return scale(conjugate(x), k_.inv(n));
  }
  Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }

  bool is_zero(const Elem& x) const { return k_.is_zero(x.b1) && k_.is_zero(x.b2); }
  bool is_one(const Elem& x) const { return k_.is_zero(x.b1) && k_.is_one(x.b2); }
  bool equal(const Elem& x, const Elem& y) const { return k_.equal(x.b1, y.b1) && k_.equal(x.b2, y.b2); }

  std::string to_string(const Elem& x) const { return "[" + k_.to_string(x.b1) + "," + k_.to_string(x.b2) + "]"; }
  std::string descriptor() const {
    return k_.descriptor() + "[X]/(X^2+(" + k_.to_string(b_) + ")*X+(" + k_.to_string(c_) + "))";
  }
  bool operator==(const EtaleAlgebra& o) const { return k_ == o.k_ && k_.equal(b_, o.b_) && k_.equal(c_, o.c_); }

 private:
  K k_;
  Base b_;
  Base c_;
  bool is_field_ = false;
};

// Cofactors l_i with sum l_i x_i = 1, if the x_i generate the unit ideal.
// Writes l_i = s_i X + r_i and solves the 2 x 2n linear system over K.
template <FieldContext K>
std::optional<std::vector<typename EtaleAlgebra<K>::Elem>> unit_ideal_cofactors(
    const EtaleAlgebra<K>& a, const std::vector<typename EtaleAlgebra<K>::Elem>& xs) {
  const K& k = a.base();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!a.is_unit(xs[i])) continue;
    std::vector<typename EtaleAlgebra<K>::Elem> out(xs.size(), a.zero());
    out[i] = a.inv(xs[i]);
    return out;
  }
  // Columns: X*x_i and x_i, each a vector (coefficient of X, constant).
  std::size_t n = 2 * xs.size();
  std::vector<std::vector<typename K::Elem>> m(2, std::vector<typename K::Elem>(n + 1, k.zero()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto shifted = a.mul(a.generator(), xs[i]);
    m[0][2 * i] = shifted.b1;
    m[1][2 * i] = shifted.b2;
    m[0][2 * i + 1] = xs[i].b1;
    m[1][2 * i + 1] = xs[i].b2;
  }
  m[1][n] = k.one();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < 2; ++col) {
    std::size_t r = row;
    while (r < 2 && k.is_zero(m[r][col])) ++r;
    if (r == 2) continue;
    std::swap(m[r], m[row]);
    auto inv = k.inv(m[row][col]);
    for (auto& e : m[row]) e = k.mul(e, inv);
    for (std::size_t o = 0; o < 2; ++o) {
      if (o == row || k.is_zero(m[o][col])) continue;
      auto f = m[o][col];
      for (std::size_t j = 0; j <= n; ++j) m[o][j] = k.sub(m[o][j], k.mul(f, m[row][j]));
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < 2; ++r)
    if (!k.is_zero(m[r][n])) return std::nullopt;
  std::vector<typename K::Elem> sol(n, k.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = m[r][n];
  std::vector<typename EtaleAlgebra<K>::Elem> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(a.make(sol[2 * i], sol[2 * i + 1]));
  return out;
}

}  // namespace pfl
