#include "pfisterlab/quadratic.hpp"

namespace pfl {

bool is_square(const RationalField&, const Rational& a) { return arith::is_square(a); }
bool is_square(const FiniteField& k, FqElem a) { return k.is_square(a); }

std::optional<Rational> sqrt(const RationalField&, const Rational& a) {
  if (!arith::is_square(a)) return std::nullopt;
  Rational r(arith::isqrt(a.get_num()), arith::isqrt(a.get_den()));
  r.canonicalize();
  return r;
}

std::optional<FqElem> sqrt(const FiniteField& k, FqElem a) { return k.sqrt(a); }

namespace {

template <class K, class BaseSqrt>
std::optional<typename K::Elem> fraction_sqrt(const K& k, const typename K::Elem& a, BaseSqrt base_sqrt) {
  const auto& ring = k.polys();
  if (k.is_zero(a)) return k.zero();
  auto lead = ring.leading(a.num);
  auto s = base_sqrt(lead);
  if (!s) return std::nullopt;
  auto n = poly_sqrt(ring, ring.monic(a.num));
  if (!n) return std::nullopt;
  auto d = poly_sqrt(ring, a.den);
  if (!d) return std::nullopt;
  return k.make(ring.scale(*n, *s), *d);
}

}  // namespace

std::optional<FqtField::Elem> sqrt(const FqtField& k, const FqtField::Elem& a) {
  return fraction_sqrt(k, a, [&](FqElem c) { return k.base().sqrt(c); });
}

std::optional<QtField::Elem> sqrt(const QtField& k, const QtField::Elem& a) {
  return fraction_sqrt(k, a, [&](const Rational& c) { return sqrt(k.base(), c); });
}

bool is_square(const FqtField& k, const FqtField::Elem& a) { return sqrt(k, a).has_value(); }
bool is_square(const QtField& k, const QtField::Elem& a) { return sqrt(k, a).has_value(); }

std::optional<FqElem> artin_schreier_root(const FiniteField& k, FqElem a) {
  if (k.p() != 2) fail(ErrorKind::UnsupportedField, "Artin-Schreier roots need characteristic 2");
  if (k.trace(a) != 0) return std::nullopt;
  if (k.degree() == 1) return k.zero();
  for (std::uint32_t code = 0; code < k.order(); ++code) {
    FqElem x{code};
    if (k.add(k.mul(x, x), x) == a) return x;
  }
  return std::nullopt;
}

bool artin_schreier_class(const FiniteField& k, FqElem a) { return artin_schreier_root(k, a).has_value(); }

namespace {

// Solve P^2 + P*Q = N over F_q[t] (characteristic 2) as an F_2-linear system
// in the coordinates of P.
std::optional<FqPoly> solve_as_poly(const FqPolys& ring, const FqPoly& n, const FqPoly& q) {
  const auto& k = ring.base();
  std::size_t m = k.degree();
  long bound = std::max({ring.degree(n), ring.degree(q), 0L});
  std::size_t unknowns = static_cast<std::size_t>(bound + 1) * m;
  std::size_t rows = static_cast<std::size_t>(2 * bound + ring.degree(q) + 2) * m;
  rows = std::max(rows, (n.size() + 1) * m);
  // Column j: image of the basis vector (coefficient j/m, digit j%m).
  std::vector<std::vector<std::uint8_t>> mat(rows, std::vector<std::uint8_t>(unknowns + 1, 0));
  for (std::size_t j = 0; j < unknowns; ++j) {
    std::vector<std::uint32_t> dg(m, 0);
    dg[j % m] = 1;
    FqPoly p = ring.monomial(k.from_digits(dg), j / m);
    FqPoly img = ring.add(ring.mul(p, p), ring.mul(p, q));
    for (std::size_t i = 0; i < img.size(); ++i) {
      auto d = k.digits(img[i]);
      for (std::size_t r = 0; r < m; ++r)
        if (i * m + r < rows) mat[i * m + r][j] = static_cast<std::uint8_t>(d[r]);
    }
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto d = k.digits(n[i]);
    for (std::size_t r = 0; r < m; ++r) mat[i * m + r][unknowns] = static_cast<std::uint8_t>(d[r]);
  }
  std::vector<long> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < unknowns && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && !mat[sel][col]) ++sel;
    if (sel == rows) continue;
    std::swap(mat[sel], mat[row]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != row && mat[r][col])
        for (std::size_t c = col; c <= unknowns; ++c) mat[r][c] ^= mat[row][c];
    pivot_col.push_back(static_cast<long>(col));
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (mat[r][unknowns]) return std::nullopt;
  std::vector<std::uint32_t> sol(unknowns, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) sol[pivot_col[r]] = mat[r][unknowns];
  FqPoly p(static_cast<std::size_t>(bound + 1), k.zero());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<std::uint32_t> dg(sol.begin() + i * m, sol.begin() + (i + 1) * m);
    p[i] = k.from_digits(dg);
  }
  return ring.normalize(p);
}

}  // namespace

std::optional<FqtField::Elem> artin_schreier_root(const FqtField& k, const FqtField::Elem& a) {
  if (k.characteristic() != 2) fail(ErrorKind::UnsupportedField, "Artin-Schreier roots need characteristic 2");
  // In lowest terms x = P/Q gives x^2 + x = (P^2 + PQ)/Q^2, so the
  // denominator of a must be a square.
  auto q = poly_sqrt(k.polys(), a.den);
  if (!q) return std::nullopt;
  auto p = solve_as_poly(k.polys(), a.num, *q);
  if (!p) return std::nullopt;
  auto x = k.make(*p, *q);
  if (!k.equal(k.add(k.mul(x, x), x), a)) return std::nullopt;
  return x;
}

bool artin_schreier_class(const FqtField& k, const FqtField::Elem& a) {
  return artin_schreier_root(k, a).has_value();
}

bool quadratic_irreducible(const RationalField& k, const Rational& b, const Rational& c) {
  return !is_square(k, b * b - 4 * c);
}

bool quadratic_irreducible(const FiniteField& k, FqElem b, FqElem c) {
  if (k.p() == 2) {
    if (k.is_zero(b)) return false;  // every element of a finite field of char 2 is a square
    return !artin_schreier_class(k, k.div(c, k.mul(b, b)));
  }
  FqElem disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
  return !k.is_square(disc);
}

bool quadratic_irreducible(const FqtField& k, const FqtField::Elem& b, const FqtField::Elem& c) {
  if (k.characteristic() == 2) {
    if (k.is_zero(b)) {
      // Over a perfect constant field, c is a square iff dc/dt = 0.
      const auto& ring = k.polys();
      auto dn = ring.sub(ring.mul(ring.derivative(c.num), c.den), ring.mul(c.num, ring.derivative(c.den)));
      return !dn.empty();
    }
    return !artin_schreier_class(k, k.div(c, k.mul(b, b)));
  }
  auto disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
  return !is_square(k, disc);
}

bool quadratic_irreducible(const QtField& k, const QtField::Elem& b, const QtField::Elem& c) {
  auto disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
  return !is_square(k, disc);
}

int legendre(const Integer& a, const Integer& p) { return arith::legendre(a, p); }

}  // namespace pfl
