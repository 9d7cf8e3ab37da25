#include "pfisterlab/factor.hpp"

#include <algorithm>
#include <random>

namespace pfl {
namespace {

bool fq_less(const FqPoly& a, const FqPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// g with g^p = f, for f with f' = 0.
FqPoly pth_root(const FqPolys& ring, const FqPoly& f) {
  const auto& k = ring.base();
  std::uint32_t p = k.p();
  std::uint64_t root_exp = k.order() / p;  // a^(q/p) is the p-th root of a
  FqPoly g((f.size() - 1) / p + 1, k.zero());
  for (std::size_t i = 0; i < f.size(); i += p) g[i / p] = k.pow(f[i], root_exp);
  return ring.normalize(g);
}

void squarefree(const FqPolys& ring, const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
  if (ring.degree(f) <= 0) return;
  FqPoly d = ring.derivative(f);
  if (d.empty()) {
    squarefree(ring, pth_root(ring, f), mult * static_cast<int>(ring.base().p()), out);
    return;
  }
  FqPoly c = ring.gcd(f, d);
  FqPoly w = ring.div(f, c);
  int i = 1;
  while (ring.degree(w) > 0) {
    FqPoly y = ring.gcd(w, c);
    FqPoly fac = ring.div(w, y);
    if (ring.degree(fac) > 0) out.emplace_back(ring.monic(fac), i * mult);
    w = y;
    c = ring.div(c, y);
    ++i;
  }
  if (ring.degree(c) > 0)
    squarefree(ring, pth_root(ring, c), mult * static_cast<int>(ring.base().p()), out);
}

void equal_degree(const FqPolys& ring, const FqPoly& f, long d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
  long n = ring.degree(f);
  if (n <= d) {
    out.push_back(f);
    return;
  }
  const auto& k = ring.base();
  Integer qd = 1;
  for (long i = 0; i < d; ++i) qd *= k.order();
  std::uniform_int_distribution<std::uint32_t> coeff(0, k.order() - 1);
  while (true) {
    FqPoly a(n, k.zero());
    for (auto& c : a) c = k.from_code(coeff(rng));
    a = ring.normalize(a);
    if (ring.degree(a) < 1) continue;
    FqPoly b;
    if (k.p() == 2) {
      long steps = d * static_cast<long>(k.degree());
      FqPoly term = a;
      for (long i = 0; i < steps; ++i) {
        b = ring.add(b, term);
        term = ring.mulmod(term, term, f);
      }
    } else {
      Integer e = (qd - 1) / 2;
      b = ring.sub(ring.powmod(a, e, f), ring.one());
    }
    FqPoly g = ring.gcd(f, b);
    long dg = ring.degree(g);
    if (dg > 0 && dg < n) {
      equal_degree(ring, g, d, rng, out);
      equal_degree(ring, ring.div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization<FqPoly> factor(const FqPolys& ring, const FqPoly& f) {
  if (f.empty()) fail(ErrorKind::PreconditionFailed, "factorization of the zero polynomial");
  std::vector<std::pair<FqPoly, int>> parts;
  squarefree(ring, ring.monic(f), 1, parts);
  std::mt19937_64 rng(0x5eed);
  Factorization<FqPoly> result;
  const auto& k = ring.base();
  for (auto& [g0, mult] : parts) {
    FqPoly g = g0;
    FqPoly h = ring.x();
    for (long d = 1; ring.degree(g) >= 2 * d; ++d) {
      h = ring.powmod(h, Integer(k.order()), g);
      FqPoly fac = ring.gcd(g, ring.sub(h, ring.x()));
      if (ring.degree(fac) > 0) {
        std::vector<FqPoly> pieces;
        equal_degree(ring, fac, d, rng, pieces);
        for (auto& piece : pieces) result.factors.emplace_back(ring.monic(piece), mult);
        g = ring.div(g, fac);
        h = ring.mod(h, g);
      }
    }
    if (ring.degree(g) > 0) result.factors.emplace_back(ring.monic(g), mult);
  }
  // Merge equal factors produced by different square-free layers.
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return fq_less(a.first, b.first); });
  std::vector<std::pair<FqPoly, int>> merged;
  for (auto& fm : result.factors) {
    if (!merged.empty() && merged.back().first == fm.first) merged.back().second += fm.second;
    else merged.push_back(fm);
  }
  result.factors = std::move(merged);
  return result;
}

bool is_irreducible(const FqPolys& ring, const FqPoly& f) {
  if (ring.degree(f) < 1) return false;
  auto fac = factor(ring, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<FiniteField::Elem> roots(const FqPolys& ring, const FqPoly& f) {
  std::vector<FiniteField::Elem> out;
  if (f.empty()) fail(ErrorKind::PreconditionFailed, "roots of the zero polynomial");
  for (auto& [g, m] : factor(ring, f).factors)
    if (g.size() == 2) out.push_back(ring.base().neg(g[0]));
  return out;
}

namespace {

// Integer primitive multiple of f.
std::vector<Integer> primitive_part(const QPoly& f) {
  Integer den = 1;
  for (const auto& c : f) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f) {
    Integer v = c.get_num() * (den / c.get_den());
    out.push_back(v);
    g = gcd(g, v);
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out = {1};
  for (const auto& [p, e] : arith::factor(n)) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

void squarefree_q(const QPolys& ring, const QPoly& f, std::vector<std::pair<QPoly, int>>& out) {
  QPoly c = ring.gcd(f, ring.derivative(f));
  QPoly w = ring.div(f, c);
  int i = 1;
  while (ring.degree(w) > 0) {
    QPoly y = ring.gcd(w, c);
    QPoly fac = ring.div(w, y);
    if (ring.degree(fac) > 0) out.emplace_back(ring.monic(fac), i);
    w = y;
    c = ring.div(c, y);
    ++i;
  }
}

}  // namespace

std::vector<Rational> rational_roots(const QPolys& ring, const QPoly& f) {
  if (f.empty()) fail(ErrorKind::PreconditionFailed, "roots of the zero polynomial");
  std::vector<Rational> out;
  QPoly g = f;
  if (!g.empty() && g[0] == 0) {
    out.push_back(0);
    while (!g.empty() && g[0] == 0) g.erase(g.begin());
  }
  if (ring.degree(g) < 1) return out;
  auto z = primitive_part(g);
  for (const auto& num : divisors(z.front()))
    for (const auto& den : divisors(z.back()))
      for (int sign : {1, -1}) {
        Rational r(sign * num, den);
        r.canonicalize();
        if (ring.eval(g, r) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

Factorization<QPoly> factor(const QPolys& ring, const QPoly& f) {
  if (f.empty()) fail(ErrorKind::PreconditionFailed, "factorization of the zero polynomial");
  std::vector<std::pair<QPoly, int>> parts;
  squarefree_q(ring, ring.monic(f), parts);
  Factorization<QPoly> result;
  for (auto& [g0, mult] : parts) {
    QPoly g = g0;
    for (const auto& r : rational_roots(ring, g)) {
      QPoly lin = {-r, 1};
      result.factors.emplace_back(lin, mult);
      g = ring.div(g, lin);
    }
    long d = ring.degree(g);
    if (d <= 0) continue;
    if (d > 3)
      fail(ErrorKind::UnsupportedField, "factorization over Q beyond degree 3 without rational roots: " + ring.to_string(g));
    result.factors.emplace_back(ring.monic(g), mult);
  }
  std::sort(result.factors.begin(), result.factors.end(), [&](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    for (std::size_t i = a.first.size(); i-- > 0;)
      if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
    return false;
  });
  return result;
}

bool is_irreducible(const QPolys& ring, const QPoly& f) {
  long d = ring.degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  if (!rational_roots(ring, f).empty()) return false;
  if (d <= 3) return true;
  auto fac = factor(ring, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

namespace {

template <class Ring, class SqrtFn>
auto sqrt_by_long_division(const Ring& ring, const typename Ring::Elem& f, SqrtFn base_sqrt)
    -> std::optional<typename Ring::Elem> {
  using Poly = typename Ring::Elem;
  const auto& k = ring.base();
  if (f.empty()) return Poly{};
  long d = ring.degree(f);
  if (d % 2) return std::nullopt;
  auto lead = base_sqrt(f.back());
  if (!lead) return std::nullopt;
  std::size_t n = static_cast<std::size_t>(d / 2);
  Poly g(n + 1, k.zero());
  g[n] = *lead;
  auto two_lead_inv = k.inv(k.add(*lead, *lead));
  for (std::size_t step = 1; step <= n; ++step) {
    std::size_t idx = n - step;
    // Coefficient of t^(2n - step) in g^2 equals 2 g_n g_idx + sum over
    // pairs with both indices above idx.
    auto acc = k.zero();
    for (std::size_t i = idx + 1; i <= n; ++i) {
      std::size_t j = 2 * n - step - i;
      if (j > idx && j <= n) acc = k.add(acc, k.mul(g[i], g[j]));
    }
    g[idx] = k.mul(k.sub(f[2 * n - step], acc), two_lead_inv);
  }
  g = ring.normalize(g);
  if (!ring.equal(ring.mul(g, g), f)) return std::nullopt;
  return g;
}

}  // namespace

std::optional<QPoly> poly_sqrt(const QPolys& ring, const QPoly& f) {
  return sqrt_by_long_division(ring, f, [](const Rational& a) -> std::optional<Rational> {
    if (!arith::is_square(a)) return std::nullopt;
    Rational r(arith::isqrt(a.get_num()), arith::isqrt(a.get_den()));
    r.canonicalize();
    return r;
  });
}

std::optional<FqPoly> poly_sqrt(const FqPolys& ring, const FqPoly& f) {
  const auto& k = ring.base();
  if (k.p() == 2) {
    if (f.empty()) return FqPoly{};
    for (std::size_t i = 1; i < f.size(); i += 2)
      if (!k.is_zero(f[i])) return std::nullopt;
    FqPoly g((f.size() + 1) / 2, k.zero());
    for (std::size_t i = 0; i < f.size(); i += 2) g[i / 2] = *k.sqrt(f[i]);
    return ring.normalize(g);
  }
  return sqrt_by_long_division(ring, f, [&](FqElem a) { return k.sqrt(a); });
}

}  // namespace pfl
