#include "pfisterlab/integer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pfisterlab/error.hpp"

namespace pfl::arith {

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) fail(ErrorKind::PreconditionFailed, "valuation of zero");
  Integer m = abs(n);
  long e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++e;
  }
  return e;
}

long valuation(const Rational& x, const Integer& p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

// Pollard-Brent: a nontrivial factor of an odd composite n.
Integer rho_split(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, q = 1, ys, t;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    const long block = 128;
    long r = 1;
    while (d == 1) {
      x = y;
      for (long i = 0; i < r; ++i) step(y);
      for (long k = 0; k < r && d == 1; k += block) {
        ys = y;
        for (long i = 0; i < std::min(block, r - k); ++i) {
          step(y);
          t = abs(x - y);
          q = q * t % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (d == n) {
      // backtrack one step at a time from the last block
      do {
        step(ys);
        t = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void split_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    ++out[n];
    return;
  }
  Integer d = rho_split(n);
  split_into(d, out);
  split_into(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor(Integer n) {
  constexpr unsigned long kTrial = 1000;
  n = abs(n);
  std::map<Integer, int> found;
  if (n <= 1) return {};
  if (n.fits_ulong_p()) {
    unsigned long m = n.get_ui();
    for (unsigned long d = 2; d < kTrial && d * d <= m; d += (d == 2 ? 1 : 2))
      while (m % d == 0) {
        m /= d;
        ++found[Integer(d)];
      }
    n = m;
  } else {
    for (unsigned long d = 2; d < kTrial; d += (d == 2 ? 1 : 2))
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
        n /= d;
        ++found[Integer(d)];
      }
  }
  if (n > 1) {
    if (n < kTrial * kTrial) ++found[n];
    else split_into(n, found);
  }
  return {found.begin(), found.end()};
}

std::vector<Integer> prime_support(const Rational& x) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(x.get_num())) out.push_back(p);
  for (const auto& [p, e] : factor(x.get_den())) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Rational& x) {
  return is_square(x.get_num()) && is_square(x.get_den());
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer squarefree_kernel(const Rational& x) {
  if (x == 0) fail(ErrorKind::PreconditionFailed, "square class of zero");
  Integer k = sgn(x);
  for (const auto& [p, e] : factor(x.get_num()))
    if (e % 2) k *= p;
  for (const auto& [p, e] : factor(x.get_den()))
    if (e % 2) k *= p;
  return k;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    fail(ErrorKind::DivisionByZeroOrNonUnit, "not invertible modulo " + m.get_str());
  return r;
}

int jacobi(Integer a, Integer n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t()))
    fail(ErrorKind::PreconditionFailed, "jacobi symbol needs odd positive modulus");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a /= 2;
      Integer r = mod(n, 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mod(a, 4) == 3 && mod(n, 4) == 3) result = -result;
    a = mod(a, n);
  }
  return n == 1 ? result : 0;
}

int legendre(const Integer& a, const Integer& p) {
  if (p == 2) return mpz_odd_p(a.get_mpz_t()) ? 1 : 0;
  return jacobi(a, p);
}

Integer reduce_mod(const Rational& x, const Integer& p) {
  if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t()))
    fail(ErrorKind::NotInValuationRing, "denominator divisible by " + p.get_str());
  return mod(x.get_num() * inverse_mod(x.get_den(), p), p);
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    fail(ErrorKind::SyntaxError, "not a rational number: " + text);
  if (r.get_den() == 0) fail(ErrorKind::DivisionByZeroOrNonUnit, "zero denominator");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace pfl::arith
