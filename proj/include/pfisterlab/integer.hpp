#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace pfl {

using Integer = mpz_class;
using Rational = mpq_class;

namespace arith {

// Exponent of p in n; n must be nonzero.
long valuation(const Integer& n, const Integer& p);
long valuation(const Rational& x, const Integer& p);

bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);

// Trial division; intended for the small integers met at desk scale.
std::vector<std::pair<Integer, int>> factor(Integer n);

// Sorted distinct primes dividing numerator or denominator.
std::vector<Integer> prime_support(const Rational& x);

bool is_square(const Integer& n);
bool is_square(const Rational& x);
Integer isqrt(const Integer& n);

// Sign times the product of primes of odd exponent in x.
Integer squarefree_kernel(const Rational& x);

// Jacobi symbol (a/n) for odd positive n; the Legendre symbol when n is prime.
int jacobi(Integer a, Integer n);
int legendre(const Integer& a, const Integer& p);

Integer mod(const Integer& a, const Integer& m);
Integer inverse_mod(const Integer& a, const Integer& m);

// Residue of a rational with p-adic valuation >= 0, in [0, p).
Integer reduce_mod(const Rational& x, const Integer& p);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

}  // namespace arith
}  // namespace pfl
