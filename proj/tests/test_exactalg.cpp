#include <random>
#include <set>

#include "doctest.h"
#include "pfisterlab/etale.hpp"
#include "pfisterlab/parse.hpp"

using namespace pfl;

namespace {

// Naive remainder of a by monic m over Q; coefficients low to high.
std::vector<Rational> naive_rem(std::vector<Rational> a, const std::vector<Rational>& m) {
  while (a.size() >= m.size()) {
    Rational lead = a.back();
    std::size_t s = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[s + i] -= lead * m[i];
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool has_root_by_search(const FiniteField& k, FqElem b, FqElem c) {
  for (std::uint32_t x = 0; x < k.order(); ++x) {
    FqElem e{x};
    if (k.is_zero(k.add(k.add(k.mul(e, e), k.mul(b, e)), c))) return true;
  }
  return false;
}

std::vector<FqPoly> all_polys(const FqPolys& ring, int max_degree, bool monic_only) {
  const auto& k = ring.base();
  std::vector<FqPoly> out;
  for (int d = 0; d <= max_degree; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= k.order();
    for (std::uint32_t lead = 1; lead < k.order(); ++lead) {
      if (monic_only && lead != 1) continue;
      for (std::uint64_t code = 0; code < count; ++code) {
        FqPoly f(d + 1, k.zero());
        std::uint64_t c = code;
        for (int i = 0; i < d; ++i) {
          f[i] = FqElem{static_cast<std::uint32_t>(c % k.order())};
          c /= k.order();
        }
        f[d] = FqElem{lead};
        out.push_back(f);
      }
    }
  }
  return out;
}

bool irreducible_by_trial_division(const FqPolys& ring, const FqPoly& f) {
  long d = ring.degree(f);
  if (d < 1) return false;
  for (const auto& g : all_polys(ring, static_cast<int>(d / 2), true))
    if (ring.degree(g) >= 1 && ring.divides(g, f)) return false;
  return true;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  RationalField q;
  CHECK(q.add(Rational(1, 2), Rational(1, 3)) == Rational(5, 6));
  CHECK_THROWS_AS(q.inv(0), Error);
}

TEST_CASE("F9 with modulus z^2+1: z*z = 2") {
  FiniteField f9(3, {1, 0, 1});
  FqElem z = f9.generator();
  CHECK(f9.mul(z, z) == f9.from_int(2));
  CHECK(f9.to_string(f9.mul(z, z)) == "2");
  CHECK(f9.descriptor() == "F9:z^2+1");
}

TEST_CASE("etale multiplication reduces X^2 by X^2+X+1") {
  RationalField q;
  EtaleAlgebra<RationalField> a(q, 1, 1);
  auto x = a.generator();
  auto sq = a.mul(x, x);
  // Oracle: remainder of X^2 by X^2+X+1 computed by naive long division.
  auto rem = naive_rem({0, 0, 1}, {1, 1, 1});
  REQUIRE(rem.size() == 2);
  CHECK(sq.b1 == rem[1]);
  CHECK(sq.b2 == rem[0]);
  CHECK(sq.b1 == -1);
  CHECK(sq.b2 == -1);
  CHECK(a.is_field());
}

TEST_CASE("etale algebra over a reducible quadratic reports zero divisors") {
  RationalField q;
  EtaleAlgebra<RationalField> a(q, 0, -1);  // X^2 - 1
  CHECK_FALSE(a.is_field());
  auto d = a.make(1, 1);  // X + 1
  CHECK_THROWS_AS(a.inv(d), Error);
  try {
    a.inv(d);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZeroOrNonUnit);
  }
  auto u = a.make(1, 2);
  CHECK(a.is_one(a.mul(u, a.inv(u))));
}

TEST_CASE("poly_factor examples") {
  FqPolys f3(FiniteField::prime(3));
  auto fac = factor(f3, {f3.base().from_int(-1), f3.base().zero(), f3.base().one()});
  REQUIRE(fac.factors.size() == 2);
  CHECK(f3.to_string(fac.factors[0].first) == "t+1");
  CHECK(f3.to_string(fac.factors[1].first) == "t+2");

  FqPoly t2p1 = {f3.base().one(), f3.base().zero(), f3.base().one()};
  CHECK(irreducible_by_trial_division(f3, t2p1));
  CHECK(is_irreducible(f3, t2p1));

  FqPolys f2(FiniteField::prime(2));
  auto fac2 = factor(f2, {f2.base().zero(), f2.base().one(), f2.base().one()});
  REQUIRE(fac2.factors.size() == 2);
  CHECK(f2.to_string(fac2.factors[0].first) == "t");
  CHECK(f2.to_string(fac2.factors[1].first) == "t+1");
}

TEST_CASE("poly_factor round trip, exhaustive to degree 4") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FqPolys ring(FiniteField::prime(p));
    for (const auto& f : all_polys(ring, 4, false)) {
      if (ring.degree(f) < 1) continue;
      auto fac = factor(ring, f);
      FqPoly prod = ring.constant(ring.leading(f));
      for (const auto& [g, m] : fac.factors) {
        CHECK(ring.leading(g) == ring.base().one());
        CHECK(irreducible_by_trial_division(ring, g));
        prod = ring.mul(prod, ring.pow(g, m));
      }
      CHECK(ring.equal(prod, f));
    }
  }
}

TEST_CASE("factorization over an extension field") {
  FiniteField f4 = FiniteField::of_order(4);
  FqPolys ring(f4);
  // t^2+t+1 splits over F4.
  auto fac = factor(ring, {f4.one(), f4.one(), f4.one()});
  CHECK(fac.factors.size() == 2);
  for (std::uint32_t code = 0; code < 4; ++code) {
    FqPoly f = {FqElem{code}, f4.one(), f4.zero(), f4.one()};
    auto ff = factor(ring, f);
    FqPoly prod = ring.one();
    for (auto& [g, m] : ff.factors) prod = ring.mul(prod, ring.pow(g, m));
    CHECK(ring.equal(prod, f));
  }
}

TEST_CASE("quadratic_irreducible examples") {
  FiniteField f5 = FiniteField::prime(5);
  // Oracle: the squares mod 5.
  std::set<long> squares;
  for (long y = 0; y < 5; ++y) squares.insert(y * y % 5);
  long disc = ((1 - 4) % 5 + 5) % 5;
  CHECK(squares.count(disc) == 0);
  CHECK(quadratic_irreducible(f5, f5.one(), f5.one()));
  CHECK_FALSE(quadratic_irreducible(RationalField{}, Rational(0), Rational(-1)));
  FiniteField f2 = FiniteField::prime(2);
  CHECK_FALSE(has_root_by_search(f2, f2.one(), f2.one()));
  CHECK(quadratic_irreducible(f2, f2.one(), f2.one()));
}

TEST_CASE("quadratic_irreducible agrees with root search for q <= 25") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u}) {
    FiniteField k = FiniteField::of_order(q);
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        CHECK(quadratic_irreducible(k, FqElem{b}, FqElem{c}) == !has_root_by_search(k, FqElem{b}, FqElem{c}));
  }
}

TEST_CASE("legendre and Artin-Schreier class") {
  CHECK(legendre(1, 7) == 1);
  std::set<long> squares;
  for (long y = 1; y < 5; ++y) squares.insert(y * y % 5);
  CHECK(squares.count(2) == 0);
  CHECK(legendre(2, 5) == -1);
  CHECK(legendre(10, 5) == 0);
  FiniteField f2 = FiniteField::prime(2);
  CHECK_FALSE(artin_schreier_class(f2, f2.one()));
  CHECK(artin_schreier_class(f2, f2.zero()));
  FiniteField f4 = FiniteField::of_order(4);
  int in_image = 0;
  for (std::uint32_t c = 0; c < 4; ++c) in_image += artin_schreier_class(f4, FqElem{c});
  CHECK(in_image == 2);
}

TEST_CASE("legendre is multiplicative for p <= 31") {
  for (long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b)
        CHECK(legendre(a * b, p) == legendre(a, p) * legendre(b, p));
    for (long a = 1; a < p; ++a) {
      bool sq = false;
      for (long y = 1; y < p; ++y) sq = sq || (y * y - a) % p == 0;
      CHECK(legendre(a, p) == (sq ? 1 : -1));
    }
  }
}

TEST_CASE("canonical form: (a+b)-b is structurally a") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(-9, 9);
  QtField qt(RationalField{});
  FqtField f3t(FiniteField::prime(3));
  FiniteField f9 = FiniteField::of_order(9);
  auto rand_qpoly = [&]() {
    QPoly f;
    for (int i = 0; i < 3; ++i) f.push_back(Rational(small(rng)));
    return qt.polys().normalize(f);
  };
  auto rand_fpoly = [&]() {
    FqPoly f;
    for (int i = 0; i < 3; ++i) f.push_back(f3t.base().from_int(small(rng)));
    return f3t.polys().normalize(f);
  };
  for (int trial = 0; trial < 200; ++trial) {
    Rational a(small(rng), 1 + std::abs(small(rng))), b(small(rng), 1 + std::abs(small(rng)));
    a.canonicalize();
    b.canonicalize();
    CHECK(((a + b) - b) == a);
    QPoly d = rand_qpoly();
    QPoly d2 = rand_qpoly();
    if (!d.empty() && !d2.empty()) {
      auto x = qt.make(rand_qpoly(), d), y = qt.make(rand_qpoly(), d2);
      CHECK(qt.sub(qt.add(x, y), y) == x);
    }
    FqPoly e = rand_fpoly(), e2 = rand_fpoly();
    if (!e.empty() && !e2.empty()) {
      auto x = f3t.make(rand_fpoly(), e), y = f3t.make(rand_fpoly(), e2);
      CHECK(f3t.sub(f3t.add(x, y), y) == x);
    }
    FqElem u{static_cast<std::uint32_t>(trial % 9)}, v{static_cast<std::uint32_t>((trial * 5) % 9)};
    CHECK(f9.sub(f9.add(u, v), v) == u);
  }
}

TEST_CASE("element grammar and canonical printing") {
  QtField qt(RationalField{});
  auto x = parse_element(qt, "(t^2+1)/(t-2)");
  CHECK(qt.to_string(x) == "(t^2+1)/(t-2)");
  CHECK(qt.to_string(parse_element(qt, "3/7")) == "3/7");
  CHECK(qt.to_string(parse_element(qt, "t^2+3*t-1")) == "t^2+3*t-1");
  CHECK(qt.to_string(parse_element(qt, "1/(2*t)")) == "(1/2)/t");
  CHECK(qt.to_string(parse_element(qt, "-t/(t^2)")) == "-1/t");
  CHECK(qt.to_string(parse_element(qt, "1/t^2")) == "1/t^2");
  CHECK(arith::to_string(parse_element(RationalField{}, "-12")) == "-12");
  FiniteField f9(3, {1, 0, 1});
  CHECK(f9.to_string(parse_element(f9, "z*z")) == "2");
  CHECK(f9.to_string(parse_element(f9, "2*z+4")) == "2*z+1");
  EtaleAlgebra<RationalField> a(RationalField{}, 1, 1);
  CHECK(a.to_string(parse_element(a, "[1,-1/2]")) == "[1,-1/2]");
  FqtField f3t(FiniteField::prime(3));
  CHECK(f3t.to_string(parse_element(f3t, "t^2-1")) == "t^2+2");
  CHECK_THROWS_AS(parse_element(qt, "t+"), Error);
  CHECK_THROWS_AS(parse_element(qt, "1/0"), Error);
  for (const char* text : {"(t^2+1)/(t-2)", "(1/2)/t", "-1/t", "(3*t+1)/(t^2+t+1)", "-3/(t-5)", "5"}) {
    auto e = parse_element(qt, text);
    CHECK(qt.to_string(parse_element(qt, qt.to_string(e))) == qt.to_string(e));
  }
}

TEST_CASE("field descriptors") {
  CHECK(descriptor(parse_field("Q")) == "Q");
  CHECK(descriptor(parse_field("F5")) == "F5");
  CHECK(descriptor(parse_field("F9")) == "F9:z^2+1");
  CHECK(descriptor(parse_field("F4")) == "F4:z^2+z+1");
  CHECK(descriptor(parse_field("F9:z^2+2*z+2")) == "F9:z^2+2*z+2");
  CHECK(descriptor(parse_field("Q(t)")) == "Q(t)");
  CHECK(descriptor(parse_field("F3(t)")) == "F3(t)");
  CHECK_THROWS_AS(parse_field("F6"), Error);
  CHECK_THROWS_AS(parse_field("F9:z^2+2"), Error);  // z^2+2 = (z+1)(z+2) over F3
}

TEST_CASE("square roots and Artin-Schreier roots in function fields") {
  QtField qt(RationalField{});
  auto x = parse_element(qt, "(4*t^2+4*t+1)/(9*t^2)");
  auto r = sqrt(qt, x);
  REQUIRE(r);
  CHECK(qt.equal(qt.mul(*r, *r), x));
  CHECK_FALSE(is_square(qt, parse_element(qt, "t")));
  CHECK_FALSE(is_square(qt, parse_element(qt, "-1")));

  FqtField f2t(FiniteField::prime(2));
  for (const char* text : {"t^2+t", "1/(t^2+t)", "t/(t^2+1)", "(t^4+t+1)/t^2"}) {
    auto a = parse_element(f2t, text);
    auto root = artin_schreier_root(f2t, a);
    if (root) CHECK(f2t.equal(f2t.add(f2t.mul(*root, *root), *root), a));
  }
  CHECK(artin_schreier_class(f2t, parse_element(f2t, "t^2+t")));
  CHECK(artin_schreier_class(f2t, parse_element(f2t, "t")) == false);
  CHECK(artin_schreier_class(f2t, parse_element(f2t, "1")) == false);
  // x = 1/t gives 1/t^2 + 1/t = (t+1)/t^2.
  CHECK(artin_schreier_class(f2t, parse_element(f2t, "(t+1)/t^2")));
  // X^2 + t is irreducible (t is not a square), X^2 + t^2 is not.
  CHECK(quadratic_irreducible(f2t, f2t.zero(), parse_element(f2t, "t")));
  CHECK_FALSE(quadratic_irreducible(f2t, f2t.zero(), parse_element(f2t, "t^2")));
}

TEST_CASE("embedding F3 into F9 and F4 into F16") {
  FiniteField f3 = FiniteField::prime(3), f9 = FiniteField::of_order(9);
  auto img = embedding(f3, f9);
  CHECK(img[2] == f9.from_int(2));
  FiniteField f4 = FiniteField::of_order(4), f16 = FiniteField::of_order(16);
  auto e = embedding(f4, f16);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      CHECK(e[f4.mul(FqElem{a}, FqElem{b}).code] == f16.mul(e[a], e[b]));
      CHECK(e[f4.add(FqElem{a}, FqElem{b}).code] == f16.add(e[a], e[b]));
    }
}

TEST_CASE("integer factorization") {
  // trial division oracle below 10^6
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    long n = static_cast<long>(rng() % 999999) + 2;
    long m = n;
    std::vector<std::pair<Integer, int>> expected;
    for (long d = 2; d * d <= m; ++d) {
      int e = 0;
      while (m % d == 0) m /= d, ++e;
      if (e) expected.emplace_back(Integer(d), e);
    }
    if (m > 1) expected.emplace_back(Integer(m), 1);
    CHECK(arith::factor(Integer(n)) == expected);
  }
  // products of large primes
  Integer p1("1000000007"), p2("998244353"), p3("18446744073709551557");
  auto f = arith::factor(p1 * p1 * p2 * p3 * 12);
  REQUIRE(f.size() == 5);
  CHECK(f[0] == std::pair<Integer, int>{2, 2});
  CHECK(f[1] == std::pair<Integer, int>{3, 1});
  CHECK(f[2] == std::pair<Integer, int>{p2, 1});
  CHECK(f[3] == std::pair<Integer, int>{p1, 2});
  CHECK(f[4] == std::pair<Integer, int>{p3, 1});
  for (int i = 0; i < 50; ++i) {
    Integer n = Integer(std::to_string(rng() >> 32)) * Integer(std::to_string(rng() >> 33)) + 1;
    Integer back = 1;
    for (const auto& [p, e] : arith::factor(n)) {
      CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) != 0);
      for (int j = 0; j < e; ++j) back *= p;
    }
    CHECK(back == n);
  }
}
