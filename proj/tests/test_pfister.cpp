#include <random>

#include "doctest.h"
#include "pfisterlab/pfister.hpp"

using namespace pfl;

namespace {

RationalField QQ;
QtField qt{RationalField{}};

// Brute-force isotropy over a finite field: some nonzero vector is a zero.
bool brute_isotropic(const FiniteField& k, const PfisterForm<FqElem>& q) {
  auto f = expand(k, q);
  std::size_t n = std::visit([](const auto& g) { return g.coeffs.size(); }, f);
  if (k.characteristic() == 2) n *= 2;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k.order();
  std::vector<FqElem> v(n);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= k.order()) v[i] = FqElem{static_cast<std::uint32_t>(c % k.order())};
    if (k.is_zero(evaluate(k, f, v))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("expand examples") {
  auto one = expand(QQ, PfisterForm<Rational>{{Rational(3)}});
  auto d1 = std::get<DiagonalForm<Rational>>(one);
  CHECK(d1.coeffs == std::vector<Rational>{1, -3});

  Rational a = 3, b = 7;
  // Oracle: (1, -b) _|_ (-a)(1, -b).
  std::vector<Rational> inner = {1, -b};
  std::vector<Rational> expected = inner;
  for (auto c : inner) expected.push_back(-a * c);
  auto d2 = std::get<DiagonalForm<Rational>>(expand(QQ, PfisterForm<Rational>{{a, b}}));
  CHECK(d2.coeffs == expected);
  CHECK(d2.coeffs == std::vector<Rational>{1, -7, -3, 21});

  FiniteField f4 = FiniteField::of_order(4);
  FqElem z = f4.generator();
  auto blocks = std::get<BlockForm<FqElem>>(expand(f4, PfisterForm<FqElem>{{z, f4.one()}}));
  CHECK(blocks.coeffs == std::vector<FqElem>{f4.one(), z});
  CHECK(blocks.as_param == f4.one());
  // The Artin-Schreier slot may be zero, the other slots may not.
  CHECK_NOTHROW(expand(f4, PfisterForm<FqElem>{{z, f4.zero()}}));
  CHECK_THROWS_AS(expand(f4, PfisterForm<FqElem>{{f4.zero(), z}}), Error);
  CHECK_THROWS_AS(expand(QQ, PfisterForm<Rational>{{Rational(0)}}), Error);
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(QQ, PfisterForm<Rational>{{Rational(1)}}, {1, 1}) == 0);
  CHECK(evaluate(QQ, PfisterForm<Rational>{{Rational(-1), Rational(-1)}}, {1, 1, 1, 1}) == 4);
  CHECK(evaluate(QQ, PfisterForm<Rational>{{Rational(5), Rational(2), Rational(-3)}}, std::vector<Rational>(8, 0)) == 0);
  CHECK_THROWS_AS(evaluate(QQ, PfisterForm<Rational>{{Rational(2)}}, {1, 1, 1}), Error);
  FiniteField f2 = FiniteField::prime(2);
  // x^2 + xy + y^2 at (1,1) is 1 over F2.
  CHECK(evaluate(f2, PfisterForm<FqElem>{{f2.one()}}, {f2.one(), f2.one()}) == f2.one());
}

TEST_CASE("expansion follows the inductive rule for k <= 4") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    for (std::size_t k = 2; k <= 4; ++k) {
      PfisterForm<Rational> q;
      for (std::size_t i = 0; i < k; ++i) {
        long a = static_cast<long>(rng() % 19) - 9;
        q.symbols.push_back(Rational(a == 0 ? 5 : a));
      }
      PfisterForm<Rational> tail{std::vector<Rational>(q.symbols.begin() + 1, q.symbols.end())};
      auto full = std::get<DiagonalForm<Rational>>(expand(QQ, q)).coeffs;
      auto rest = std::get<DiagonalForm<Rational>>(expand(QQ, tail)).coeffs;
      std::vector<Rational> expected = rest;
      for (auto c : rest) expected.push_back(-q.symbols[0] * c);
      CHECK(full == expected);
      CHECK(full.size() == (std::size_t{1} << k));
      CHECK(full[0] == 1);
    }
  }
}

TEST_CASE("isotropy is invariant under square scaling of a symbol, q <= 9") {
  for (std::uint32_t order : {3u, 5u, 7u, 9u}) {
    FiniteField k = FiniteField::of_order(order);
    for (std::uint32_t a = 1; a < order; ++a) {
      for (std::uint32_t s = 1; s < order; ++s) {
        FqElem s2 = k.mul(FqElem{s}, FqElem{s});
        CHECK(brute_isotropic(k, {{FqElem{a}}}) == brute_isotropic(k, {{k.mul(FqElem{a}, s2)}}));
      }
    }
    if (order > 5) continue;
    for (std::uint32_t a = 1; a < order; ++a)
      for (std::uint32_t b = 1; b < order; ++b)
        for (std::uint32_t s = 1; s < order; ++s) {
          FqElem s2 = k.mul(FqElem{s}, FqElem{s});
          bool base = brute_isotropic(k, {{FqElem{a}, FqElem{b}}});
          CHECK(base == brute_isotropic(k, {{k.mul(FqElem{a}, s2), FqElem{b}}}));
          CHECK(base == brute_isotropic(k, {{FqElem{a}, k.mul(FqElem{b}, s2)}}));
        }
  }
}

TEST_CASE("springer split examples") {
  // <<t, 2]] at div:t: diagonal (1, -2, -t, 2t).
  auto v = std::get<DivisorialPlace>(parse_place("div:t", qt));
  PfisterForm<QtField::Elem> q{{parse_element(qt, "t"), parse_element(qt, "2")}};
  auto split = springer_split(qt, q, v);
  auto q0 = std::get<DiagonalForm<Rational>>(split.q0).coeffs;
  auto q1 = std::get<DiagonalForm<Rational>>(split.q1).coeffs;
  CHECK(q0 == std::vector<Rational>{1, -2});
  // The pi-part is (-1) times the unit part, as in q _|_ (-pi) q.
  CHECK(q1 == std::vector<Rational>{-1, 2});

  // <<5, 2]] over Q at 5: diagonal (1, -2, -5, 10).
  auto s5 = springer_split(QQ, PfisterForm<Rational>{{Rational(5), Rational(2)}}, PrimePlace{5});
  FiniteField f5 = FiniteField::prime(5);
  auto r0 = std::get<DiagonalForm<FqElem>>(s5.q0).coeffs;
  auto r1 = std::get<DiagonalForm<FqElem>>(s5.q1).coeffs;
  CHECK(r0 == std::vector<FqElem>{f5.one(), f5.from_int(-2)});
  CHECK(r1 == std::vector<FqElem>{f5.from_int(-1), f5.from_int(2)});
  CHECK(s5.shifts == std::vector<long>{0, 0, 0, 0});

  // All symbols units: nothing lands in q1.
  auto units = springer_split(QQ, PfisterForm<Rational>{{Rational(2), Rational(3)}}, PrimePlace{7});
  CHECK(std::get<DiagonalForm<FqElem>>(units.q1).coeffs.empty());
  CHECK(std::get<DiagonalForm<FqElem>>(units.q0).coeffs.size() == 4);

  // Even powers are divided out and recorded.
  auto even = springer_split(QQ, PfisterForm<Rational>{{Rational(75), Rational(2)}}, PrimePlace{5});
  CHECK(even.shifts == std::vector<long>{0, 0, 2, 2});
  CHECK(std::get<DiagonalForm<FqElem>>(even.q1).coeffs.empty());

  CHECK_THROWS_AS(springer_split(QQ, PfisterForm<Rational>{{Rational(5), Rational(2)}}, PrimePlace{2}), Error);
}

TEST_CASE("springer split in characteristic 2") {
  FqtField f2t(FiniteField::prime(2));
  auto v = std::get<FptPlace>(parse_place("fpt:t", f2t));
  PfisterForm<FqtField::Elem> q{{parse_element(f2t, "t"), parse_element(f2t, "1")}};
  auto split = springer_split(f2t, q, v);
  auto b0 = std::get<BlockForm<FqElem>>(split.q0);
  auto b1 = std::get<BlockForm<FqElem>>(split.q1);
  CHECK(b0.coeffs.size() == 1);
  CHECK(b1.coeffs.size() == 1);
  CHECK(b0.as_param == FqElem{1});
  PfisterForm<FqtField::Elem> bad{{parse_element(f2t, "t"), parse_element(f2t, "1/t")}};
  CHECK_THROWS_AS(springer_split(f2t, bad, v), Error);
}

TEST_CASE("parity of values when the pi-part is switched off") {
  // <<5,2]] at 5: both residue forms are anisotropic, so with the pi-part
  // coordinates divisible by 5 the value has even valuation.
  std::mt19937 rng(17);
  PfisterForm<Rational> q{{Rational(5), Rational(2)}};
  auto split = springer_split(QQ, q, PrimePlace{5});
  REQUIRE(std::get<DiagonalForm<FqElem>>(split.q1).coeffs.size() == 2);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> v(4);
    for (auto& x : v) x = Rational(static_cast<long>(rng() % 201) - 100);
    // Coordinates 3 and 4 carry the odd-valuation coefficients -5 and 10.
    v[2] *= 5;
    v[3] *= 5;
    Rational val = evaluate(QQ, q, v);
    if (val == 0) continue;
    CHECK(arith::valuation(val, 5) % 2 == 0);
    ++checked;
  }
  CHECK(checked > 90);
}
