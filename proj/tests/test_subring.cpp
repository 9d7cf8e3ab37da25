#include <random>
#include <set>

#include "doctest.h"
#include "pfisterlab/subring.hpp"

using namespace pfl;

namespace {

RationalField QQ;
QtField qt{RationalField{}};

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::set<std::string> names(const std::vector<Place>& places) {
  std::set<std::string> out;
  for (const auto& v : places) out.insert(to_string(v));
  return out;
}

QtElem qte(const char* text) { return parse_element(qt, text); }

// Places among the candidates where the Hilbert symbol is -1.
std::set<std::string> hilbert_sweep(const Rational& a, const Rational& b) {
  std::set<std::string> out;
  for (const auto& v : candidate_places({a, b}))
    if (hilbert_symbol(a, b, v) == -1) out.insert(to_string(v));
  return out;
}

// y^2 + y + c has a root mod p, by trying every y.
bool has_root_mod(const Rational& c, long p) {
  Integer cm = arith::reduce_mod(c, Integer(p));
  for (long y = 0; y < p; ++y)
    if ((Integer(y * y + y) + cm) % p == 0) return true;
  return false;
}

// Pole-free at every place where a0 has odd order (the residue 2-fold is then
// anisotropic over Q because its ramification set is nonempty).
bool rhs_oracle(const QtElem& x, const QtElem& a0) {
  if (qt.is_zero(x)) return true;
  auto places = support(qt, a0);
  places.push_back(DivisorialPlace{std::nullopt});
  for (const auto& w : places)
    if (valuation(qt, a0, w)[0] % 2 != 0 && valuation(qt, x, w).sign() < 0) return false;
  return true;
}

QtElem random_qt(std::mt19937& rng, int maxdeg) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, maxdeg);
  auto poly = [&](bool nonzero) {
    QPoly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p.push_back(Rational(coeff(rng)));
    p = qt.polys().normalize(p);
    if (nonzero && p.empty()) p = qt.polys().one();
    return p;
  };
  return qt.make(poly(false), poly(true));
}

}  // namespace

TEST_CASE("delta0 examples") {
  CHECK(names(delta0(Rational(-1), Rational(-1))) == std::set<std::string>{"p:2", "real"});
  CHECK(delta0(Rational(1), Rational(7)).empty());
  CHECK(delta0(Rational(1), frac(-3, 5)).empty());
  FqtField f3t(FiniteField(3, {0, 1}));
  auto r = delta0(f3t, parse_element(f3t, "t"), parse_element(f3t, "-1"));
  CHECK(names(r) == std::set<std::string>{"fpt:t", "deg"});
}

TEST_CASE("delta0 agrees with a Hilbert symbol sweep") {
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 || b == 0) continue;
      CHECK(names(delta0(Rational(a), Rational(b))) == hilbert_sweep(Rational(a), Rational(b)));
    }
  CHECK(names(delta0(frac(15, 4), frac(2, 9))) == hilbert_sweep(frac(15, 4), frac(2, 9)));
}

TEST_CASE("choose_c examples") {
  Rational c5 = choose_c({PrimePlace{5}});
  CHECK(arith::reduce_mod(c5, Integer(5)) == 1);
  CHECK(choose_c({}) == 1);
  CHECK(choose_c({PrimePlace{3}, PrimePlace{5}}) == 11);
  CHECK_THROWS_AS(choose_c({PrimePlace{2}}), Error);
  CHECK_THROWS_AS(choose_c({RealPlace{}}), Error);

  FqtField f2t(FiniteField(2, {0, 1}));
  auto c = choose_c(f2t, {FptPlace{f2t.base(), FqPoly{f2t.base().zero(), f2t.base().one()}}});
  CHECK(f2t.base().is_one(f2t.polys().eval(c.num, f2t.base().zero())));
  CHECK(f2t.base().is_one(f2t.polys().eval(c.den, f2t.base().zero())));
}

TEST_CASE("choose_c against root enumeration") {
  std::vector<long> primes = {3, 5, 7, 11, 13, 17, 19, 23, 29};
  for (unsigned mask = 0; mask < (1u << primes.size()); mask += 7) {
    std::vector<Place> places;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) places.push_back(PrimePlace{primes[i]});
    Rational c = choose_c(places);
    for (const auto& v : places) {
      long p = std::get<PrimePlace>(v).p.get_si();
      CHECK(valuation(c, v).is_zero());
      CHECK_FALSE(has_root_mod(c, p));
    }
  }
}

TEST_CASE("choose_c over F_p(t) against residue enumeration") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FqtField k(FiniteField(p, {0, 1}));
    std::vector<Place> places;
    for (const char* pi : {"t", "t+1", "t^2+t+1"}) {
      auto poly = parse_element(k, pi).num;
      if (!is_irreducible(k.polys(), poly)) continue;
      places.push_back(FptPlace{k.base(), poly});
    }
    places.push_back(FptPlace{k.base(), std::nullopt});
    auto c = choose_c(k, places);
    for (const auto& v : places) {
      const auto& w = std::get<FptPlace>(v);
      FiniteField rf = residue_field(w);
      CHECK(valuation(k, c, w).is_zero());
      FqElem cb = residue(k, c, w);
      bool root = false;
      for (std::uint32_t y = 0; y < rf.order(); ++y)
        root |= rf.is_zero(rf.add(rf.add(rf.mul(FqElem{y}, FqElem{y}), FqElem{y}), cb));
      CHECK_FALSE(root);
    }
  }
}

TEST_CASE("special_form examples") {
  auto [b0, b1] = special_form(Rational(-1), frac(-1, 4));
  CHECK(b0 == -1);
  CHECK(b1 == -1);
  auto [c0, c1] = special_form(frac(7, 3), Rational(1));
  CHECK(c0 == frac(7, 3));
  CHECK(c1 == 1);

  FqtField f2t(FiniteField(2, {0, 1}));
  auto a0 = parse_element(f2t, "t"), a1 = parse_element(f2t, "(t+1)/t");
  auto ram = delta0(f2t, a0, a1);
  CHECK(ram.size() == 2);
  CHECK(valuation(f2t, a1, std::get<FptPlace>(ram[0])).sign() < 0);
  // <<t, 1/t]] itself is split: (0, t, 1, t) is a zero
  CHECK(delta0(f2t, a0, parse_element(f2t, "1/t")).empty());
  auto [d0, d1] = special_form(f2t, a0, a1);
  CHECK(names(delta0(f2t, d0, d1)) == names(ram));
  for (const auto& v : ram) CHECK(valuation(f2t, d1, std::get<FptPlace>(v)).sign() >= 0);
}

TEST_CASE("special_form over Q keeps ramification and scales by squares") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
  for (int i = 0; i < 150; ++i) {
    Rational a0 = frac(num(rng), den(rng)), a1 = frac(num(rng), den(rng));
    if (a0 == 0 || a1 == 0) continue;
    auto [b0, b1] = special_form(a0, a1);
    CHECK(b0 == a0);
    CHECK(arith::is_square(Rational(b1 / a1)));
    auto ram = delta0(a0, a1);
    CHECK(hilbert_sweep(b0, b1) == names(ram));
    for (const auto& v : ram)
      if (std::holds_alternative<PrimePlace>(v)) CHECK(valuation(b1, v).sign() >= 0);
  }
}

TEST_CASE("special_form over F_3(t) and F_2(t)") {
  std::mt19937 rng(5);
  for (std::uint32_t p : {3u, 2u}) {
    FqtField k(FiniteField(p, {0, 1}));
    const char* a0s[] = {"t", "t+1", "t^2+1", "1/t", "t/(t+1)"};
    const char* a1s[] = {"1/t", "1/t^3", "(t+1)/t^2", "1/(t^2+t+1)", "t^3"};
    for (auto s0 : a0s)
      for (auto s1 : a1s) {
        auto a0 = parse_element(k, s0), a1 = parse_element(k, s1);
        auto ram = delta0(k, a0, a1);
        auto [b0, b1] = special_form(k, a0, a1);
        CHECK(names(delta0(k, b0, b1)) == names(ram));
        for (const auto& v : ram) CHECK(valuation(k, b1, std::get<FptPlace>(v)).sign() >= 0);
        if (p != 2) CHECK(is_square(k, k.div(b1, a1)));
      }
  }
}

TEST_CASE("ring instance for <<t,15,2]]") {
  auto inst = make_ring_instance(qte("t"), Rational(15), Rational(2));
  CHECK(names(inst.delta0) == std::set<std::string>{"p:3", "p:5"});
  CHECK(qt.constant_value(inst.s.c) == 11);
  CHECK(inst.big_c == 15);
  std::vector<Place> locus(inst.locus.begin(), inst.locus.end());
  CHECK(names(locus) ==
        std::set<std::string>{"comp:div:t/p:3", "comp:div:t/p:5", "comp:deg/p:3", "comp:deg/p:5"});
  CHECK(inst.s.flags.residue_irreducible);

  // a2 with a pole at a ramified prime is normalized first
  auto scaled = make_ring_instance(qte("t"), Rational(15), frac(2, 9));
  CHECK(qt.constant_value(scaled.s.q.symbols[2]) == 2);

  CHECK_THROWS_AS(make_ring_instance(qte("t"), Rational(-1), Rational(-1)), Error);
  auto bad = inst;
  bad.big_c = 3;
  CHECK_THROWS_AS(verify_ring_instance(bad), Error);
}

TEST_CASE("ring_rhs_member examples and oracle") {
  auto inst = make_ring_instance(qte("t"), Rational(15), Rational(2));
  CHECK(ring_rhs_member(qte("7/3"), inst));
  CHECK_FALSE(ring_rhs_member(qte("1/t"), inst));
  CHECK(ring_rhs_member(qte("t/(t-2)"), inst));
  CHECK(ring_rhs_member(qte("t^2/(t^2+1)"), inst));
  CHECK(ring_rhs_member(qte("1/(t-1)"), inst));
  CHECK_FALSE(ring_rhs_member(qte("t^2"), inst));
  CHECK(ring_rhs_member(qte("1/(t^2+1)"), inst));

  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto x = random_qt(rng, 2);
    CHECK(ring_rhs_member(x, inst) == rhs_oracle(x, inst.s.q.symbols[0]));
  }
  auto inst2 = make_ring_instance(qte("t^2-t"), Rational(15), Rational(2));
  for (int i = 0; i < 100; ++i) {
    auto x = random_qt(rng, 2);
    CHECK(ring_rhs_member(x, inst2) == rhs_oracle(x, inst2.s.q.symbols[0]));
  }
}

TEST_CASE("ring_lhs_member examples") {
  auto inst = make_ring_instance(qte("t"), Rational(15), Rational(2));
  auto zero = ring_lhs_member(qt.zero(), inst);
  CHECK(zero.member);
  CHECK(*zero.scaling == 1);

  auto scalar = ring_lhs_member(qte("7/3"), inst);
  CHECK(scalar.member);
  REQUIRE(scalar.scaling);
  // the scaled element lies in the maximal ideal of every locus place
  for (const auto& v : inst.locus) CHECK(valuation(qt, qt.scale(qte("7/3"), *scalar.scaling), v).sign() > 0);

  auto pole = ring_lhs_member(qte("1/t"), inst);
  CHECK_FALSE(pole.member);
  REQUIRE(pole.pole);
  CHECK(to_string(Place{*pole.pole}) == "comp:div:t/p:3");
  CHECK(pole.detail.conditional_on.empty());
}

TEST_CASE("ring_lhs_member agrees with ring_rhs_member") {
  auto inst = make_ring_instance(qte("t"), Rational(15), Rational(2));
  std::mt19937 rng(17);
  int members = 0;
  for (int i = 0; i < 40; ++i) {
    auto x = random_qt(rng, 2);
    auto lhs = ring_lhs_member(x, inst);
    bool rhs = ring_rhs_member(x, inst);
    CHECK(lhs.member == rhs);
    members += lhs.member;
    if (lhs.member && lhs.detail.witness) CHECK(rhs);
    if (!lhs.member) CHECK(lhs.detail.conditional_on.empty());
  }
  CHECK(members > 0);
}

TEST_CASE("bad_divisor examples") {
  CHECK(bad_divisor(qte("t^2+3")).integral);
  auto a = bad_divisor(qte("1/(t-2)"));
  CHECK_FALSE(a.integral);
  CHECK(to_string(Place{*a.bad}) == "div:t-2");
  auto b = bad_divisor(qte("(t^3+1)/(t^2+1)"));
  CHECK(to_string(Place{*b.bad}) == "div:t^2+1");
}

TEST_CASE("bad_divisor exhaustive over small numerators and denominators") {
  std::vector<QPoly> polys;
  for (int code = 0; code < 625; ++code) {
    QPoly p;
    for (int r = code, i = 0; i < 4; ++i, r /= 5) p.push_back(Rational(r % 5 - 2));
    polys.push_back(qt.polys().normalize(p));
  }
  long checked = 0;
  for (const auto& den : polys) {
    if (den.empty()) continue;
    for (std::size_t j = 0; j < polys.size(); ++j) {
      auto x = qt.make(polys[j], den);
      auto cert = bad_divisor(x);
      CHECK(cert.integral == qt.is_polynomial(x));
      if (!cert.integral) {
        CHECK(is_irreducible(qt.polys(), *cert.bad->pi));
        CHECK(valuation(qt, x, *cert.bad).sign() < 0);
      }
      ++checked;
    }
  }
  CHECK(checked == 624 * 625);
}

TEST_CASE("anisotropic_form_over Q(sqrt -1) and Q(sqrt 5)") {
  for (auto [b, c] : {std::pair{0L, 1L}, std::pair{0L, -5L}}) {
    auto made = anisotropic_form_over(Rational(b), Rational(c));
    const auto& s = made.form.symbols;
    auto p = std::get<PrimePlace>(made.split_place).p;
    // split: the discriminant is a nonzero square mod p
    CHECK(legendre(Integer(b * b - 4 * c), p) == 1);
    if (c == 1) CHECK(p % 4 == 1);
    CHECK(hilbert_symbol(s[0], s[1], made.split_place) == -1);
    CHECK(hilbert_symbol(s[0], s[1], PrimePlace{2}) == 1);
    CHECK(hilbert_symbol(s[0], s[1], RealPlace{}) == 1);
    CHECK_FALSE(isotropic_over_etale(QQ, made.form, Rational(b), Rational(c)).isotropic);
    CHECK_FALSE(witness_search(EtaleAlgebra<RationalField>(QQ, Rational(b), Rational(c)), made.form, 6));
  }
  auto red = anisotropic_form_over(Rational(0), Rational(-1));
  CHECK_FALSE(isotropic_global(QQ, red.form).first.isotropic);
  CHECK_THROWS_AS(anisotropic_form_over(Rational(2), Rational(1)), Error);
}

TEST_CASE("anisotropic_form_over F_p(t)") {
  FqtField f3t(FiniteField(3, {0, 1}));
  auto made = anisotropic_form_over(f3t, f3t.zero(), parse_element(f3t, "-t"));
  CHECK_FALSE(isotropic_over_etale(f3t, made.form, f3t.zero(), parse_element(f3t, "-t")).isotropic);
  CHECK(tame_symbol(f3t, made.form.symbols[0], made.form.symbols[1], std::get<FptPlace>(made.split_place)) == -1);

  FqtField f2t(FiniteField(2, {0, 1}));
  auto b = f2t.one(), c = parse_element(f2t, "t");
  auto made2 = anisotropic_form_over(f2t, b, c);
  CHECK_FALSE(isotropic_over_etale(f2t, made2.form, b, c).isotropic);
  CHECK(place_splits(f2t, b, c, std::get<FptPlace>(made2.split_place)));
}

TEST_CASE("anisotropic 3-fold over Q(s)") {
  auto made = anisotropic_form_over(qt, qt.zero(), qt.one());
  const auto& s = made.form.symbols;
  CHECK(qt.equal(s[0], qt.t()));
  CHECK(qt.is_constant(s[1]));
  CHECK(qt.is_constant(s[2]));
  // inner form survives over Q(i)
  PfisterForm<Rational> inner{{qt.constant_value(s[1]), qt.constant_value(s[2])}};
  CHECK_FALSE(isotropic_over_etale(QQ, inner, Rational(0), Rational(1)).isotropic);
  CHECK_THROWS_AS(anisotropic_form_over(qt, qt.zero(), qt.t()), Error);
}

TEST_CASE("separating_form") {
  DivisorialPlace deg{std::nullopt};
  DivisorialPlace at0{qte("t").num}, at1{qte("t-1").num}, at_i{qte("t^2+1").num};

  auto q = separating_form(at0, {deg});
  CHECK(valuation(qt, q.symbols[0], at0) == Value(1));
  CHECK(residue(qt, q.symbols[0], deg) == 1);
  CHECK_FALSE(isotropic_henselian(qt, q, at0).isotropic);
  CHECK(isotropic_henselian(qt, q, deg).isotropic);

  auto q0 = separating_form(at0, {});
  CHECK(qt.equal(q0.symbols[0], qt.t()));

  auto q1 = separating_form(at1, {deg});
  CHECK(valuation(qt, q1.symbols[0], at1) == Value(1));
  CHECK(residue(qt, q1.symbols[0], deg) == 1);

  auto q2 = separating_form(at_i, {deg, at0});
  CHECK(valuation(qt, q2.symbols[0], at_i) == Value(1));
  CHECK(residue(qt, q2.symbols[0], at0) == 1);
  PfisterForm<Rational> inner{{qt.constant_value(q2.symbols[1]), qt.constant_value(q2.symbols[2])}};
  CHECK_FALSE(isotropic_over_etale(QQ, inner, Rational(0), Rational(1)).isotropic);

  CHECK_THROWS_AS(separating_form(deg, {deg}), Error);
}
