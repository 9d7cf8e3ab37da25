// Acceptance run: one PASS/FAIL line per criterion, limits pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pfisterlab/folang.hpp"
#include "pfisterlab/subring.hpp"

using namespace pfl;

namespace {

constexpr double kLimit1 = 60, kLimit2 = 30, kLimit3 = 300, kLimit4 = 10, kLimit5 = 60;
constexpr double kLimit6 = 300, kLimit7 = 30, kLimit8 = 180, kLimit9 = 120;
constexpr long kHeightReciprocity = 50;
constexpr long kHeightOracle = 10;
constexpr long kOracleBudget = 200;
constexpr long kPrimeBudget = 1000;
constexpr long kDegreeBudget = 4;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool report(int id, const char* title, double limit, const std::function<Outcome()>& run) {
  auto start = Clock::now();
  Outcome out;
  try {
    out = run();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool pass = out.pass && secs < limit;
  std::printf("criterion %d: %s  %s | %s | %.1fs (limit %.0fs)\n", id, pass ? "PASS" : "FAIL", title,
              out.detail.c_str(), secs, limit);
  std::fflush(stdout);
  return pass;
}

std::vector<Rational> rationals_of_height(long h) {
  std::vector<Rational> out;
  for (long d = 1; d <= h; ++d)
    for (long n = -h; n <= h; ++n)
      if (n != 0 && std::gcd(n, d) == 1) out.push_back(Rational(n, d));
  return out;
}

std::vector<PfisterForm<FqElem>> all_forms(const FiniteField& k, std::size_t fold) {
  std::vector<PfisterForm<FqElem>> out;
  bool char2 = k.characteristic() == 2;
  std::vector<std::uint32_t> idx(fold, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == fold) {
      PfisterForm<FqElem> q;
      for (auto e : idx) q.symbols.push_back(FqElem{e});
      out.push_back(q);
      return;
    }
    for (std::uint32_t e = (char2 && i + 1 == fold) ? 0 : 1; e < k.order(); ++e) {
      idx[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::string count(long good, long total) { return std::to_string(good) + "/" + std::to_string(total); }

// 1. three characterisations of membership over finite fields
Outcome definition_routes() {
  long total = 0, agree = 0;
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 9u}) {
    FiniteField k = FiniteField::of_order(q);
    for (std::size_t fold : {1u, 2u})
      for (const auto& form : all_forms(k, fold))
        for (std::uint32_t c = 0; c < q; ++c)
          for (std::uint32_t x = 0; x < q; ++x) {
            auto r = s_routes(SInstance<FiniteField>{k, FqElem{c}, form, {}}, FqElem{x});
            ++total;
            agree += r.definition == r.projective && r.projective == r.unit_ideal;
          }
  }
  return {agree == total, count(agree, total) + " agree"};
}

// 2. product formula for the local symbols
Outcome reciprocity() {
  auto values = rationals_of_height(kHeightReciprocity);
  // Only 2, the real place and primes dividing a or b can contribute -1.
  std::vector<Place> prime_places;
  std::vector<std::vector<std::size_t>> support(values.size());
  for (long p = 2; p <= kHeightReciprocity; ++p) {
    bool prime = true;
    for (long d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (p > 2 && (values[i].get_num() % p == 0 || values[i].get_den() % p == 0))
        support[i].push_back(prime_places.size());
    prime_places.push_back(PrimePlace{p});
  }
  const Place real = RealPlace{};
  long violations = 0, pairs = 0;
  std::vector<std::size_t> places;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j) {
      places.assign(1, 0);
      std::set_union(support[i].begin(), support[i].end(), support[j].begin(), support[j].end(),
                     std::back_inserter(places));
      int product = hilbert_symbol(values[i], values[j], real);
      for (auto idx : places) product *= hilbert_symbol(values[i], values[j], prime_places[idx]);
      ++pairs;
      violations += product != 1;
    }
  return {violations == 0, std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

// 3. decider against bounded witness search
Outcome oracle_agreement() {
  RationalField k;
  auto values = rationals_of_height(kHeightOracle);
  long forms = 0, mismatches = 0, isotropic = 0;
  for (const auto& a : values)
    for (const auto& b : values) {
      PfisterForm<Rational> q{{a, b}};
      bool decided = isotropic_global(k, q, 0).first.isotropic;
      auto w = witness_search(k, q, kOracleBudget);
      if (w && evaluate(k, q, *w) != 0) ++mismatches;
      ++forms;
      isotropic += decided;
      mismatches += decided != w.has_value();
    }
  return {mismatches == 0, std::to_string(forms) + " forms, " + std::to_string(isotropic) + " isotropic, " +
                               std::to_string(mismatches) + " mismatches"};
}

// 4. membership over the henselisation at 5
Outcome henselian_sandwich() {
  RationalField k;
  SInstance<RationalField> inst{k, 1, PfisterForm<Rational>{{5, 2}}, {}};
  PrimePlace p5{5};
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> unit(1, 400), sign(0, 1), power(1, 3);
  auto sample_unit = [&]() {
    while (true) {
      long n = unit(rng), d = unit(rng);
      if (n % 5 && d % 5) return Rational(sign(rng) ? n : -n, d);
    }
  };
  long positive = 0, negative = 0, boundary = 0, unresolved = 0;
  for (int i = 0; i < 50; ++i) {
    Rational x = sample_unit();
    long e = power(rng);
    Rational scale = 1;
    for (long j = 0; j < e; ++j) scale *= 5;
    positive += s_member_henselian(Rational(x * scale), inst, p5).is_member();
    negative += s_member_henselian(Rational(x / scale), inst, p5).member == Membership::NonMember;
  }
  for (int i = 0; i < 50; ++i) {
    auto r = s_member_henselian(sample_unit(), inst, p5);
    unresolved += r.member == Membership::Unresolved;
    boundary += r.member != Membership::Unresolved;
  }
  return {positive == 50 && negative == 50 && unresolved == 0,
          "v>0 members " + count(positive, 50) + ", v<0 non-members " + count(negative, 50) + ", v=0 resolved " +
              count(boundary, 50)};
}

// 5. uniformizer against a unit with anisotropic residue form
Outcome uniformizer_sweep() {
  std::mt19937 rng(35);
  long instances = 0, anisotropic = 0, spot = 0, spot_clean = 0;
  // F_3(t): monic irreducible pi of degree 1 or 2, unit with non-square residue
  FqtField k(FiniteField::prime(3));
  std::uniform_int_distribution<std::uint32_t> coeff(0, 2);
  while (instances < 50) {
    FqPoly pi{FqElem{coeff(rng)}, FqElem{coeff(rng)}, FqElem{1}};
    if (rng() % 2) pi = {FqElem{coeff(rng)}, FqElem{1}};
    if (!is_irreducible(k.polys(), pi)) continue;
    FqPoly num{FqElem{coeff(rng)}, FqElem{coeff(rng)}, FqElem{coeff(rng)}};
    FqPoly den{FqElem{coeff(rng)}, FqElem{1}};
    num = k.polys().normalize(num);
    if (num.empty()) continue;
    auto u = k.make(num, den);
    FptPlace v{k.base(), pi};
    if (valuation(k, u, v)[0] != 0) continue;
    if (residue_field(v).is_square(residue(k, u, v))) continue;
    PfisterForm<FqtElem> q{{k.from_poly(pi), u}};
    ++instances;
    anisotropic += !isotropic_henselian(k, q, v).isotropic;
    if (spot < 10) {
      ++spot;
      spot_clean += !witness_search(k, q, 2).has_value();
    }
  }
  // Q: odd prime, integer unit that is a non-square modulo it
  RationalField qq;
  const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  std::uniform_int_distribution<long> numer(-60, 60), denom(1, 30);
  while (instances < 100) {
    long p = primes[rng() % 10];
    Rational u(numer(rng), denom(rng));
    if (u == 0) continue;
    PrimePlace v{p};
    if (valuation(u, v)[0] != 0) continue;
    if (residue_field(v).is_square(residue(u, v))) continue;
    PfisterForm<Rational> q{{Rational(p), u}};
    ++instances;
    anisotropic += !isotropic_henselian(qq, q, v).isotropic;
    if (spot < 20) {
      ++spot;
      spot_clean += !witness_search(qq, q, 30).has_value();
    }
  }
  return {anisotropic == 100 && spot_clean == 20,
          "anisotropic " + count(anisotropic, 100) + ", witness-free spot checks " + count(spot_clean, 20)};
}

// 6. the two descriptions of the subring on a designated set
Outcome ring_instance() {
  QtField k{RationalField{}};
  RingInstance inst = make_ring_instance(k.t(), 15, 2);
  const char* elements[] = {
      // polynomials
      "0", "1", "t", "t^2+1", "t^3-2*t+5", "3*t^2-7", "(t-1)^2", "2*t",
      // constants
      "7/3", "-5", "1/2", "15", "1/15", "11/9", "-4/25", "1/3",
      // poles away from the locus
      "1/(t-1)", "t/(t-2)", "t^2/(t^2+1)", "1/(t^2+1)", "(t+3)/(t^2-2)", "5/(2*t+1)",
      // poles at div:t
      "1/t", "(t+1)/t", "1/(t*(t-1))", "(5*t^2+1)/t^3", "3/t^2",
      // poles at both locus divisors
      "(t^3+1)/t", "t^2+1/t", "(t^4-t)/(t^2+1)"};
  long total = 0, agree = 0, witnessed = 0, witness_ok = 0, conditional = 0, labelled = 0;
  for (const char* text : elements) {
    auto x = parse_element(k, text);
    bool rhs = ring_rhs_member(x, inst);
    auto lhs = ring_lhs_member(x, inst);
    ++total;
    agree += lhs.member == rhs;
    if (lhs.member && lhs.detail.witness) {
      ++witnessed;
      witness_ok += rhs;
    }
    if (!lhs.detail.conditional_on.empty()) {
      ++conditional;
      for (const auto& label : lhs.detail.conditional_on) labelled += label == kLocGlobPrinciple;
    }
  }
  return {agree == total && witness_ok == witnessed && labelled == conditional,
          "lhs=rhs " + count(agree, total) + ", witnessed members " + std::to_string(witnessed) +
              ", conditional verdicts " + std::to_string(conditional) + " (labelled " + std::to_string(labelled) +
              ")"};
}

// 7. anisotropic forms over two quadratic fields
Outcome constructor() {
  RationalField k;
  struct Target {
    const char* name;
    Rational b, c;
  };
  long ok = 0;
  std::string detail;
  for (const auto& [name, b, c] : {Target{"Q(sqrt(-1))", 0, 1}, Target{"Q(sqrt(5))", -1, -1}}) {
    auto made = anisotropic_form_over(b, c, kPrimeBudget);
    bool aniso = !isotropic_over_etale(k, made.form, b, c, 0).isotropic;
    const auto& s = made.form.symbols;
    bool dyadic = hilbert_symbol(s[0], s[1], PrimePlace{2}) == 1;
    bool real = hilbert_symbol(s[0], s[1], RealPlace{}) == 1;
    ok += aniso && dyadic && real && made.places_tried <= kPrimeBudget;
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + to_string(k, made.form) + " after " +
              std::to_string(made.places_tried) + " primes";
  }
  return {ok == 2, detail};
}

// 8. the emitted formula against direct membership
Outcome formula_faithfulness() {
  long total = 0, agree = 0;
  for (std::uint32_t q : {3u, 4u, 5u}) {
    FiniteField k = FiniteField::of_order(q);
    for (std::size_t fold : {1u, 2u}) {
      auto f = fo::emit_s_formula(fold, k.characteristic() == 2 ? 2 : 0);
      for (const auto& form : all_forms(k, fold))
        for (std::uint32_t c = 0; c < q; ++c)
          for (std::uint32_t x = 0; x < q; ++x) {
            fo::Assignment a{{"x", FqElem{x}}, {"c", FqElem{c}}};
            for (std::size_t i = 0; i < fold; ++i) a["a" + std::to_string(i + 1)] = form.symbols[i];
            bool direct = s_member_direct(FqElem{x}, SInstance<FiniteField>{k, FqElem{c}, form, {}}).is_member();
            ++total;
            agree += fo::eval(f, a, k) == direct;
          }
    }
  }
  return {agree == total, count(agree, total) + " agree"};
}

// 9. 3-fold forms with linear symbols over F_3(t)
Outcome three_fold_sweep() {
  FqtField k(FiniteField::prime(3));
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::uint32_t> coeff(0, 2);
  auto symbol = [&]() {
    while (true) {
      auto s = k.from_poly(k.polys().normalize(FqPoly{FqElem{coeff(rng)}, FqElem{coeff(rng)}}));
      if (!k.is_zero(s)) return s;
    }
  };
  long instances = 0, isotropic_everywhere = 0, places = 0, found = 0;
  for (; instances < 200; ++instances) {
    PfisterForm<FqtElem> q{{symbol(), symbol(), symbol()}};
    bool all = true;
    for (const auto& v : candidate_places(k, q.symbols)) {
      ++places;
      all = all && isotropic_henselian(k, q, v).isotropic;
    }
    isotropic_everywhere += all;
    if (instances < 20) {
      auto w = witness_search(k, q, kDegreeBudget);
      found += w && k.is_zero(evaluate(k, q, *w));
    }
  }
  return {isotropic_everywhere == 200 && found == 20,
          "isotropic at all " + std::to_string(places) + " places in " + count(isotropic_everywhere, 200) +
              " instances, witnesses " + count(found, 20)};
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments select criteria by number
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Entry {
    int id;
    const char* title;
    double limit;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {1, "membership routes over F_3..F_9", kLimit1, definition_routes},
      {2, "Hilbert reciprocity, height 50", kLimit2, reciprocity},
      {3, "decider vs witness search over Q", kLimit3, oracle_agreement},
      {4, "henselian sandwich at 5", kLimit4, henselian_sandwich},
      {5, "uniformizer sweep over F_3(t) and Q", kLimit5, uniformizer_sweep},
      {6, "ring instance <<t,15,2]]", kLimit6, ring_instance},
      {7, "anisotropic forms over quadratic fields", kLimit7, constructor},
      {8, "formula faithfulness over F_3, F_4, F_5", kLimit8, formula_faithfulness},
      {9, "3-fold forms over F_3(t)", kLimit9, three_fold_sweep},
  };
  bool ok = true;
  for (const auto& e : entries)
    if (only.empty() || only.count(e.id)) ok &= report(e.id, e.title, e.limit, e.run);
  std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
