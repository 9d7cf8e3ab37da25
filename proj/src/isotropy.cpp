#include "pfisterlab/isotropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pfl {

namespace {

using QtElem = QtField::Elem;
using FqtElem = FqtField::Elem;

// Odometer over [0, base)^n, last coordinate fastest.  False on wrap-around.
bool advance(std::vector<std::uint32_t>& idx, std::size_t from, std::uint32_t base) {
  for (std::size_t i = idx.size(); i-- > from;) {
    if (++idx[i] < base) return true;
    idx[i] = 0;
  }
  return false;
}

Rational power(const Integer& p, long e) {
  Integer m;
  mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, m) : Rational(m);
}

// Bit of symbol i in the index of an expanded diagonal coefficient.
std::size_t bit_of(std::size_t fold, std::size_t i) { return std::size_t{1} << (fold - 1 - i); }

std::string describe(const FiniteField& k, const ExpandedForm<FqElem>& f) { return to_string(k, f); }

std::string describe(const RationalField& k, const DiagonalForm<Rational>& f) {
  return to_string(k, ExpandedForm<Rational>(f));
}

FqtElem lift(const FqtField& k, const FptPlace& v, FqElem e) {
  if (v.is_degree()) return k.from_base(e);
  FiniteField res = residue_field(v);
  FqPoly p;
  for (auto d : res.digits(e)) p.push_back(k.base().from_int(d));
  return k.from_poly(k.polys().normalize(p));
}

template <class T>
bool exact_sqrt(const T& n, T& root) {
  if (n < 0) return false;
  if constexpr (std::is_same_v<T, long>) {
    static const bool square_mod16[16] = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
    if (!square_mod16[n & 15]) return false;
    long r = static_cast<long>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    root = r;
    return r * r == n;
  } else {
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    root = arith::isqrt(n);
    return true;
  }
}

template <class T>
std::optional<std::vector<T>> small_zero(const std::vector<T>& e, long budget, int nonzero) {
  std::size_t m = e.size() - 1;
  std::vector<std::uint32_t> idx(e.size(), 0);
  for (long h = 1; h <= budget; ++h) {
    std::fill(idx.begin(), idx.end(), 0);
    do {
      bool on_shell = false;
      for (std::size_t i = 1; i <= m; ++i) on_shell |= idx[i] == static_cast<std::uint32_t>(h);
      if (!on_shell) continue;
      T s = 0;
      for (std::size_t i = 1; i <= m; ++i) s += e[i] * T(idx[i]) * T(idx[i]);
      T t = -s;
      if (t % e[0] != 0) continue;
      t /= e[0];
      T x0;
      if (!exact_sqrt(t, x0)) continue;
      std::vector<T> out{x0};
      for (std::size_t i = 1; i <= m; ++i) out.push_back(T(idx[i]));
      if (nonzero >= 0 && out[nonzero] == 0) continue;
      return out;
    } while (advance(idx, 1, static_cast<std::uint32_t>(h + 1)));
  }
  return std::nullopt;
}

// Squarefree part and square root of the cofactor: x = kernel * root^2.
std::pair<Integer, Rational> square_class(const Rational& x) {
  Integer k = arith::squarefree_kernel(x);
  Rational r2 = x / k;
  Rational r(arith::isqrt(r2.get_num()), arith::isqrt(r2.get_den()));
  return {k, r};
}

// Tuples of polynomials over F_q with degrees <= budget, by increasing
// maximal degree; the first nonzero entry is monic.
template <class Visit>
bool for_poly_tuples(const FqPolys& ring, std::size_t m, long budget, Visit&& visit) {
  const FiniteField& f = ring.base();
  std::uint32_t q = f.order();
  for (long d = 0; d <= budget; ++d) {
    std::uint64_t count = 1, shell = 1;
    for (long i = 0; i <= d; ++i) count *= q;
    shell = count / q;
    if (count > (1u << 24)) return false;
    std::vector<std::uint32_t> idx(m, 0);
    auto poly_of = [&](std::uint64_t code) {
      FqPoly p;
      while (code) {
        p.push_back(FqElem{static_cast<std::uint32_t>(code % q)});
        code /= q;
      }
      return ring.normalize(p);
    };
    do {
      bool on_shell = false;
      for (auto c : idx) on_shell |= (d == 0 ? c != 0 : c >= shell);
      if (!on_shell) continue;
      std::size_t first = 0;
      while (first < m && idx[first] == 0) ++first;
      std::vector<FqPoly> tuple;
      for (auto c : idx) tuple.push_back(poly_of(c));
      if (!f.is_one(ring.leading(tuple[first]))) continue;
      if (visit(tuple)) return true;
    } while (advance(idx, 0, static_cast<std::uint32_t>(count)));
  }
  return false;
}

std::vector<std::size_t> subform_indices(std::size_t fold) {
  if (fold == 1) return {0, 1};
  if (fold == 2) return {0, 1, 2};
  return {0, 1, 2, 3, 4};
}

}  // namespace

// --- finite fields ----------------------------------------------------------

bool isotropic_residue(const FiniteField& k, const ExpandedForm<FqElem>& f) {
  if (const auto* d = std::get_if<DiagonalForm<FqElem>>(&f)) {
    std::size_t n = d->coeffs.size();
    if (n >= 3) return true;
    if (n < 2) return false;
    return k.is_square(k.neg(k.div(d->coeffs[0], d->coeffs[1])));
  }
  const auto& b = std::get<BlockForm<FqElem>>(f);
  if (b.coeffs.size() >= 2) return true;
  if (b.coeffs.empty()) return false;
  return k.in_artin_schreier_image(b.as_param);
}

std::optional<std::vector<FqElem>> finite_zero(const FiniteField& k, const ExpandedForm<FqElem>& f) {
  std::uint32_t q = k.order();
  if (const auto* d = std::get_if<DiagonalForm<FqElem>>(&f)) {
    const auto& c = d->coeffs;
    std::size_t n = c.size();
    if (n == 0) return std::nullopt;
    std::vector<std::uint32_t> idx(n, 0);
    while (advance(idx, 1, q)) {
      FqElem s = k.zero();
      for (std::size_t i = 1; i < n; ++i) s = k.add(s, k.mul(c[i], k.mul(FqElem{idx[i]}, FqElem{idx[i]})));
      auto root = k.sqrt(k.neg(k.div(s, c[0])));
      if (!root) continue;
      std::vector<FqElem> v{*root};
      for (std::size_t i = 1; i < n; ++i) v.push_back(FqElem{idx[i]});
      return v;
    }
    return std::nullopt;
  }
  const auto& b = std::get<BlockForm<FqElem>>(f);
  std::size_t m = b.coeffs.size();
  if (m == 0) return std::nullopt;
  // Variables X_1..X_m, Y_1..Y_m; X_1 is solved for.
  std::vector<std::uint32_t> idx(2 * m, 0);
  auto block = [&](FqElem x, FqElem y) {
    return k.add(k.add(k.mul(x, x), k.mul(x, y)), k.mul(b.as_param, k.mul(y, y)));
  };
  while (advance(idx, 1, q)) {
    FqElem rest = k.zero();
    for (std::size_t i = 1; i < m; ++i) rest = k.add(rest, k.mul(b.coeffs[i], block(FqElem{idx[i]}, FqElem{idx[m + i]})));
    rest = k.div(rest, b.coeffs[0]);
    FqElem y1{idx[m]};
    std::optional<FqElem> x1;
    if (k.is_zero(y1)) {
      x1 = k.sqrt(rest);
    } else {
      // X^2 + XY + aY^2 = rest with X = Y s.
      auto s = artin_schreier_root(k, k.add(b.as_param, k.div(rest, k.mul(y1, y1))));
      if (s) x1 = k.mul(y1, *s);
    }
    if (!x1) continue;
    std::vector<FqElem> v;
    for (auto i : idx) v.push_back(FqElem{i});
    v[0] = *x1;
    if (k.is_zero(evaluate(k, f, v))) return v;
  }
  return std::nullopt;
}

IsotropyVerdict<FqElem> isotropic_finite(const FiniteField& k, const PfisterForm<FqElem>& q) {
  auto f = expand(k, q);
  if (auto w = finite_zero(k, f)) return {true, Witness<FqElem>{*w}};
  return {false, ResidueObstruction{{to_string(k, q) + " over " + k.descriptor() + ": no zero in " +
                                     std::to_string(variable_count(q.fold())) + " variables"}}};
}

// --- Q ----------------------------------------------------------------------

namespace {

long jacobi_small(long a, long n) {
  a %= n;
  if (a < 0) a += n;
  int s = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

// Machine-word version for numerators, denominators and p below 2^31.
std::optional<int> small_hilbert_symbol(const Rational& a, const Rational& b, const Integer& p) {
  constexpr long kBound = 1L << 31;
  auto fits = [&](const Integer& n) { return n.fits_slong_p() && std::labs(n.get_si()) < kBound; };
  if (!fits(p) || !fits(a.get_num()) || !fits(a.get_den()) || !fits(b.get_num()) || !fits(b.get_den()))
    return std::nullopt;
  long q = p.get_si();
  auto split = [&](const Rational& x, long& unit) {
    long n = x.get_num().get_si(), d = x.get_den().get_si(), e = 0;
    while (n % q == 0) n /= q, ++e;
    while (d % q == 0) d /= q, --e;
    unit = n * d;
    return e;
  };
  long u = 0, w = 0;
  long alpha = split(a, u), beta = split(b, w);
  if (q == 2) {
    auto mod8 = [](long x) { return ((x % 8) + 8) % 8; };
    auto eps = [](long x) { return ((x - 1) / 2) & 1; };
    auto omega = [](long x) { return ((x * x - 1) / 8) & 1; };
    long um = mod8(u), wm = mod8(w);
    long e = eps(um) * eps(wm) + (alpha & 1) * omega(wm) + (beta & 1) * omega(um);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && q % 4 == 3) s = -s;
  if (beta & 1) s *= static_cast<int>(jacobi_small(u, q));
  if (alpha & 1) s *= static_cast<int>(jacobi_small(w, q));
  return s;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) fail(ErrorKind::PreconditionFailed, "Hilbert symbol of zero");
  if (std::holds_alternative<RealPlace>(v)) return (a < 0 && b < 0) ? -1 : 1;
  const auto* pp = std::get_if<PrimePlace>(&v);
  if (!pp) fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a place of Q");
  const Integer& p = pp->p;
  if (auto s = small_hilbert_symbol(a, b, p)) return *s;
  // a = p^alpha * u with u a unit; u is represented by num*den (same square class)
  auto split = [&](const Rational& x, Integer& unit) {
    Integer n = x.get_num(), d = x.get_den();
    long e = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    e -= static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
    unit = n * d;
    return e;
  };
  Integer u, w;
  long alpha = split(a, u), beta = split(b, w);
  if (p == 2) {
    auto eps = [](long x) { return ((x - 1) / 2) & 1; };
    auto omega = [](long x) { return ((x * x - 1) / 8) & 1; };
    long um = static_cast<long>(mpz_fdiv_ui(u.get_mpz_t(), 8)), wm = static_cast<long>(mpz_fdiv_ui(w.get_mpz_t(), 8));
    long e = eps(um) * eps(wm) + (alpha & 1) * omega(wm) + (beta & 1) * omega(um);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
  if (beta & 1) s *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
  if (alpha & 1) s *= mpz_legendre(w.get_mpz_t(), p.get_mpz_t());
  return s;
}

bool is_local_square(const Rational& a, const Place& v) {
  if (a == 0) return true;
  if (std::holds_alternative<RealPlace>(v)) return a > 0;
  const auto* pp = std::get_if<PrimePlace>(&v);
  if (!pp) fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a place of Q");
  long n = arith::valuation(a, pp->p);
  if (n % 2 != 0) return false;
  Rational u = a / power(pp->p, n);
  Integer unit = u.get_num() * u.get_den();
  if (pp->p == 2) return arith::mod(unit, 8) == 1;
  return arith::legendre(unit, pp->p) == 1;
}

std::vector<Place> candidate_places(const std::vector<Rational>& elements) {
  std::vector<Integer> primes{2};
  for (const auto& x : elements)
    for (const auto& p : arith::prime_support(x)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out;
  for (const auto& p : primes) out.push_back(PrimePlace{p});
  out.push_back(RealPlace{});
  return out;
}

bool isotropic_diagonal_local(const std::vector<Rational>& coeffs, const Place& v) {
  for (const auto& c : coeffs)
    if (c == 0) return true;
  std::size_t n = coeffs.size();
  if (n < 2) return false;
  if (std::holds_alternative<RealPlace>(v)) {
    bool pos = false, neg = false;
    for (const auto& c : coeffs) (c > 0 ? pos : neg) = true;
    return pos && neg;
  }
  if (n >= 5) return true;
  Rational d = 1;
  for (const auto& c : coeffs) d *= c;
  int eps = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert_symbol(coeffs[i], coeffs[j], v);
  if (n == 2) return is_local_square(-d, v);
  if (n == 3) return hilbert_symbol(-1, -d, v) == eps;
  return !is_local_square(d, v) || eps == hilbert_symbol(-1, -1, v);
}

bool isotropic_diagonal(const std::vector<Rational>& coeffs) {
  for (const auto& c : coeffs)
    if (c == 0) return true;
  std::size_t n = coeffs.size();
  if (n < 2) return false;
  if (n == 2) return arith::is_square(Rational(-coeffs[0] / coeffs[1]));
  for (const auto& v : candidate_places(coeffs))
    if (!isotropic_diagonal_local(coeffs, v)) return false;
  return true;
}

// --- F_p(t) -----------------------------------------------------------------

int tame_symbol(const FqtField& k, const FqtElem& a, const FqtElem& b, const FptPlace& v) {
  if (k.is_zero(a) || k.is_zero(b)) fail(ErrorKind::PreconditionFailed, "tame symbol of zero");
  if (k.characteristic() == 2) fail(ErrorKind::UnsupportedField, "tame symbol needs odd characteristic");
  long alpha = 0, beta = 0;
  auto u = unit_part(k, a, v, &alpha);
  auto w = unit_part(k, b, v, &beta);
  FiniteField res = residue_field(v);
  long n1 = static_cast<long>(res.order()) - 1;
  auto pw = [&](FqElem x, long e) { return res.pow(x, static_cast<std::uint64_t>(((e % n1) + n1) % n1)); };
  // (-1)^(alpha beta) u^beta / w^alpha
  FqElem val = res.mul(pw(residue(k, u, v), beta), pw(res.inv(residue(k, w, v)), alpha));
  if ((alpha & 1) && (beta & 1)) val = res.neg(val);
  return res.is_square(val) ? 1 : -1;
}

int artin_schreier_symbol(const FqtField& k, const FqtElem& a, const FqtElem& b, const FptPlace& v) {
  if (k.characteristic() != 2) fail(ErrorKind::UnsupportedField, "Artin-Schreier symbol needs characteristic 2");
  if (k.is_zero(a)) fail(ErrorKind::PreconditionFailed, "multiplicative slot is zero");
  if (k.is_zero(b)) return 1;
  const auto& ring = k.polys();
  // a'/a = (n'd - nd') / (nd)
  FqtElem dlog = k.make(ring.sub(ring.mul(ring.derivative(a.num), a.den), ring.mul(a.num, ring.derivative(a.den))),
                        ring.mul(a.num, a.den));
  FqtElem f = k.mul(b, dlog);
  if (k.is_zero(f)) return 1;
  FqElem r;
  if (v.is_degree()) {
    long dd = ring.degree(f.den);
    if (dd < 1) return 1;
    r = ring.coeff(ring.mod(f.num, f.den), static_cast<std::size_t>(dd - 1));
  } else {
    const auto& pi = *v.pi;
    long e = ring.multiplicity(f.den, pi);
    if (e == 0) return 1;
    FqPoly pe = ring.pow(pi, static_cast<unsigned long>(e));
    FqPoly rest = ring.exact_div(f.den, pe);
    FqPoly h = ring.mulmod(f.num, ring.inverse_mod(rest, pe), pe);
    r = ring.coeff(h, static_cast<std::size_t>(e * ring.degree(pi) - 1));
  }
  return k.base().trace(r) == 0 ? 1 : -1;
}

bool is_local_square(const FqtField& k, const FqtElem& a, const FptPlace& v) {
  if (k.characteristic() == 2) fail(ErrorKind::UnsupportedField, "local square test needs odd characteristic");
  if (k.is_zero(a)) return true;
  long n = 0;
  auto u = unit_part(k, a, v, &n);
  if (n % 2 != 0) return false;
  return residue_field(v).is_square(residue(k, u, v));
}

bool in_local_artin_schreier_image(const FqtField& k, const FqtElem& a, const FptPlace& v) {
  if (k.characteristic() != 2) fail(ErrorKind::UnsupportedField, "Artin-Schreier image needs characteristic 2");
  FiniteField res = residue_field(v);
  FqtElem pi = uniformizer(k, v);
  FqtElem x = a;
  while (true) {
    if (k.is_zero(x)) return true;
    long n = 0;
    auto u = unit_part(k, x, v, &n);
    if (n >= 1) return true;
    if (n == 0) return res.trace(residue(k, u, v)) == 0;
    if (n % 2 != 0) return false;
    // Cancel the leading term with y^2 + y, y = sqrt(u) pi^(n/2).
    auto s = res.sqrt(residue(k, u, v));
    FqtElem y = k.mul(lift(k, v, *s), k.pow(pi, n / 2));
    x = k.add(x, k.add(k.mul(y, y), y));
  }
}

std::vector<FptPlace> candidate_places(const FqtField& k, const std::vector<FqtElem>& elements) {
  if (!k.base().is_prime_field()) fail(ErrorKind::UnsupportedField, "places are supported over prime constant fields");
  std::vector<FptPlace> out;
  for (const auto& x : elements) {
    if (k.is_zero(x)) continue;
    for (auto& v : support(k, x))
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const FptPlace& a, const FptPlace& b) {
    if (a.pi->size() != b.pi->size()) return a.pi->size() < b.pi->size();
    return std::lexicographical_compare(a.pi->rbegin(), a.pi->rend(), b.pi->rbegin(), b.pi->rend());
  });
  out.push_back(FptPlace{k.base(), std::nullopt});
  return out;
}

namespace {

// Springer route for characteristic 2 with a normalized slot.
bool springer_isotropic(const FqtField& k, const PfisterForm<FqtElem>& q, const FptPlace& v,
                        std::vector<std::string>* chain) {
  auto split = springer_split(k, q, v);
  FiniteField res = residue_field(v);
  bool iso = isotropic_residue(res, split.q0) || isotropic_residue(res, split.q1);
  if (chain)
    chain->push_back(k.descriptor() + "@" + to_string(Place{v}) + ": q0=" + describe(res, split.q0) +
                     " q1=" + describe(res, split.q1));
  return iso;
}

}  // namespace

LocalSymbol local_symbol_fpt(const FqtField& k, const FqtElem& a, const FqtElem& b, const FptPlace& v) {
  if (k.is_zero(a)) fail(ErrorKind::PreconditionFailed, "local symbol of zero");
  if (k.characteristic() != 2) {
    if (k.is_zero(b)) fail(ErrorKind::PreconditionFailed, "local symbol of zero");
    return tame_symbol(k, a, b, v) == 1 ? LocalSymbol::Split : LocalSymbol::Nonsplit;
  }
  if (!k.is_zero(b) && valuation(k, b, v)[0] < 0)
    fail(ErrorKind::UnnormalizedASSlot, "Artin-Schreier slot has a pole at " + to_string(Place{v}));
  bool split = springer_isotropic(k, PfisterForm<FqtElem>{{a, b}}, v, nullptr);
  if (split != (artin_schreier_symbol(k, a, b, v) == 1))
    fail(ErrorKind::ReciprocityViolation, "residue formula and Springer reduction disagree at " + to_string(Place{v}));
  return split ? LocalSymbol::Split : LocalSymbol::Nonsplit;
}

// --- global deciders --------------------------------------------------------

std::pair<IsotropyVerdict<Rational>, RamificationSet> isotropic_global(const RationalField& k,
                                                                       const PfisterForm<Rational>& q,
                                                                       long witness_budget) {
  validate(k, q);
  auto cands = candidate_places(q.symbols);
  auto with_witness = [&](std::vector<Place> places, const char* principle) -> IsotropyVerdict<Rational> {
    if (auto w = witness_search(k, q, witness_budget)) return {true, Witness<Rational>{*w}};
    return {true, LocalGlobal{std::move(places), principle}};
  };
  if (q.fold() == 1) {
    const Rational& a = q.symbols[0];
    if (auto r = sqrt(k, a)) return {{true, Witness<Rational>{{*r, 1}}}, {}};
    for (const auto& v : cands)
      if (!is_local_square(a, v)) return {{false, LocalObstruction{v, -1}}, {}};
    for (Integer p = 3; p < 1000; p = arith::next_prime(p))
      if (!is_local_square(a, PrimePlace{p})) return {{false, LocalObstruction{PrimePlace{p}, -1}}, {}};
    return {{false, ResidueObstruction{{k.to_string(a) + " is not a square in Q"}}}, {}};
  }
  if (q.fold() == 2) {
    RamificationSet ram;
    int product = 1;
    for (const auto& v : cands) {
      int s = hilbert_symbol(q.symbols[0], q.symbols[1], v);
      product *= s;
      if (s < 0) ram.places.push_back(v);
    }
    if (product != 1) fail(ErrorKind::ReciprocityViolation, "Hilbert symbols of " + to_string(k, q) + " multiply to -1");
    if (!ram.places.empty()) return {{false, LocalObstruction{ram.places.front(), -1}}, ram};
    return {with_witness(cands, "hasse-minkowski"), ram};
  }
  RealObstruction signs;
  bool any_positive = false;
  for (const auto& a : q.symbols) {
    signs.signs.push_back(a > 0 ? 1 : -1);
    any_positive |= a > 0;
  }
  if (!any_positive) return {{false, signs}, RamificationSet{{RealPlace{}}}};
  return {with_witness({RealPlace{}}, "hasse-minkowski"), {}};
}

std::pair<IsotropyVerdict<FqtElem>, RamificationSet> isotropic_global(const FqtField& k,
                                                                      const PfisterForm<FqtElem>& q,
                                                                      long witness_budget) {
  validate(k, q);
  bool char2 = k.characteristic() == 2;
  auto cands = candidate_places(k, q.symbols);
  std::vector<Place> cand_places(cands.begin(), cands.end());
  if (q.fold() == 1) {
    const auto& a = q.symbols[0];
    if (char2) {
      if (auto s = artin_schreier_root(k, a)) return {{true, Witness<FqtElem>{{*s, k.one()}}}, {}};
      for (const auto& v : cands)
        if (!in_local_artin_schreier_image(k, a, v)) return {{false, LocalObstruction{v, -1}}, {}};
      return {{false, ResidueObstruction{{k.to_string(a) + " is not of the form x^2+x"}}}, {}};
    }
    if (auto r = sqrt(k, a)) return {{true, Witness<FqtElem>{{*r, k.one()}}}, {}};
    for (const auto& v : cands)
      if (!is_local_square(k, a, v)) return {{false, LocalObstruction{v, -1}}, {}};
    return {{false, ResidueObstruction{{k.to_string(a) + " is not a square"}}}, {}};
  }
  if (q.fold() == 2) {
    RamificationSet ram;
    const auto& a = q.symbols[0];
    const auto& b = q.symbols[1];
    for (const auto& v : cands) {
      int s;
      if (char2) {
        s = artin_schreier_symbol(k, a, b, v);
        if (k.is_zero(b) || valuation(k, b, v)[0] >= 0) {
          if ((local_symbol_fpt(k, a, b, v) == LocalSymbol::Split) != (s == 1))
            fail(ErrorKind::ReciprocityViolation, "local symbol cross-check failed");
        }
      } else {
        s = tame_symbol(k, a, b, v);
      }
      if (s < 0) ram.places.push_back(v);
    }
    if (ram.places.size() % 2 != 0)
      fail(ErrorKind::ReciprocityViolation, "odd number of ramified places for " + to_string(k, q));
    if (!ram.places.empty()) return {{false, LocalObstruction{ram.places.front(), -1}}, ram};
    if (auto w = witness_search(k, q, witness_budget)) return {{true, Witness<FqtElem>{*w}}, ram};
    return {{true, LocalGlobal{cand_places, "hasse-minkowski"}}, ram};
  }
  if (auto w = witness_search(k, q, witness_budget)) return {{true, Witness<FqtElem>{*w}}, {}};
  return {{true, LocalGlobal{{}, "u-invariant"}}, {}};
}

// --- henselian deciders -----------------------------------------------------

IsotropyVerdict<Rational> isotropic_henselian(const RationalField& k, const PfisterForm<Rational>& q, const Place& v) {
  validate(k, q);
  if (std::holds_alternative<RealPlace>(v)) {
    auto f = expand_diagonal(k, q);
    if (isotropic_diagonal_local(f.coeffs, v)) return {true, ResidueIsotropy{{"R: coefficients of both signs"}}};
    RealObstruction signs;
    for (const auto& a : q.symbols) signs.signs.push_back(a > 0 ? 1 : -1);
    return {false, signs};
  }
  const auto* pp = std::get_if<PrimePlace>(&v);
  if (!pp) fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a place of Q");
  auto split = springer_split(k, q, *pp);
  FiniteField res = residue_field(*pp);
  std::vector<std::string> chain{"Q_" + pp->p.get_str() + ": q0=" + describe(res, split.q0) +
                                 " q1=" + describe(res, split.q1)};
  if (isotropic_residue(res, split.q0) || isotropic_residue(res, split.q1)) return {true, ResidueIsotropy{chain}};
  return {false, ResidueObstruction{chain}};
}

IsotropyVerdict<FqtElem> isotropic_henselian(const FqtField& k, const PfisterForm<FqtElem>& q, const FptPlace& v) {
  validate(k, q);
  std::vector<std::string> chain;
  if (k.characteristic() == 2) {
    const auto& slot = q.symbols.back();
    bool normalized = k.is_zero(slot) || valuation(k, slot, v)[0] >= 0;
    if (normalized) {
      bool iso = springer_isotropic(k, q, v, &chain);
      if (q.fold() == 2 && iso != (artin_schreier_symbol(k, q.symbols[0], slot, v) == 1))
        fail(ErrorKind::ReciprocityViolation, "residue formula and Springer reduction disagree");
      if (iso) return {true, ResidueIsotropy{chain}};
      return {false, ResidueObstruction{chain}};
    }
    std::string where = k.descriptor() + "@" + to_string(Place{v});
    if (q.fold() >= 3) return {true, ResidueIsotropy{{where + ": dimension above 4"}}};
    bool iso = q.fold() == 1 ? in_local_artin_schreier_image(k, slot, v)
                             : artin_schreier_symbol(k, q.symbols[0], slot, v) == 1;
    chain.push_back(where + ": residue of slot*dlog");
    if (iso) return {true, ResidueIsotropy{chain}};
    return {false, LocalObstruction{v, -1}};
  }
  auto split = springer_split(k, q, v);
  FiniteField res = residue_field(v);
  chain.push_back(k.descriptor() + "@" + to_string(Place{v}) + ": q0=" + describe(res, split.q0) +
                  " q1=" + describe(res, split.q1));
  if (isotropic_residue(res, split.q0) || isotropic_residue(res, split.q1)) return {true, ResidueIsotropy{chain}};
  return {false, ResidueObstruction{chain}};
}

IsotropyVerdict<QtElem> isotropic_henselian(const QtField& k, const PfisterForm<QtElem>& q, const Place& v) {
  validate(k, q);
  RationalField qq;
  if (const auto* dv = std::get_if<DivisorialPlace>(&v)) {
    auto split = springer_split(k, q, *dv);
    const auto& q0 = std::get<DiagonalForm<Rational>>(split.q0);
    const auto& q1 = std::get<DiagonalForm<Rational>>(split.q1);
    std::vector<std::string> chain{"Q(t)@" + to_string(v) + ": q0=" + describe(qq, q0) + " q1=" + describe(qq, q1)};
    if (isotropic_diagonal(q0.coeffs) || isotropic_diagonal(q1.coeffs)) return {true, ResidueIsotropy{chain}};
    return {false, ResidueObstruction{chain}};
  }
  const auto* cv = std::get_if<CompositePlace>(&v);
  if (!cv) fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a valuation on Q(t)");
  auto first = springer_split(k, q, cv->first);
  const auto& q0 = std::get<DiagonalForm<Rational>>(first.q0);
  const auto& q1 = std::get<DiagonalForm<Rational>>(first.q1);
  std::vector<std::string> chain{"Q(t)@" + to_string(Place{cv->first}) + ": q0=" + describe(qq, q0) +
                                 " q1=" + describe(qq, q1)};
  PrimePlace p{cv->p};
  FiniteField res = residue_field(p);
  bool iso = false;
  std::string second = "Q_" + cv->p.get_str() + ":";
  for (const auto* stage : {&q0, &q1}) {
    auto s = springer_split(*stage, p);
    second += " (" + describe(res, s.q0) + "," + describe(res, s.q1) + ")";
    iso = iso || isotropic_residue(res, s.q0) || isotropic_residue(res, s.q1);
  }
  chain.push_back(second);
  if (iso) return {true, ResidueIsotropy{chain}};
  return {false, ResidueObstruction{chain}};
}

// --- quadratic etale algebras -----------------------------------------------

bool place_splits(const Rational& b, const Rational& c, const Place& v) { return is_local_square(b * b - 4 * c, v); }

bool place_splits(const FqtField& k, const FqtElem& b, const FqtElem& c, const FptPlace& v) {
  if (k.characteristic() != 2) return is_local_square(k, k.sub(k.mul(b, b), k.mul(k.from_int(4), c)), v);
  if (k.is_zero(b)) return false;
  return in_local_artin_schreier_image(k, k.div(c, k.mul(b, b)), v);
}

namespace {

template <class K, class Global, class Splits, class Search>
IsotropyVerdict<typename EtaleAlgebra<K>::Elem> over_etale(const K& k, const PfisterForm<typename K::Elem>& q,
                                                           const typename K::Elem& b, const typename K::Elem& c,
                                                           Global global, Splits splits, Search search) {
  using E = typename K::Elem;
  using AE = typename EtaleAlgebra<K>::Elem;
  EtaleAlgebra<K> a(k, b, c);
  auto embed = [&](const E& x) { return a.from_base(x); };
  auto [verdict, ram] = global(k, q);
  if (verdict.isotropic || !a.is_field()) return {verdict.isotropic, map_evidence<E, AE>(verdict.evidence, embed)};
  auto found = [&](std::vector<Place> places, const char* principle) -> IsotropyVerdict<AE> {
    if (auto w = search(a, q)) return {true, Witness<AE>{w->vector}};
    return {true, LocalGlobal{std::move(places), principle}};
  };
  bool char2 = k.characteristic() == 2;
  if (q.fold() == 1) {
    const E& s = q.symbols[0];
    bool iso = false;
    if (!char2) {
      E disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
      iso = is_square(k, k.div(s, disc));
    } else if constexpr (std::is_same_v<K, FqtField>) {
      // Separable A adds the class of c/b^2 to the image of x^2 + x.
      iso = !k.is_zero(b) && artin_schreier_class(k, k.add(s, k.div(c, k.mul(b, b))));
    }
    if (iso) return found({}, "quadratic-extension");
    return {false, ResidueObstruction{{to_string(k, q) + " stays anisotropic over " + a.descriptor()}}};
  }
  if (q.fold() == 2) {
    for (const auto& v : ram.places)
      if (splits(v)) return {false, LocalObstruction{v, -1}};
    return found(ram.places, "albert-brauer-hasse-noether");
  }
  // Three or more symbols and anisotropic over K: Q with all symbols negative.
  if (splits(Place{RealPlace{}})) return {false, map_evidence<E, AE>(verdict.evidence, embed)};
  return found({RealPlace{}}, "hasse-minkowski");
}

}  // namespace

IsotropyVerdict<EtaleAlgebra<RationalField>::Elem> isotropic_over_etale(const RationalField& k,
                                                                        const PfisterForm<Rational>& q,
                                                                        const Rational& b, const Rational& c,
                                                                        long witness_budget) {
  return over_etale(
      k, q, b, c, [&](const RationalField& f, const PfisterForm<Rational>& g) { return isotropic_global(f, g, witness_budget); },
      [&](const Place& v) { return place_splits(b, c, v); },
      [&](const EtaleAlgebra<RationalField>& a, const PfisterForm<Rational>& g) { return witness_search(a, g, witness_budget); });
}

IsotropyVerdict<EtaleAlgebra<FqtField>::Elem> isotropic_over_etale(const FqtField& k,
                                                                   const PfisterForm<FqtElem>& q, const FqtElem& b,
                                                                   const FqtElem& c, long witness_budget) {
  return over_etale(
      k, q, b, c, [&](const FqtField& f, const PfisterForm<FqtElem>& g) { return isotropic_global(f, g, witness_budget); },
      [&](const Place& v) { return place_splits(k, b, c, std::get<FptPlace>(v)); },
      [&](const EtaleAlgebra<FqtField>& a, const PfisterForm<FqtElem>& g) { return witness_search(a, g, witness_budget); });
}

// --- witness search ---------------------------------------------------------

std::optional<std::vector<Integer>> integer_zero(const std::vector<Integer>& e, long budget, int nonzero) {
  if (e.size() < 2) return std::nullopt;
  Integer bound = 0;
  for (const auto& x : e) bound += abs(x);
  bound *= Integer(budget) * budget;
  if (bound < Integer(1) << 60) {
    std::vector<long> small;
    for (const auto& x : e) small.push_back(x.get_si());
    auto z = small_zero(small, budget, nonzero);
    if (!z) return std::nullopt;
    std::vector<Integer> out;
    for (long x : *z) out.push_back(Integer(x));
    return out;
  }
  return small_zero(e, budget, nonzero);
}

std::optional<std::vector<FqPoly>> polynomial_zero(const FqPolys& ring, const std::vector<FqPoly>& e, long budget,
                                                   int nonzero) {
  if (e.size() < 2) return std::nullopt;
  std::optional<std::vector<FqPoly>> out;
  for_poly_tuples(ring, e.size() - 1, budget, [&](const std::vector<FqPoly>& xs) {
    FqPoly s;
    for (std::size_t i = 0; i < xs.size(); ++i) s = ring.add(s, ring.mul(e[i + 1], ring.mul(xs[i], xs[i])));
    auto [quo, rem] = ring.divmod(ring.neg(s), e[0]);
    if (!rem.empty()) return false;
    auto root = poly_sqrt(ring, quo);
    if (!root) return false;
    std::vector<FqPoly> v{*root};
    v.insert(v.end(), xs.begin(), xs.end());
    if (nonzero >= 0 && v[nonzero].empty()) return false;
    out = v;
    return true;
  });
  return out;
}

std::optional<std::vector<Rational>> witness_search(const RationalField& k, const PfisterForm<Rational>& q,
                                                    long budget) {
  validate(k, q);
  std::size_t fold = q.fold();
  std::size_t n = variable_count(fold);
  auto f = expand_diagonal(k, q);
  std::vector<std::size_t> idx;
  if (fold <= 2) {
    idx = subform_indices(fold);
  } else {
    // An indefinite 5-dimensional piece of a 3-fold subform.
    std::size_t pos = fold;
    for (std::size_t i = 0; i < fold; ++i)
      if (q.symbols[i] > 0) pos = i;
    if (pos == fold) return std::nullopt;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < fold && others.size() < 2; ++i)
      if (i != pos) others.push_back(i);
    std::size_t bp = bit_of(fold, pos), b1 = bit_of(fold, others[0]), b2 = bit_of(fold, others[1]);
    idx = {0, bp, b1, b2, bp | b1};
  }
  std::vector<Integer> e;
  std::vector<Rational> roots;
  for (auto i : idx) {
    auto [kern, r] = square_class(f.coeffs[i]);
    e.push_back(kern);
    roots.push_back(r);
  }
  auto z = integer_zero(e, budget);
  if (!z) return std::nullopt;
  std::vector<Rational> v(n, 0);
  for (std::size_t j = 0; j < idx.size(); ++j) v[idx[j]] = Rational((*z)[j]) / roots[j];
  if (evaluate(k, q, v) != 0) fail(ErrorKind::PreconditionFailed, "witness failed to verify");
  return v;
}

std::optional<std::vector<FqElem>> witness_search(const FiniteField& k, const PfisterForm<FqElem>& q, long) {
  return finite_zero(k, expand(k, q));
}

std::optional<std::vector<FqtElem>> witness_search(const FqtField& k, const PfisterForm<FqtElem>& q, long budget) {
  validate(k, q);
  const auto& ring = k.polys();
  std::size_t n = variable_count(q.fold());
  auto f = expand(k, q);
  std::vector<FqtElem> v(n, k.zero());
  if (const auto* d = std::get_if<DiagonalForm<FqtElem>>(&f)) {
    auto idx = subform_indices(q.fold());
    // c (den z)^2 = (num den) z^2
    std::vector<FqPoly> e;
    for (auto i : idx) e.push_back(ring.mul(d->coeffs[i].num, d->coeffs[i].den));
    auto z = polynomial_zero(ring, e, budget);
    if (!z) return std::nullopt;
    for (std::size_t j = 0; j < idx.size(); ++j)
      v[idx[j]] = k.from_poly(ring.mul((*z)[j], d->coeffs[idx[j]].den));
  } else {
    const auto& blk = std::get<BlockForm<FqtElem>>(f);
    std::size_t m = blk.coeffs.size();
    std::size_t used = std::min<std::size_t>(m, 3);
    auto block = [&](const FqtElem& x, const FqtElem& y) {
      return k.add(k.add(k.mul(x, x), k.mul(x, y)), k.mul(blk.as_param, k.mul(y, y)));
    };
    bool ok = for_poly_tuples(ring, 2 * used - 1, budget, [&](const std::vector<FqPoly>& xs) {
      // xs = (Y_1, X_2, Y_2, X_3, Y_3)
      FqtElem y1 = k.from_poly(xs[0]);
      FqtElem rest = k.zero();
      for (std::size_t i = 1; i < used; ++i)
        rest = k.add(rest, k.mul(blk.coeffs[i], block(k.from_poly(xs[2 * i - 1]), k.from_poly(xs[2 * i]))));
      std::optional<FqtElem> x1;
      if (k.is_zero(y1)) {
        x1 = sqrt(k, rest);
      } else if (auto s = artin_schreier_root(k, k.add(blk.as_param, k.div(rest, k.mul(y1, y1))))) {
        x1 = k.mul(y1, *s);
      }
      if (!x1) return false;
      std::fill(v.begin(), v.end(), k.zero());
      v[0] = *x1;
      v[m] = y1;
      for (std::size_t i = 1; i < used; ++i) {
        v[i] = k.from_poly(xs[2 * i - 1]);
        v[m + i] = k.from_poly(xs[2 * i]);
      }
      return true;
    });
    if (!ok) return std::nullopt;
  }
  if (!k.is_zero(evaluate(k, q, v))) fail(ErrorKind::PreconditionFailed, "witness failed to verify");
  return v;
}

std::optional<UnitIdealZero<EtaleAlgebra<FiniteField>::Elem>> witness_search(const EtaleAlgebra<FiniteField>& a,
                                                                             const PfisterForm<FqElem>& q, long) {
  using AE = EtaleAlgebra<FiniteField>::Elem;
  const FiniteField& k = a.base();
  auto f = lift_form(a, expand(k, q));
  std::uint32_t qk = k.order();
  std::uint32_t size = qk * qk;
  auto elem = [&](std::uint32_t code) { return a.make(FqElem{code / qk}, FqElem{code % qk}); };
  auto code = [&](const AE& x) { return x.b1.code * qk + x.b2.code; };
  std::size_t n = variable_count(q.fold());
  std::vector<std::uint32_t> idx(n, 0);
  auto accept = [&](const std::vector<AE>& v) -> std::optional<UnitIdealZero<AE>> {
    if (!a.is_zero(evaluate(a, f, v))) return std::nullopt;
    if (auto cof = unit_ideal_cofactors(a, v)) return UnitIdealZero<AE>{v, *cof};
    return std::nullopt;
  };
  if (const auto* d = std::get_if<DiagonalForm<AE>>(&f)) {
    std::vector<std::vector<std::uint32_t>> roots(size);
    for (std::uint32_t x = 0; x < size; ++x) roots[code(a.mul(elem(x), elem(x)))].push_back(x);
    // Leading coefficient is 1.
    while (advance(idx, 1, size)) {
      AE s = a.zero();
      for (std::size_t i = 1; i < n; ++i) s = a.add(s, a.mul(d->coeffs[i], a.mul(elem(idx[i]), elem(idx[i]))));
      for (auto r : roots[code(a.neg(s))]) {
        std::vector<AE> v{elem(r)};
        for (std::size_t i = 1; i < n; ++i) v.push_back(elem(idx[i]));
        if (auto z = accept(v)) return z;
      }
    }
    return std::nullopt;
  }
  do {
    std::vector<AE> v;
    for (auto i : idx) v.push_back(elem(i));
    if (auto z = accept(v)) return z;
  } while (advance(idx, 0, size));
  return std::nullopt;
}

namespace {

// Zero over A = K[X]/(X^2+bX+c) of a 2-fold subform <<a_i, a_j]] (diagonal
// case): with zeta = 2X + b, zeta^2 = D, the vector (lambda zeta, y, x, w)
// is a zero whenever a_i x^2 + a_j y^2 - a_i a_j w^2 = D lambda^2.
template <class K, class Solve>
std::optional<UnitIdealZero<typename EtaleAlgebra<K>::Elem>> quaternion_zero(
    const EtaleAlgebra<K>& a, const PfisterForm<typename K::Elem>& q, const typename EtaleAlgebra<K>::Elem& zeta,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, Solve solve) {
  using AE = typename EtaleAlgebra<K>::Elem;
  const K& k = a.base();
  std::size_t fold = q.fold();
  std::size_t n = variable_count(fold);
  for (auto [i, j] : pairs) {
    // solve returns (x, y, w, lambda)
    auto sol = solve(q.symbols[i], q.symbols[j]);
    if (!sol) continue;
    std::vector<AE> v(n, a.zero());
    std::size_t bi = bit_of(fold, i), bj = bit_of(fold, j);
    v[0] = a.scale(zeta, (*sol)[3]);
    v[bj] = a.from_base((*sol)[1]);
    v[bi] = a.from_base((*sol)[0]);
    v[bi | bj] = a.from_base((*sol)[2]);
    if (!a.is_zero(evaluate(a, lift_form(a, q), v))) continue;
    if (auto cof = unit_ideal_cofactors(a, v)) return UnitIdealZero<AE>{v, *cof};
  }
  (void)k;
  return std::nullopt;
}

template <class K>
std::vector<std::pair<std::size_t, std::size_t>> symbol_pairs(const PfisterForm<typename K::Elem>& q) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = q.fold(); i-- > 0;)
    for (std::size_t j = q.fold(); j-- > i + 1;) out.push_back({i, j});
  return out;
}

template <class K>
std::optional<UnitIdealZero<typename EtaleAlgebra<K>::Elem>> from_base_zero(
    const EtaleAlgebra<K>& a, const std::optional<std::vector<typename K::Elem>>& z) {
  using AE = typename EtaleAlgebra<K>::Elem;
  if (!z) return std::nullopt;
  std::vector<AE> v;
  for (const auto& x : *z) v.push_back(a.from_base(x));
  auto cof = unit_ideal_cofactors(a, v);
  if (!cof) return std::nullopt;
  return UnitIdealZero<AE>{v, *cof};
}

// Rational solution of a_i x^2 + a_j y^2 - a_i a_j w^2 = d lambda^2.
std::optional<std::vector<Rational>> rational_quaternion(const Rational& ai, const Rational& aj, const Rational& d,
                                                         long budget) {
  auto [ki, ri] = square_class(ai);
  auto [kj, rj] = square_class(aj);
  auto [kd, rd] = square_class(d);
  auto z = integer_zero({-ki * kj, ki, kj, -kd}, budget, 3);
  if (!z) return std::nullopt;
  // W, X, Y, S
  return std::vector<Rational>{Rational((*z)[1]) / ri, Rational((*z)[2]) / rj, Rational((*z)[0]) / (ri * rj),
                               Rational((*z)[3]) / rd};
}

}  // namespace

std::optional<UnitIdealZero<EtaleAlgebra<RationalField>::Elem>> witness_search(
    const EtaleAlgebra<RationalField>& a, const PfisterForm<Rational>& q, long budget) {
  const RationalField& k = a.base();
  if (auto z = from_base_zero(a, witness_search(k, q, budget))) return z;
  if (!a.is_field()) return std::nullopt;
  Rational d = a.b() * a.b() - 4 * a.c();
  auto zeta = a.make(2, a.b());
  if (q.fold() == 1) {
    auto r = sqrt(k, q.symbols[0] / d);
    if (!r) return std::nullopt;
    std::vector<EtaleAlgebra<RationalField>::Elem> v{a.scale(zeta, *r), a.one()};
    return UnitIdealZero<EtaleAlgebra<RationalField>::Elem>{v, *unit_ideal_cofactors(a, v)};
  }
  return quaternion_zero(a, q, zeta, symbol_pairs<RationalField>(q), [&](const Rational& ai, const Rational& aj) {
    return rational_quaternion(ai, aj, d, budget);
  });
}

std::optional<UnitIdealZero<EtaleAlgebra<FqtField>::Elem>> witness_search(const EtaleAlgebra<FqtField>& a,
                                                                          const PfisterForm<FqtElem>& q,
                                                                          long budget) {
  const FqtField& k = a.base();
  if (auto z = from_base_zero(a, witness_search(k, q, budget))) return z;
  if (!a.is_field() || k.characteristic() == 2) return std::nullopt;
  FqtElem d = k.sub(k.mul(a.b(), a.b()), k.mul(k.from_int(4), a.c()));
  auto zeta = a.make(k.from_int(2), a.b());
  if (q.fold() == 1) {
    auto r = sqrt(k, k.div(q.symbols[0], d));
    if (!r) return std::nullopt;
    std::vector<EtaleAlgebra<FqtField>::Elem> v{a.scale(zeta, *r), a.one()};
    return UnitIdealZero<EtaleAlgebra<FqtField>::Elem>{v, *unit_ideal_cofactors(a, v)};
  }
  const auto& ring = k.polys();
  return quaternion_zero(a, q, zeta, symbol_pairs<FqtField>(q), [&](const FqtElem& ai, const FqtElem& aj) {
    // x (den Z)^2 = (num den) Z^2
    auto kern = [&](const FqtElem& x) { return ring.mul(x.num, x.den); };
    auto scaled = [&](const FqPoly& z, const FqPoly& den) { return k.from_poly(ring.mul(z, den)); };
    FqPoly ki = kern(ai), kj = kern(aj), kd = kern(d);
    auto z = polynomial_zero(ring, {ring.neg(ring.mul(ki, kj)), ki, kj, ring.neg(kd)}, budget, 3);
    std::optional<std::vector<FqtElem>> out;
    if (z)
      out = std::vector<FqtElem>{scaled((*z)[1], ai.den), scaled((*z)[2], aj.den),
                                 scaled((*z)[0], ring.mul(ai.den, aj.den)), scaled((*z)[3], d.den)};
    return out;
  });
}

std::optional<UnitIdealZero<EtaleAlgebra<QtField>::Elem>> witness_search(const EtaleAlgebra<QtField>& a,
                                                                         const PfisterForm<QtElem>& q, long budget) {
  const QtField& k = a.base();
  const auto& ring = k.polys();
  if (!a.is_field()) return std::nullopt;
  QtElem disc = k.sub(k.mul(a.b(), a.b()), k.mul(k.from_int(4), a.c()));
  // disc = d * (s / den)^2 with d rational
  QPoly p = ring.mul(disc.num, disc.den);
  Rational d = ring.leading(p);
  auto s = poly_sqrt(ring, ring.scale(p, 1 / d));
  if (!s) return std::nullopt;
  QtElem root = k.make(*s, disc.den);
  auto zeta = a.scale(a.make(k.from_int(2), a.b()), k.inv(root));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto [i, j] : symbol_pairs<QtField>(q))
    if (k.is_constant(q.symbols[i]) && k.is_constant(q.symbols[j])) pairs.push_back({i, j});
  if (q.fold() == 1 && k.is_constant(q.symbols[0])) {
    auto r = sqrt(RationalField{}, k.constant_value(q.symbols[0]) / d);
    if (!r) return std::nullopt;
    std::vector<EtaleAlgebra<QtField>::Elem> v{a.scale(zeta, k.from_base(*r)), a.one()};
    return UnitIdealZero<EtaleAlgebra<QtField>::Elem>{v, *unit_ideal_cofactors(a, v)};
  }
  return quaternion_zero(a, q, zeta, pairs, [&](const QtElem& ai, const QtElem& aj) {
    std::optional<std::vector<QtElem>> out;
    if (auto z = rational_quaternion(k.constant_value(ai), k.constant_value(aj), d, budget)) {
      out.emplace();
      for (const auto& x : *z) out->push_back(k.from_base(x));
    }
    return out;
  });
}

}  // namespace pfl
