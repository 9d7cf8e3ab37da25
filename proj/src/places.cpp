#include "pfisterlab/places.hpp"

#include <algorithm>
#include <functional>

namespace pfl {

// --- Value ------------------------------------------------------------------

int Value::sign() const {
  if (infinite_) return 1;
  for (long c : coords_)
    if (c != 0) return c > 0 ? 1 : -1;
  return 0;
}

Value Value::operator+(const Value& o) const {
  if (infinite_ || o.infinite_) return infinite(std::max(rank(), o.rank()));
  if (rank() != o.rank()) fail(ErrorKind::FieldMismatch, "adding values of different rank");
  Value r = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

Value Value::operator-() const {
  if (infinite_) fail(ErrorKind::DivisionByZeroOrNonUnit, "negating the infinite value");
  Value r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Value Value::scaled(long m) const {
  if (infinite_) return *this;
  Value r = *this;
  for (auto& c : r.coords_) c *= m;
  return r;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.coords_ <=> b.coords_;
}

std::string Value::to_string() const {
  if (infinite_) return "inf";
  if (coords_.size() == 1) return std::to_string(coords_[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + std::to_string(coords_[i]);
  return s + ")";
}

// --- printing and parsing ---------------------------------------------------

namespace {

std::string div_to_string(const DivisorialPlace& v) {
  if (v.is_degree()) return "deg";
  return "div:" + QPolys(RationalField{}).to_string(*v.pi);
}

}  // namespace

std::string to_string(const Place& v) {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, PrimePlace>) return "p:" + w.p.get_str();
        else if constexpr (std::is_same_v<T, RealPlace>) return "real";
        else if constexpr (std::is_same_v<T, FptPlace>) {
          if (w.is_degree()) return "deg";
          return "fpt:" + FqPolys(w.k).to_string(*w.pi);
        } else if constexpr (std::is_same_v<T, DivisorialPlace>) return div_to_string(w);
        else return "comp:" + div_to_string(w.first) + "/p:" + w.p.get_str();
      },
      v);
}

namespace {

PrimePlace parse_prime(std::string_view text) {
  std::string s(text);
  if (s.size() < 3 || s.substr(0, 2) != "p:") fail(ErrorKind::SyntaxError, "expected p:<prime>, got '" + s + "'");
  std::string digits = s.substr(2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::SyntaxError, "bad prime in '" + s + "'");
  Integer p(digits);
  if (!arith::is_prime(p)) fail(ErrorKind::SyntaxError, p.get_str() + " is not prime");
  return {p};
}

DivisorialPlace parse_div(std::string_view text) {
  std::string s(text);
  if (s == "deg") return {std::nullopt};
  if (s.substr(0, 4) != "div:") fail(ErrorKind::SyntaxError, "expected div:<poly> or deg, got '" + s + "'");
  QtField qt(RationalField{});
  auto e = parse_element(qt, s.substr(4));
  if (!qt.is_polynomial(e) || qt.polys().degree(e.num) < 1)
    fail(ErrorKind::SyntaxError, "place polynomial must be non-constant: " + s);
  QPoly pi = qt.polys().monic(e.num);
  if (!is_irreducible(qt.polys(), pi)) fail(ErrorKind::SyntaxError, "place polynomial is reducible: " + s);
  return {pi};
}

}  // namespace

Place parse_place(std::string_view text, const AnyField& field) {
  std::string s(text);
  if (s == "real") return RealPlace{};
  if (s.substr(0, 2) == "p:") return parse_prime(s);
  if (s.substr(0, 5) == "comp:") {
    auto slash = s.rfind('/');
    if (slash == std::string::npos) fail(ErrorKind::SyntaxError, "composite place needs '/': " + s);
    return CompositePlace{parse_div(s.substr(5, slash - 5)), parse_prime(s.substr(slash + 1)).p};
  }
  if (s == "deg" || s.substr(0, 4) == "fpt:" || s.substr(0, 4) == "div:") {
    if (const auto* k = std::get_if<FqtField>(&field)) {
      if (!k->base().is_prime_field()) fail(ErrorKind::UnsupportedField, "places need a prime constant field");
      if (s == "deg") return FptPlace{k->base(), std::nullopt};
      auto e = parse_element(*k, s.substr(4));
      if (!k->is_polynomial(e) || k->polys().degree(e.num) < 1)
        fail(ErrorKind::SyntaxError, "place polynomial must be non-constant: " + s);
      FqPoly pi = k->polys().monic(e.num);
      if (!is_irreducible(k->polys(), pi)) fail(ErrorKind::SyntaxError, "place polynomial is reducible: " + s);
      return FptPlace{k->base(), pi};
    }
    if (std::holds_alternative<QtField>(field)) {
      if (s.substr(0, 4) == "fpt:") fail(ErrorKind::FieldMismatch, "fpt places live on F_p(t)");
      return parse_div(s);
    }
    fail(ErrorKind::FieldMismatch, "place '" + s + "' needs a rational function field");
  }
  fail(ErrorKind::SyntaxError, "unknown place syntax '" + s + "'");
}

// --- valuations -------------------------------------------------------------

namespace {

template <class K>
long order_at(const K& k, const typename K::Elem& x, const std::optional<typename K::Poly>& pi) {
  const auto& ring = k.polys();
  if (!pi) return ring.degree(x.den) - ring.degree(x.num);
  return ring.multiplicity(x.num, *pi) - ring.multiplicity(x.den, *pi);
}

template <class K>
typename K::Elem place_uniformizer(const K& k, const std::optional<typename K::Poly>& pi) {
  if (!pi) return k.inv(k.t());
  return k.from_poly(*pi);
}

template <class K>
typename K::Elem strip(const K& k, const typename K::Elem& x, const std::optional<typename K::Poly>& pi, long* order) {
  if (k.is_zero(x)) fail(ErrorKind::PreconditionFailed, "unit part of zero");
  long n = order_at(k, x, pi);
  if (order) *order = n;
  return k.div(x, k.pow(place_uniformizer(k, pi), n));
}

}  // namespace

Value valuation(const Rational& x, const PrimePlace& v) {
  if (x == 0) return Value::infinite();
  return Value(arith::valuation(x, v.p));
}

Value valuation(const Rational& x, const CompositePlace& v) {
  if (x == 0) return Value::infinite(2);
  return Value(0, arith::valuation(x, v.p));
}

Value valuation(const FqtField& k, const FqtField::Elem& x, const FptPlace& v) {
  if (k.is_zero(x)) return Value::infinite();
  return Value(order_at(k, x, v.pi));
}

Value valuation(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v) {
  if (k.is_zero(x)) return Value::infinite();
  return Value(order_at(k, x, v.pi));
}

Value valuation(const QtField& k, const QtField::Elem& x, const CompositePlace& v) {
  if (k.is_zero(x)) return Value::infinite(2);
  long n = 0;
  auto u = unit_part(k, x, v.first, &n);
  Rational r = residue(k, u, v.first);
  return Value(n, arith::valuation(r, v.p));
}

Value valuation(const Rational& x, const Place& v) {
  if (const auto* w = std::get_if<PrimePlace>(&v)) return valuation(x, *w);
  if (const auto* w = std::get_if<CompositePlace>(&v)) return valuation(x, *w);
  fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a valuation on Q");
}

Value valuation(const FqtField& k, const FqtField::Elem& x, const Place& v) {
  if (const auto* w = std::get_if<FptPlace>(&v)) {
    if (!(w->k == k.base())) fail(ErrorKind::FieldMismatch, "place over a different constant field");
    return valuation(k, x, *w);
  }
  fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a place of " + k.descriptor());
}

Value valuation(const QtField& k, const QtField::Elem& x, const Place& v) {
  if (const auto* w = std::get_if<DivisorialPlace>(&v)) return valuation(k, x, *w);
  if (const auto* w = std::get_if<CompositePlace>(&v)) return valuation(k, x, *w);
  fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a valuation on Q(t)");
}

int real_sign(const Rational& x) { return sgn(x); }

// --- residues ---------------------------------------------------------------

FiniteField residue_field(const PrimePlace& v) {
  if (!v.p.fits_uint_p()) fail(ErrorKind::UnsupportedField, "residue field too large");
  return FiniteField::prime(static_cast<std::uint32_t>(v.p.get_ui()));
}

FiniteField residue_field(const FptPlace& v) {
  if (v.is_degree() || v.pi->size() == 2) return v.k;
  std::vector<std::uint32_t> modulus;
  for (auto c : *v.pi) modulus.push_back(c.code);
  return FiniteField(v.k.p(), modulus);
}

FiniteField residue_field(const CompositePlace& v) { return residue_field(PrimePlace{v.p}); }

FqElem residue(const Rational& x, const PrimePlace& v) {
  if (x != 0 && arith::valuation(x, v.p) < 0) fail(ErrorKind::NotInValuationRing, "negative valuation at " + to_string(Place{v}));
  FiniteField k = residue_field(v);
  return k.from_int(arith::reduce_mod(x, v.p).get_si());
}

FqElem residue(const FqtField& k, const FqtField::Elem& x, const FptPlace& v) {
  FiniteField res = residue_field(v);
  if (k.is_zero(x)) return res.zero();
  long n = order_at(k, x, v.pi);
  if (n < 0) fail(ErrorKind::NotInValuationRing, "pole at " + to_string(Place{v}));
  if (n > 0) return res.zero();
  const auto& ring = k.polys();
  if (v.is_degree()) return k.base().div(ring.leading(x.num), ring.leading(x.den));
  FqPoly r = ring.mulmod(x.num, ring.inverse_mod(x.den, *v.pi), *v.pi);
  std::vector<std::uint32_t> digits;
  for (auto c : r) digits.push_back(c.code);
  return res.from_digits(digits);
}

Rational residue(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v) {
  if (k.is_zero(x)) return 0;
  long n = order_at(k, x, v.pi);
  if (n < 0) fail(ErrorKind::NotInValuationRing, "pole at " + to_string(Place{v}));
  if (n > 0) return 0;
  const auto& ring = k.polys();
  if (v.is_degree()) return ring.leading(x.num) / ring.leading(x.den);
  if (v.pi->size() != 2)
    fail(ErrorKind::UnsupportedValuation, "residue field of " + to_string(Place{v}) + " is not Q");
  Rational root = -(*v.pi)[0];
  return ring.eval(x.num, root) / ring.eval(x.den, root);
}

FqElem residue(const QtField& k, const QtField::Elem& x, const CompositePlace& v) {
  FiniteField res = residue_field(v);
  if (k.is_zero(x)) return res.zero();
  Value val = valuation(k, x, v);
  if (val.sign() < 0) fail(ErrorKind::NotInValuationRing, "negative value at " + to_string(Place{v}));
  if (val[0] > 0) return res.zero();
  return residue(residue(k, x, v.first), PrimePlace{v.p});
}

FqElem residue(const Rational& x, const CompositePlace& v) { return residue(x, PrimePlace{v.p}); }

Rational uniformizer(const PrimePlace& v) { return Rational(v.p); }
FqtField::Elem uniformizer(const FqtField& k, const FptPlace& v) { return place_uniformizer(k, v.pi); }
QtField::Elem uniformizer(const QtField& k, const DivisorialPlace& v) { return place_uniformizer(k, v.pi); }
QtField::Elem uniformizer(const QtField& k, const CompositePlace& v) { return place_uniformizer(k, v.first.pi); }

long place_degree(const FptPlace& v) { return v.is_degree() ? 1 : static_cast<long>(v.pi->size()) - 1; }

FqtField::Elem unit_part(const FqtField& k, const FqtField::Elem& x, const FptPlace& v, long* order) {
  return strip(k, x, v.pi, order);
}

QtField::Elem unit_part(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v, long* order) {
  return strip(k, x, v.pi, order);
}

std::vector<FptPlace> support(const FqtField& k, const FqtField::Elem& x) {
  std::vector<FptPlace> out;
  for (const auto* poly : {&x.num, &x.den}) {
    if (k.polys().degree(*poly) < 1) continue;
    for (auto& [g, m] : factor(k.polys(), *poly).factors) out.push_back({k.base(), g});
  }
  std::sort(out.begin(), out.end(), [](const FptPlace& a, const FptPlace& b) {
    if (a.pi->size() != b.pi->size()) return a.pi->size() < b.pi->size();
    return std::lexicographical_compare(a.pi->rbegin(), a.pi->rend(), b.pi->rbegin(), b.pi->rend());
  });
  return out;
}

std::vector<DivisorialPlace> support(const QtField& k, const QtField::Elem& x) {
  std::vector<DivisorialPlace> out;
  for (const auto* poly : {&x.num, &x.den}) {
    if (k.polys().degree(*poly) < 1) continue;
    for (auto& [g, m] : factor(k.polys(), *poly).factors) out.push_back({g});
  }
  std::sort(out.begin(), out.end(), [](const DivisorialPlace& a, const DivisorialPlace& b) {
    if (a.pi->size() != b.pi->size()) return a.pi->size() < b.pi->size();
    return std::lexicographical_compare(a.pi->rbegin(), a.pi->rend(), b.pi->rbegin(), b.pi->rend());
  });
  return out;
}

// --- weak approximation -----------------------------------------------------

namespace {

template <class Residue>
void check_distinct(const std::vector<Constraint<Residue>>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i].place == cs[j].place)
        fail(ErrorKind::InconsistentConstraints, "place " + to_string(cs[i].place) + " listed twice");
}

}  // namespace

Rational weak_approx(const std::vector<QConstraint>& constraints) {
  check_distinct(constraints);
  Integer x = 0, modulus = 1;
  int sign = 0;
  for (const auto& c : constraints) {
    if (std::holds_alternative<RealPlace>(c.place)) {
      if (c.sign == 0) fail(ErrorKind::PreconditionFailed, "real place constraint needs a sign");
      sign = c.sign;
      continue;
    }
    const auto* pp = std::get_if<PrimePlace>(&c.place);
    if (!pp) fail(ErrorKind::FieldMismatch, "place " + to_string(c.place) + " is not a place of Q");
    const Integer& p = pp->p;
    Integer target, m;
    if (c.residue) {
      Integer r = arith::mod(*c.residue, p);
      if (r != 0) {
        target = r;
        m = p;
      } else {
        target = p;
        m = p * p;
      }
    } else if (c.min_valuation <= 0) {
      target = 1;
      m = p;
    } else {
      mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), c.min_valuation + 1);
      target = m / p;
    }
    // Combine x mod modulus with target mod m.
    Integer inv = arith::inverse_mod(modulus, m);
    Integer k = arith::mod((target - x) * inv, m);
    x += modulus * k;
    modulus *= m;
    x = arith::mod(x, modulus);
  }
  if (x == 0) x = modulus;
  if (sign < 0) x -= modulus;
  Rational result(x);
  for (const auto& c : constraints) {
    bool ok = true;
    if (std::holds_alternative<RealPlace>(c.place)) ok = real_sign(result) == c.sign;
    else {
      const auto& v = std::get<PrimePlace>(c.place);
      if (c.residue) ok = valuation(result, v).sign() >= 0 && residue(result, v).code == arith::mod(*c.residue, v.p);
      else ok = valuation(result, v) >= Value(c.min_valuation);
    }
    if (!ok) fail(ErrorKind::InconsistentConstraints, "weak approximation failed to verify at " + to_string(c.place));
  }
  return result;
}

namespace {

// Generic function-field weak approximation; residues are given as
// polynomials of degree < deg pi.
template <class K>
typename K::Elem weak_approx_poly(const K& k, const std::vector<std::optional<typename K::Poly>>& places,
                                  const std::vector<std::optional<typename K::Poly>>& residues,
                                  const std::vector<long>& min_vals,
                                  const std::function<std::optional<typename K::Poly>(long)>& candidate) {
  using Poly = typename K::Poly;
  const auto& ring = k.polys();
  Poly x0, modulus = ring.one();
  bool has_degree = false;
  long deg_value = 0;
  typename K::Coeff deg_lead = k.base().one();
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (!places[i]) {
      has_degree = true;
      if (residues[i]) {
        Poly r = *residues[i];
        if (r.empty()) deg_value = 1;
        else {
          deg_value = 0;
          deg_lead = r[0];
        }
      } else {
        deg_value = min_vals[i];
      }
      continue;
    }
    const Poly& pi = *places[i];
    Poly target, m;
    if (residues[i]) {
      Poly r = ring.mod(*residues[i], pi);
      if (!r.empty()) {
        target = r;
        m = pi;
      } else {
        target = pi;
        m = ring.mul(pi, pi);
      }
    } else if (min_vals[i] <= 0) {
      target = ring.one();
      m = pi;
    } else {
      m = ring.pow(pi, static_cast<unsigned long>(min_vals[i] + 1));
      target = ring.pow(pi, static_cast<unsigned long>(min_vals[i]));
    }
    Poly inv = ring.inverse_mod(modulus, m);
    Poly step = ring.mulmod(ring.sub(target, x0), inv, m);
    x0 = ring.add(x0, ring.mul(modulus, step));
    modulus = ring.mul(modulus, m);
    x0 = ring.mod(x0, modulus);
  }
  if (!has_degree) {
    if (x0.empty()) x0 = modulus;
    return k.from_poly(x0);
  }
  // x = P/Q with Q a power of an irreducible h coprime to the modulus.
  long dm = ring.degree(modulus);
  long needed = std::max(0L, dm + deg_value);
  Poly q = ring.one();
  if (needed > 0) {
    Poly h;
    for (long index = 0; index < 1000000 && h.empty(); ++index) {
      auto cand = candidate(index);
      if (cand && ring.is_one(ring.gcd(*cand, modulus))) h = *cand;
    }
    if (h.empty()) fail(ErrorKind::InconsistentConstraints, "no auxiliary denominator found");
    while (ring.degree(q) < needed) q = ring.mul(q, h);
  }
  long target_degree = ring.degree(q) - deg_value;
  Poly pr = ring.mod(ring.mul(x0, q), modulus);
  Poly lead = ring.constant(deg_lead);
  Poly h = ring.mul(lead, ring.pow(ring.x(), static_cast<unsigned long>(target_degree - dm)));
  Poly p = ring.add(pr, ring.mul(modulus, h));
  return k.make(p, q);
}

}  // namespace

FqtField::Elem weak_approx(const FqtField& k, const std::vector<FqtConstraint>& constraints) {
  check_distinct(constraints);
  std::vector<std::optional<FqPoly>> places, residues;
  std::vector<long> mins;
  for (const auto& c : constraints) {
    const auto* v = std::get_if<FptPlace>(&c.place);
    if (!v) fail(ErrorKind::FieldMismatch, "place " + to_string(c.place) + " is not a place of " + k.descriptor());
    places.push_back(v->pi);
    mins.push_back(c.min_valuation);
    if (c.residue) {
      if (v->is_degree()) residues.push_back(k.polys().constant(*c.residue));
      else {
        FiniteField res = residue_field(*v);
        FqPoly r;
        for (auto d : res.digits(*c.residue)) r.push_back(k.base().from_int(d));
        residues.push_back(k.polys().normalize(r));
      }
    } else {
      residues.push_back(std::nullopt);
    }
  }
  // Candidate denominators: monic irreducibles in order of degree.
  auto candidate = [&](long index) -> std::optional<FqPoly> {
    const auto& f = k.base();
    long q = f.order();
    long degree = 1, count = q;
    while (index >= count) {
      index -= count;
      ++degree;
      count *= q;
    }
    FqPoly h(static_cast<std::size_t>(degree + 1), f.zero());
    h[degree] = f.one();
    for (long i = 0; i < degree; ++i, index /= q) h[i] = f.from_code(static_cast<std::uint32_t>(index % q));
    if (!is_irreducible(k.polys(), h)) return std::nullopt;
    return h;
  };
  auto x = weak_approx_poly<FqtField>(k, places, residues, mins, candidate);
  for (const auto& c : constraints) {
    const auto& v = std::get<FptPlace>(c.place);
    bool ok = c.residue ? valuation(k, x, v).sign() >= 0 && residue(k, x, v) == *c.residue
                        : valuation(k, x, v) >= Value(c.min_valuation);
    if (!ok) fail(ErrorKind::InconsistentConstraints, "weak approximation failed to verify at " + to_string(c.place));
  }
  return x;
}

QtField::Elem weak_approx(const QtField& k, const std::vector<QtConstraint>& constraints) {
  check_distinct(constraints);
  std::vector<std::optional<QPoly>> places, residues;
  std::vector<long> mins;
  for (const auto& c : constraints) {
    const auto* v = std::get_if<DivisorialPlace>(&c.place);
    if (!v) fail(ErrorKind::FieldMismatch, "place " + to_string(c.place) + " is not a divisorial place of Q(t)");
    places.push_back(v->pi);
    mins.push_back(c.min_valuation);
    if (c.residue) residues.push_back(k.polys().constant(*c.residue));
    else residues.push_back(std::nullopt);
  }
  // Candidate denominators t - a for a = 0, 1, -1, 2, -2, ...
  auto candidate = [](long index) -> std::optional<QPoly> {
    long a = (index + 1) / 2 * (index % 2 ? 1 : -1);
    return QPoly{Rational(-a), Rational(1)};
  };
  auto x = weak_approx_poly<QtField>(k, places, residues, mins, candidate);
  for (const auto& c : constraints) {
    const auto& v = std::get<DivisorialPlace>(c.place);
    bool ok = true;
    if (c.residue) {
      ok = valuation(k, x, v).sign() >= 0;
      if (ok && (v.is_degree() || v.pi->size() == 2)) ok = residue(k, x, v) == *c.residue;
    } else {
      ok = valuation(k, x, v) >= Value(c.min_valuation);
    }
    if (!ok) fail(ErrorKind::InconsistentConstraints, "weak approximation failed to verify at " + to_string(c.place));
  }
  return x;
}

// --- phi combination --------------------------------------------------------

Rational phi(const Rational& x, const Rational& y, const Rational& c) { return x * x + x * y + c * y * y; }

Rational phi_combine(const std::vector<Rational>& elements, const Rational& c, const std::vector<Place>& places) {
  for (const auto& v : places) {
    Integer p;
    if (const auto* w = std::get_if<PrimePlace>(&v)) p = w->p;
    else if (const auto* w = std::get_if<CompositePlace>(&v)) p = w->p;
    else fail(ErrorKind::PreconditionFailed, "phi_combine needs prime or composite places, got " + to_string(v));
    if (c == 0 || arith::valuation(c, p) != 0)
      fail(ErrorKind::PreconditionFailed, "v(c) != 0 at " + to_string(v));
    FiniteField res = residue_field(PrimePlace{p});
    if (!quadratic_irreducible(res, res.one(), residue(c, PrimePlace{p})))
      fail(ErrorKind::PreconditionFailed, "X^2+X+c reducible over the residue field at " + to_string(v));
  }
  if (elements.empty()) return 1;
  for (const auto& a : elements)
    if (a == 0) fail(ErrorKind::PreconditionFailed, "phi_combine needs nonzero elements");
  Rational acc = 1 / elements.back();
  for (std::size_t i = elements.size() - 1; i-- > 0;) acc = phi(1 / elements[i], acc, c);
  Rational a = 1 / phi(1, acc, c);
  for (const auto& v : places)
    for (const auto& e : elements)
      if (valuation(a, v) < valuation(e, v))
        fail(ErrorKind::PreconditionFailed, "phi_combine post-condition failed at " + to_string(v));
  return a;
}

}  // namespace pfl
