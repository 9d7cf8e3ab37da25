#include "pfisterlab/subring.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pfl {

namespace {

RationalField QQ;

std::set<std::string> place_names(const std::vector<Place>& places) {
  std::set<std::string> out;
  for (const auto& v : places) out.insert(to_string(v));
  return out;
}

bool contains(const std::vector<Place>& places, const Place& v) {
  return std::find(places.begin(), places.end(), v) != places.end();
}

// First residue r != 0 with X^2+X+r irreducible.
FqElem irreducible_target(const FiniteField& rf, const Place& v) {
  for (std::uint32_t code = 1; code < rf.order(); ++code)
    if (quadratic_irreducible(rf, rf.one(), FqElem{code})) return FqElem{code};
  fail(ErrorKind::EmptyResidueChoice, "no residue of c works at " + to_string(v));
}

// Monic irreducible polynomials over F_p by degree, then by coefficient code.
std::optional<FqPoly> nth_monic(const FqPolys& ring, long index) {
  const auto& f = ring.base();
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
  if (!is_irreducible(ring, h)) return std::nullopt;
  return h;
}

// Nonzero polynomials of degree < `bound`, by coefficient code.
std::vector<FqPoly> small_polys(const FqPolys& ring, long bound) {
  const auto& f = ring.base();
  std::vector<FqPoly> out;
  long q = f.order(), total = 1;
  for (long i = 0; i < bound; ++i) total *= q;
  for (long code = 1; code < total; ++code) {
    FqPoly p;
    for (long r = code; r > 0; r /= q) p.push_back(f.from_code(static_cast<std::uint32_t>(r % q)));
    out.push_back(ring.normalize(p));
  }
  return out;
}

// Integers 2, -1, -2, 3, -3, ... that are squarefree.
std::vector<long> small_squarefree(long bound) {
  std::vector<long> out;
  for (long n = 1; n <= bound; ++n) {
    bool sf = true;
    for (long d = 2; d * d <= n && sf; ++d) sf = n % (d * d) != 0;
    if (!sf) continue;
    if (n > 1) out.push_back(n);
    out.push_back(-n);
  }
  return out;
}

}  // namespace

// --- ramification and the choice of c ---------------------------------------

std::vector<Place> delta0(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) fail(ErrorKind::PreconditionFailed, "symbols must be nonzero");
  return isotropic_global(QQ, PfisterForm<Rational>{{a, b}}, 0).second.places;
}

std::vector<Place> delta0(const FqtField& k, const FqtElem& a, const FqtElem& b) {
  if (k.is_zero(a) || k.is_zero(b)) fail(ErrorKind::PreconditionFailed, "symbols must be nonzero");
  return isotropic_global(k, PfisterForm<FqtElem>{{a, b}}, 0).second.places;
}

Rational choose_c(const std::vector<Place>& places) {
  std::vector<QConstraint> cs;
  for (const auto& v : places) {
    const auto* p = std::get_if<PrimePlace>(&v);
    if (!p || p->p == 2) fail(ErrorKind::PreconditionFailed, "c can only be chosen at odd primes, got " + to_string(v));
    FiniteField rf = residue_field(*p);
    cs.push_back({v, Integer(irreducible_target(rf, v).code)});
  }
  Rational c = weak_approx(cs);
  for (const auto& v : places) {
    const auto& p = std::get<PrimePlace>(v);
    FiniteField rf = residue_field(p);
    if (valuation(c, p)[0] != 0 || !quadratic_irreducible(rf, rf.one(), residue(c, p)))
      fail(ErrorKind::ConsistencyViolation, "chosen c fails at " + to_string(v));
  }
  return c;
}

FqtElem choose_c(const FqtField& k, const std::vector<Place>& places) {
  std::vector<FqtConstraint> cs;
  for (const auto& v : places) {
    const auto* w = std::get_if<FptPlace>(&v);
    if (!w) fail(ErrorKind::FieldMismatch, "place " + to_string(v) + " is not a place of " + k.descriptor());
    cs.push_back({v, irreducible_target(residue_field(*w), v)});
  }
  FqtElem c = cs.empty() ? k.one() : weak_approx(k, cs);
  for (const auto& v : places) {
    const auto& w = std::get<FptPlace>(v);
    FiniteField rf = residue_field(w);
    if (!valuation(k, c, w).is_zero() || !quadratic_irreducible(rf, rf.one(), residue(k, c, w)))
      fail(ErrorKind::ConsistencyViolation, "chosen c fails at " + to_string(v));
  }
  return c;
}

// --- special form -----------------------------------------------------------

std::pair<Rational, Rational> special_form(const Rational& a0, const Rational& a1) {
  auto ram = delta0(a0, a1);
  std::vector<QConstraint> cs;
  for (const auto& v : ram) {
    const auto* p = std::get_if<PrimePlace>(&v);
    if (!p) continue;
    long n = valuation(a1, *p)[0];
    if (n < 0) cs.push_back({v, std::nullopt, (1 - n) / 2});
  }
  if (cs.empty()) return {a0, a1};
  Rational s = weak_approx(cs);
  Rational b1 = a1 * s * s;
  if (place_names(delta0(a0, b1)) != place_names(ram))
    fail(ErrorKind::ConsistencyViolation, "square scaling changed the ramification set");
  for (const auto& v : ram)
    if (std::holds_alternative<PrimePlace>(v) && valuation(b1, v).sign() < 0)
      fail(ErrorKind::ConsistencyViolation, "second symbol still has a pole at " + to_string(v));
  return {a0, b1};
}

std::pair<FqtElem, FqtElem> special_form(const FqtField& k, const FqtElem& a0, const FqtElem& a1, long budget) {
  auto ram = delta0(k, a0, a1);
  auto integral_on = [&](const FqtElem& b) {
    for (const auto& v : ram)
      if (valuation(k, b, std::get<FptPlace>(v)).sign() < 0) return false;
    return true;
  };
  if (integral_on(a1)) return {a0, a1};
  auto names = place_names(ram);
  if (k.characteristic() != 2) {
    std::vector<FqtConstraint> cs;
    // Bounds at every ramified place: clearing one pole may not open another.
    for (const auto& v : ram) {
      long n = valuation(k, a1, std::get<FptPlace>(v))[0];
      cs.push_back({v, std::nullopt, (1 - n) / 2});
    }
    FqtElem s = weak_approx(k, cs);
    FqtElem b1 = k.mul(a1, k.mul(s, s));
    if (place_names(delta0(k, a0, b1)) != names || !integral_on(b1))
      fail(ErrorKind::ConsistencyViolation, "square scaling failed to normalize the second symbol");
    return {a0, b1};
  }
  // Characteristic 2: X^2+X+b1 irreducible at each ramified place, then a
  // first symbol with the same ramification.
  std::vector<FqtConstraint> cs;
  for (const auto& v : ram) cs.push_back({v, irreducible_target(residue_field(std::get<FptPlace>(v)), v)});
  FqtElem b1 = weak_approx(k, cs);
  const auto& ring = k.polys();
  long tried = 0;
  auto matches = [&](const FqtElem& b0) {
    ++tried;
    return place_names(delta0(k, b0, b1)) == names;
  };
  if (matches(a0)) return {a0, b1};
  for (long bound = 1; tried < budget; ++bound) {
    auto polys = small_polys(ring, bound);
    for (const auto& num : polys)
      for (const auto& den : polys) {
        if (ring.degree(num) < bound - 1 && ring.degree(den) < bound - 1) continue;
        if (!ring.equal(ring.monic(den), den)) continue;
        if (!ring.is_one(ring.gcd(num, den))) continue;
        FqtElem b0 = k.make(num, den);
        if (matches(b0)) return {b0, b1};
        if (tried >= budget) break;
      }
  }
  fail(ErrorKind::SearchBudgetExceeded, "no first symbol matches the ramification set within the budget");
}

// --- ring instances ---------------------------------------------------------

RingInstance make_ring_instance(const QtElem& a0, const Rational& a1, const Rational& a2) {
  auto [b1, b2] = special_form(a1, a2);
  RingInstance r;
  const QtField& k = r.s.field;
  r.delta0 = delta0(b1, b2);
  r.s.q = PfisterForm<QtElem>{{a0, k.from_base(b1), k.from_base(b2)}};
  r.s.c = k.from_base(choose_c(r.delta0));
  r.big_c = 1;
  for (const auto& v : r.delta0) r.big_c *= std::get<PrimePlace>(v).p;
  verify_ring_instance(r);
  return r;
}

void verify_ring_instance(RingInstance& inst) {
  verify_conditions(inst.s);
  const QtField& k = inst.s.field;
  auto ram = constant_pair_ramification(inst.s);
  if (place_names(ram) != place_names(inst.delta0))
    fail(ErrorKind::PreconditionFailed, "stored ramification set does not match the form");
  Rational last = k.constant_value(inst.s.q.symbols.back());
  for (const auto& v : ram) {
    if (valuation(last, v).sign() < 0)
      fail(ErrorKind::PreconditionFailed, "last symbol has a pole at " + to_string(v));
    if (inst.big_c == 0 || valuation(inst.big_c, v).sign() <= 0)
      fail(ErrorKind::PreconditionFailed, "C is not in the maximal ideal at " + to_string(v));
  }
  auto locus = anisotropy_locus(k, inst.s.q);
  std::vector<Place> stored(inst.locus.begin(), inst.locus.end()), fresh(locus.begin(), locus.end());
  if (place_names(stored) != place_names(fresh) && !inst.locus.empty())
    fail(ErrorKind::PreconditionFailed, "stored locus does not match the form");
  inst.locus = locus;
}

bool ring_rhs_member(const QtElem& x, const RingInstance& inst) {
  const QtField& k = inst.s.field;
  if (k.is_zero(x)) return true;
  std::vector<DivisorialPlace> poles;
  for (const auto& w : support(k, x))
    if (valuation(k, x, w).sign() < 0) poles.push_back(w);
  DivisorialPlace deg{std::nullopt};
  if (valuation(k, x, deg).sign() < 0) poles.push_back(deg);
  const auto& q = inst.s.q;
  for (const auto& w : poles) {
    if (w.is_degree() || w.pi->size() == 2) {
      if (!isotropic_henselian(k, q, w).isotropic) return false;
      continue;
    }
    // Even order of a0: the residue 3-fold over a number field is isotropic
    // at every real place by the dyadic/real condition, hence isotropic.
    if (valuation(k, q.symbols[0], w)[0] % 2 == 0) continue;
    fail(ErrorKind::UnsupportedCoefficientShape, "pole at " + to_string(Place{w}) + " where a0 has odd order");
  }
  return true;
}

RingLhsResult ring_lhs_member(const QtElem& x, const RingInstance& inst, long budget) {
  const QtField& k = inst.s.field;
  RingLhsResult out;
  Rational c = k.constant_value(inst.s.c);
  // Exponent needed per prime; locus places over one prime share it.
  std::map<Integer, long> need;
  if (!k.is_zero(x)) {
    for (const auto& v : inst.locus) {
      Value val = valuation(k, x, v);
      if (val[0] < 0) {
        out.pole = v;
        out.detail.member = Membership::NonMember;
        out.detail.route = Route::LocGlob;
        out.detail.obstruction = v;
        out.detail.reason = "pole at the first stage of " + to_string(Place{v});
        return out;
      }
      long e = val[0] == 0 ? 1 - val[1] : 0;
      auto [it, fresh] = need.emplace(v.p, e);
      if (!fresh) it->second = std::max(it->second, e);
    }
  }
  std::vector<Rational> scalings;
  std::vector<Place> places;
  bool trivial = true;
  for (const auto& [p, e] : need) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    scalings.push_back(e >= 0 ? Rational(pe) : Rational(1) / Rational(pe));
    places.push_back(PrimePlace{p});
    trivial = trivial && e == 0;
  }
  Rational a = trivial ? Rational(1) : phi_combine(scalings, c, places);
  QtElem ax = k.scale(x, a);
  for (const auto& v : inst.locus)
    if (!k.is_zero(ax) && valuation(k, ax, v).sign() <= 0)
      fail(ErrorKind::ConsistencyViolation, "scaling misses the maximal ideal at " + to_string(Place{v}));
  out.detail = s_member_locglob(ax, inst.s, budget);
  if (out.detail.member == Membership::Unresolved)
    fail(ErrorKind::UnresolvedBoundary, "membership of a*x unresolved: " + out.detail.reason);
  out.member = out.detail.is_member();
  out.scaling = a;
  return out;
}

// --- integrality ------------------------------------------------------------

IntegralityCertificate bad_divisor(const QtElem& x) {
  QtField k{RationalField{}};
  IntegralityCertificate cert;
  cert.x = x;
  if (k.is_polynomial(x)) {
    cert.integral = true;
    return cert;
  }
  cert.denominator = factor(k.polys(), x.den);
  DivisorialPlace v{cert.denominator.factors.front().first};
  if (valuation(k, x, v).sign() >= 0) fail(ErrorKind::ConsistencyViolation, "denominator factor is not a pole");
  cert.bad = v;
  return cert;
}

// --- form constructors ------------------------------------------------------

ConstructedForm<Rational> anisotropic_form_over(const Rational& b, const Rational& c, long budget) {
  Rational disc = b * b - 4 * c;
  if (disc == 0) fail(ErrorKind::PreconditionFailed, "X^2+bX+c is not separable");
  static const std::vector<long> partners = small_squarefree(500);
  long tried = 0;
  for (Integer p = 3; tried < budget; p = arith::next_prime(p)) {
    ++tried;
    PrimePlace v{p};
    if (valuation(b, v).sign() < 0 || valuation(c, v).sign() < 0 || !valuation(disc, v).is_zero()) continue;
    FiniteField rf = residue_field(v);
    if (quadratic_irreducible(rf, residue(b, v), residue(c, v))) continue;
    // p > 0 keeps the form split at the real place.
    for (long r : partners) {
      auto ram = delta0(Rational(p), Rational(r));
      if (!contains(ram, v) || contains(ram, PrimePlace{2}) || contains(ram, RealPlace{})) continue;
      PfisterForm<Rational> q{{Rational(p), Rational(r)}};
      if (isotropic_over_etale(QQ, q, b, c, 0).isotropic)
        fail(ErrorKind::ConsistencyViolation, "form ramified at a split prime is isotropic over the algebra");
      return {q, v, tried};
    }
  }
  fail(ErrorKind::SearchBudgetExceeded, "no split prime found within the budget");
}

ConstructedForm<FqtElem> anisotropic_form_over(const FqtField& k, const FqtElem& b, const FqtElem& c, long budget) {
  bool char2 = k.characteristic() == 2;
  FqtElem sep = char2 ? b : k.sub(k.mul(b, b), k.mul(k.from_int(4), c));
  if (k.is_zero(sep)) fail(ErrorKind::PreconditionFailed, "X^2+bX+c is not separable");
  const auto& ring = k.polys();
  long tried = 0;
  for (long index = 0; tried < budget; ++index) {
    auto pi = nth_monic(ring, index);
    if (!pi) continue;
    ++tried;
    FptPlace v{k.base(), *pi};
    if (valuation(k, b, v).sign() < 0 || valuation(k, c, v).sign() < 0 || !valuation(k, sep, v).is_zero()) continue;
    FiniteField rf = residue_field(v);
    if (quadratic_irreducible(rf, residue(k, b, v), residue(k, c, v))) continue;
    FqtElem a1 = k.from_poly(*pi);
    for (const auto& r : small_polys(ring, ring.degree(*pi) + 1)) {
      FqtElem a2 = k.from_poly(r);
      if (!contains(delta0(k, a1, a2), v)) continue;
      PfisterForm<FqtElem> q{{a1, a2}};
      if (isotropic_over_etale(k, q, b, c, 0).isotropic)
        fail(ErrorKind::ConsistencyViolation, "form ramified at a split place is isotropic over the algebra");
      return {q, v, tried};
    }
  }
  fail(ErrorKind::SearchBudgetExceeded, "no split place found within the budget");
}

ConstructedForm<QtElem> anisotropic_form_over(const QtField& k, const QtElem& b, const QtElem& c, long budget) {
  if (!k.is_constant(b) || !k.is_constant(c))
    fail(ErrorKind::UnsupportedCoefficientShape, "the quadratic algebra must be defined over the constants");
  Rational bq = k.constant_value(b), cq = k.constant_value(c);
  // The algebra is unramified at s = 0 with residue algebra Q[X]/(X^2+bX+c),
  // so the inner form only has to stay anisotropic over that.
  auto inner = anisotropic_form_over(bq, cq, budget);
  PfisterForm<QtElem> q{{k.t(), k.from_base(inner.form.symbols[0]), k.from_base(inner.form.symbols[1])}};
  DivisorialPlace v{QPoly{Rational(0), Rational(1)}};
  if (isotropic_henselian(k, q, v).isotropic)
    fail(ErrorKind::ConsistencyViolation, "3-fold form is isotropic at s = 0");
  return {q, v, inner.places_tried};
}

PfisterForm<QtElem> separating_form(const DivisorialPlace& v, const std::vector<DivisorialPlace>& w_set,
                                    long budget) {
  QtField k{RationalField{}};
  auto linear = [](const DivisorialPlace& w) { return w.is_degree() || w.pi->size() == 2; };
  for (const auto& w : w_set) {
    if (w == v) fail(ErrorKind::PreconditionFailed, "v must not lie in the separated set");
    if (!linear(w)) fail(ErrorKind::UnsupportedCoefficientShape, "separated places need residue field Q");
  }
  if (!linear(v) && v.pi->size() != 3)
    fail(ErrorKind::UnsupportedCoefficientShape, "v must have residue field of degree <= 2");
  QtElem b0;
  if (w_set.empty()) {
    b0 = uniformizer(k, v);
  } else {
    std::vector<QtConstraint> cs{{v, std::nullopt, 1}};
    for (const auto& w : w_set) cs.push_back({w, Rational(1)});
    b0 = weak_approx(k, cs);
  }
  if (valuation(k, b0, v) != Value(1)) fail(ErrorKind::ConsistencyViolation, "b0 is not a uniformizer at v");
  // Residue field Q: any form anisotropic over Q (X^2-1 splits).  Degree 2:
  // anisotropic over Q[t]/(pi).
  Rational rb = 0, rc = -1;
  if (!linear(v)) {
    Rational lead = (*v.pi)[2];
    rb = (*v.pi)[1] / lead;
    rc = (*v.pi)[0] / lead;
  }
  auto inner = anisotropic_form_over(rb, rc, budget);
  const auto& a1 = inner.form.symbols[0];
  const auto& a2 = inner.form.symbols[1];
  PfisterForm<QtElem> q{{b0, k.from_base(a1), k.from_base(a2)}};
  if (linear(v) && isotropic_henselian(k, q, v).isotropic)
    fail(ErrorKind::ConsistencyViolation, "separating form is isotropic at v");
  for (const auto& w : w_set) {
    PfisterForm<QtElem> sub{{b0, k.from_base(a2)}};
    if (!isotropic_henselian(k, sub, w).isotropic || !isotropic_henselian(k, q, w).isotropic)
      fail(ErrorKind::ConsistencyViolation, "separating form is anisotropic at " + to_string(Place{w}));
  }
  return q;
}

}  // namespace pfl
