#include "pfisterlab/spredicate.hpp"

#include <map>
#include <mutex>

namespace pfl {

using FqtElem = FqtField::Elem;
using QtElem = QtField::Elem;

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "non-member";
    case Membership::Unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::QIsotropic: return "QIsotropic";
    case Route::DirectEtale: return "DirectEtale";
    case Route::HenselianSandwich: return "HenselianSandwich";
    case Route::LocGlob: return "LocGlob";
  }
  return "DirectEtale";
}

namespace {

// F_{q^2} and the image of F_q inside it.
struct Quadratic {
  FiniteField big;
  std::vector<FqElem> image;
};

const Quadratic& quadratic_extension(const FiniteField& k) {
  static std::mutex mu;
  static std::map<std::vector<std::uint32_t>, std::unique_ptr<Quadratic>> cache;
  std::lock_guard lock(mu);
  std::vector<std::uint32_t> key = k.modulus();
  key.push_back(k.p());
  auto& slot = cache[key];
  if (!slot) {
    FiniteField big = FiniteField::of_order(k.order() * k.order());
    slot = std::make_unique<Quadratic>(Quadratic{big, embedding(k, big)});
  }
  return *slot;
}

struct FiniteRoutes {
  DirectRoutes routes;
  bool isotropic_over_base = false;
  std::optional<UnitIdealZero<EtaleAlgebra<FiniteField>::Elem>> witness;
};

FiniteRoutes finite_routes(const SInstance<FiniteField>& inst, FqElem x) {
  const FiniteField& k = inst.field;
  validate(k, inst.q);
  FqElem b = k.sub(k.one(), x);
  FiniteRoutes out;
  out.isotropic_over_base = isotropic_finite(k, inst.q).isotropic;
  bool irreducible = quadratic_irreducible(k, b, inst.c);
  const Quadratic& ext = quadratic_extension(k);
  PfisterForm<FqElem> lifted;
  for (auto s : inst.q.symbols) lifted.symbols.push_back(ext.image[s.code]);
  auto big_form = expand(ext.big, lifted);

  out.routes.definition = out.isotropic_over_base || (irreducible && isotropic_residue(ext.big, big_form));

  EtaleAlgebra<FiniteField> a(k, b, inst.c);
  if (irreducible) {
    out.routes.projective = finite_zero(ext.big, big_form).has_value();
  } else if (auto z = finite_zero(k, expand(k, inst.q))) {
    // Split or dual numbers: the constant vector is already a unimodular zero.
    std::vector<EtaleAlgebra<FiniteField>::Elem> v;
    for (auto e : *z) v.push_back(a.from_base(e));
    if (!a.is_zero(evaluate(a, lift_form(a, inst.q), v)) || !unit_ideal_cofactors(a, v))
      fail(ErrorKind::ConsistencyViolation, "base zero does not lift to " + a.descriptor());
    out.routes.projective = true;
  }

  out.witness = witness_search(a, inst.q, 0);
  out.routes.unit_ideal = out.witness.has_value();
  return out;
}

template <class K>
void check_witness(const EtaleAlgebra<K>& a, const PfisterForm<typename K::Elem>& q,
                   const UnitIdealZero<typename EtaleAlgebra<K>::Elem>& w) {
  if (!a.is_zero(evaluate(a, lift_form(a, q), w.vector)))
    fail(ErrorKind::ConsistencyViolation, "etale witness is not a zero");
  auto acc = a.zero();
  for (std::size_t i = 0; i < w.vector.size(); ++i) acc = a.add(acc, a.mul(w.cofactors[i], w.vector[i]));
  if (!a.is_one(acc)) fail(ErrorKind::ConsistencyViolation, "etale witness cofactors do not sum to 1");
}

template <class K>
SMembershipResult<K> direct_global(const typename K::Elem& x, const SInstance<K>& inst, long budget) {
  const K& k = inst.field;
  validate(k, inst.q);
  SMembershipResult<K> r;
  auto [global, ram] = isotropic_global(k, inst.q, 0);
  r.checked = ram.places;
  if (global.isotropic) {
    r.member = Membership::Member;
    r.route = Route::QIsotropic;
    r.reason = "q isotropic over the base field";
    return r;
  }
  auto b = k.sub(k.one(), x);
  EtaleAlgebra<K> a(k, b, inst.c);
  r.route = Route::DirectEtale;
  if (!a.is_field()) {
    r.member = Membership::NonMember;
    r.reason = "X^2+(1-x)X+c reducible";
    return r;
  }
  auto verdict = isotropic_over_etale(k, inst.q, b, inst.c, 0);
  auto w = witness_search(a, inst.q, budget);
  if (w) {
    check_witness(a, inst.q, *w);
    if (!verdict.isotropic) fail(ErrorKind::ConsistencyViolation, "witness over an algebra decided anisotropic");
  }
  r.witness = w;
  if (verdict.isotropic) {
    r.member = Membership::Member;
    r.reason = w ? "unit-ideal zero over A" : "no ramified place splits in A";
  } else {
    r.member = Membership::NonMember;
    if (const auto* o = std::get_if<LocalObstruction>(&verdict.evidence)) r.obstruction = o->place;
    r.reason = "a ramified place splits in A";
  }
  return r;
}

// Residue analysis shared by every henselian place.  `exact` settles the
// double root case.
template <class K, class Residue, class Exact>
SMembershipResult<K> sandwich(const Place& place, int order_sign, const FiniteField& rf, Residue x_bar, FqElem c_bar,
                              Exact exact) {
  SMembershipResult<K> r;
  r.route = Route::HenselianSandwich;
  r.checked = {place};
  if (order_sign > 0) {
    r.member = Membership::Member;
    r.reason = "v(x) > 0";
    return r;
  }
  if (order_sign < 0) {
    r.member = Membership::NonMember;
    r.obstruction = place;
    r.reason = "v(x) < 0";
    return r;
  }
  FqElem b = rf.sub(rf.one(), x_bar());
  if (quadratic_irreducible(rf, b, c_bar)) {
    r.member = Membership::Member;
    r.reason = "reduced polynomial irreducible";
    return r;
  }
  bool separable = rf.characteristic() == 2 ? !rf.is_zero(b) : !rf.is_zero(rf.sub(rf.mul(b, b), rf.mul(rf.from_int(4), c_bar)));
  if (separable) {
    r.member = Membership::NonMember;
    r.obstruction = place;
    r.reason = "reduced polynomial has simple roots";
    return r;
  }
  std::optional<bool> e = exact();
  if (!e) {
    r.member = Membership::Unresolved;
    r.reason = "inseparable reduced polynomial";
    return r;
  }
  r.member = *e ? Membership::Member : Membership::NonMember;
  if (!*e) r.obstruction = place;
  r.reason = "double root: discriminant represented by the pure subform";
  return r;
}

void require_c_condition(const FiniteField& rf, int c_sign, FqElem c_bar, const Place& v) {
  if (c_sign != 0 || !quadratic_irreducible(rf, rf.one(), c_bar))
    fail(ErrorKind::PreconditionFailed, "X^2+X+c is not irreducible over the residue field at " + to_string(v));
}

// Pure subform coefficients followed by the discriminant.
template <class K>
std::optional<DiagonalForm<typename K::Elem>> represent_form(const K& k, const typename K::Elem& x,
                                                             const SInstance<K>& inst) {
  auto b = k.sub(k.one(), x);
  auto d = k.sub(k.mul(b, b), k.mul(k.from_int(4), inst.c));
  if (k.is_zero(d)) return std::nullopt;
  auto f = std::get<DiagonalForm<typename K::Elem>>(expand(k, inst.q));
  DiagonalForm<typename K::Elem> out;
  out.coeffs.assign(f.coeffs.begin() + 1, f.coeffs.end());
  out.coeffs.push_back(d);
  return out;
}

}  // namespace

DirectRoutes s_routes(const SInstance<FiniteField>& inst, FqElem x) { return finite_routes(inst, x).routes; }

SMembershipResult<FiniteField> s_member_direct(FqElem x, const SInstance<FiniteField>& inst) {
  auto fr = finite_routes(inst, x);
  const auto& d = fr.routes;
  if (d.definition != d.projective || d.definition != d.unit_ideal)
    fail(ErrorKind::ConsistencyViolation, "membership characterizations disagree at x = " + inst.field.to_string(x));
  SMembershipResult<FiniteField> r;
  r.member = d.definition ? Membership::Member : Membership::NonMember;
  r.route = fr.isotropic_over_base ? Route::QIsotropic : Route::DirectEtale;
  r.witness = fr.witness;
  if (fr.witness) check_witness(EtaleAlgebra<FiniteField>(inst.field, inst.field.sub(inst.field.one(), x), inst.c),
                                inst.q, *fr.witness);
  r.reason = fr.isotropic_over_base ? "q isotropic over the base field"
                                    : (d.definition ? "unit-ideal zero over A" : "no unit-ideal zero over A");
  return r;
}

SMembershipResult<RationalField> s_member_direct(const Rational& x, const SInstance<RationalField>& inst,
                                                 long budget) {
  return direct_global(x, inst, budget);
}

SMembershipResult<FqtField> s_member_direct(const FqtElem& x, const SInstance<FqtField>& inst, long budget) {
  return direct_global(x, inst, budget);
}

// --- henselian --------------------------------------------------------------

std::optional<bool> henselian_member_exact(const Rational& x, const SInstance<RationalField>& inst,
                                           const PrimePlace& v) {
  if (v.p == 2) fail(ErrorKind::DyadicResidue, "mixed characteristic (0,2) is excluded");
  auto f = represent_form(inst.field, x, inst);
  if (!f) return false;
  return isotropic_diagonal_local(f->coeffs, v);
}

std::optional<bool> henselian_member_exact(const FqtElem& x, const SInstance<FqtField>& inst, const FptPlace& v) {
  const FqtField& k = inst.field;
  if (k.characteristic() == 2) return std::nullopt;
  auto f = represent_form(k, x, inst);
  if (!f) return false;
  auto split = springer_split_expanded(FptLocal{k, v}, ExpandedForm<FqtElem>(*f));
  FiniteField rf = residue_field(v);
  return isotropic_residue(rf, split.q0) || isotropic_residue(rf, split.q1);
}

std::optional<bool> henselian_member_exact(const QtElem& x, const SInstance<QtField>& inst, const CompositePlace& v) {
  if (v.p == 2) fail(ErrorKind::DyadicResidue, "mixed characteristic (0,2) is excluded");
  auto f = represent_form(inst.field, x, inst);
  if (!f) return false;
  auto split = springer_split_expanded(DivLocal{inst.field, v.first}, ExpandedForm<QtElem>(*f));
  PrimePlace p{v.p};
  return isotropic_diagonal_local(std::get<DiagonalForm<Rational>>(split.q0).coeffs, p) ||
         isotropic_diagonal_local(std::get<DiagonalForm<Rational>>(split.q1).coeffs, p);
}

SMembershipResult<RationalField> s_member_henselian(const Rational& x, const SInstance<RationalField>& inst,
                                                    const Place& v) {
  const auto* pp = std::get_if<PrimePlace>(&v);
  if (!pp) fail(ErrorKind::UnsupportedValuation, "henselian membership over Q needs a prime place");
  if (pp->p == 2) fail(ErrorKind::DyadicResidue, "mixed characteristic (0,2) is excluded");
  validate(inst.field, inst.q);
  if (isotropic_henselian(inst.field, inst.q, v).isotropic)
    fail(ErrorKind::PreconditionFailed, "q is isotropic over the henselisation at " + to_string(v));
  FiniteField rf = residue_field(*pp);
  require_c_condition(rf, valuation(inst.c, *pp).sign(), residue(inst.c, *pp), v);
  return sandwich<RationalField>(
      v, valuation(x, *pp).sign(), rf, [&] { return residue(x, *pp); }, residue(inst.c, *pp),
      [&] { return henselian_member_exact(x, inst, *pp); });
}

SMembershipResult<FqtField> s_member_henselian(const FqtElem& x, const SInstance<FqtField>& inst, const FptPlace& v) {
  const FqtField& k = inst.field;
  validate(k, inst.q);
  if (isotropic_henselian(k, inst.q, v).isotropic)
    fail(ErrorKind::PreconditionFailed, "q is isotropic over the henselisation at " + to_string(Place{v}));
  FiniteField rf = residue_field(v);
  require_c_condition(rf, valuation(k, inst.c, v).sign(), residue(k, inst.c, v), v);
  return sandwich<FqtField>(
      v, valuation(k, x, v).sign(), rf, [&] { return residue(k, x, v); }, residue(k, inst.c, v),
      [&] { return henselian_member_exact(x, inst, v); });
}

SMembershipResult<QtField> s_member_henselian(const QtElem& x, const SInstance<QtField>& inst,
                                              const CompositePlace& v) {
  const QtField& k = inst.field;
  validate(k, inst.q);
  if (v.p == 2) fail(ErrorKind::DyadicResidue, "mixed characteristic (0,2) is excluded");
  if (isotropic_henselian(k, inst.q, v).isotropic)
    fail(ErrorKind::PreconditionFailed, "q is isotropic over the henselisation at " + to_string(Place{v}));
  FiniteField rf = residue_field(v);
  require_c_condition(rf, valuation(k, inst.c, v).sign(), residue(k, inst.c, v), v);
  return sandwich<QtField>(
      v, valuation(k, x, v).sign(), rf, [&] { return residue(k, x, v); }, residue(k, inst.c, v),
      [&] { return henselian_member_exact(x, inst, v); });
}

// --- Q(t) -------------------------------------------------------------------

namespace {

std::pair<Rational, Rational> constant_pair(const QtField& k, const PfisterForm<QtElem>& q) {
  if (q.fold() != 3) fail(ErrorKind::PreconditionFailed, "expected a 3-fold form over Q(t)");
  if (!k.is_constant(q.symbols[1]) || !k.is_constant(q.symbols[2]))
    fail(ErrorKind::PreconditionFailed, "last two symbols must lie in Q");
  return {k.constant_value(q.symbols[1]), k.constant_value(q.symbols[2])};
}

std::vector<Place> pair_ramification(const QtField& k, const PfisterForm<QtElem>& q) {
  auto [a1, a2] = constant_pair(k, q);
  return isotropic_global(RationalField{}, PfisterForm<Rational>{{a1, a2}}, 0).second.places;
}

}  // namespace

std::vector<Place> constant_pair_ramification(const SInstance<QtField>& inst) {
  return pair_ramification(inst.field, inst.q);
}

void verify_conditions(SInstance<QtField>& inst) {
  const QtField& k = inst.field;
  validate(k, inst.q);
  inst.flags = {};
  auto [a1, a2] = constant_pair(k, inst.q);
  inst.flags.constant_pair = true;
  if (hilbert_symbol(a1, a2, PrimePlace{2}) != 1 || hilbert_symbol(a1, a2, RealPlace{}) != 1)
    fail(ErrorKind::PreconditionFailed, "the constant pair must split over Q_2 and R");
  inst.flags.dyadic_real_split = true;
  if (!k.is_constant(inst.c)) fail(ErrorKind::PreconditionFailed, "c must lie in Q");
  Rational c = k.constant_value(inst.c);
  for (const auto& v : pair_ramification(k, inst.q)) {
    const auto& p = std::get<PrimePlace>(v);
    FiniteField rf = residue_field(p);
    if (c == 0 || valuation(c, p)[0] != 0 || !quadratic_irreducible(rf, rf.one(), residue(c, p)))
      fail(ErrorKind::PreconditionFailed, "X^2+X+c is not irreducible modulo " + to_string(v));
  }
  inst.flags.residue_irreducible = true;
}

std::vector<CompositePlace> anisotropy_locus(const QtField& k, const PfisterForm<QtElem>& q) {
  validate(k, q);
  std::vector<Place> pair = pair_ramification(k, q);
  for (const auto& v : pair)
    if (!std::holds_alternative<PrimePlace>(v) || std::get<PrimePlace>(v).p == 2)
      fail(ErrorKind::PreconditionFailed, "the constant pair ramifies at " + to_string(v));
  std::vector<DivisorialPlace> first = support(k, q.symbols[0]);
  first.push_back(DivisorialPlace{std::nullopt});
  std::vector<CompositePlace> out;
  // Where a0 has even order the residue forms are 3-fold over a p-adic
  // field, hence isotropic; this covers every first stage not listed.
  for (const auto& w : first) {
    long n = valuation(k, q.symbols[0], w)[0];
    if (n % 2 == 0) continue;
    if (w.pi && w.pi->size() > 2)
      fail(ErrorKind::UnsupportedCoefficientShape, "a0 has odd order at a place of degree > 1");
    for (const auto& v : pair) {
      CompositePlace cand{w, std::get<PrimePlace>(v).p};
      if (!isotropic_henselian(k, q, cand).isotropic) out.push_back(cand);
    }
  }
  return out;
}

SMembershipResult<QtField> s_member_locglob(const QtElem& x, const SInstance<QtField>& inst, long budget) {
  const auto& f = inst.flags;
  if (!f.constant_pair || !f.dyadic_real_split || !f.residue_irreducible)
    fail(ErrorKind::PreconditionFailed, "instance conditions not verified");
  const QtField& k = inst.field;
  auto locus = anisotropy_locus(k, inst.q);
  SMembershipResult<QtField> r;
  r.route = Route::LocGlob;
  for (const auto& v : locus) r.checked.push_back(v);
  if (locus.empty()) {
    r.member = Membership::Member;
    r.route = Route::QIsotropic;
    r.conditional_on = {kLocGlobPrinciple, kDivisorialLocus};
    r.reason = "no anisotropic place";
    return r;
  }
  auto b = k.sub(k.one(), x);
  if (!quadratic_irreducible(k, b, inst.c)) {
    r.member = Membership::NonMember;
    r.reason = "X^2+(1-x)X+c reducible";
    return r;
  }
  bool unresolved = false;
  for (const auto& v : locus) {
    auto local = s_member_henselian(x, inst, v);
    if (local.member == Membership::NonMember) {
      r.member = Membership::NonMember;
      r.obstruction = v;
      r.reason = "non-member over the henselisation at " + to_string(Place{v}) + ": " + local.reason;
      return r;
    }
    unresolved |= local.member == Membership::Unresolved;
  }
  if (unresolved) {
    r.member = Membership::Unresolved;
    r.reason = "boundary case at some locus place";
    return r;
  }
  r.member = Membership::Member;
  r.reason = "member at every locus place";
  EtaleAlgebra<QtField> a(k, b, inst.c);
  if (auto w = witness_search(a, inst.q, budget)) {
    check_witness(a, inst.q, *w);
    r.witness = w;
    r.reason += "; unit-ideal zero over A";
  } else {
    r.conditional_on = {kLocGlobPrinciple, kDivisorialLocus};
  }
  return r;
}

}  // namespace pfl
