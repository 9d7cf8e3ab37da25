#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfisterlab/spredicate.hpp"

namespace pfl {

using QtElem = QtField::Elem;
using FqtElem = FqtField::Elem;

// --- ramification and the choice of c ---------------------------------------

// Places where <<a, b]] stays anisotropic.
std::vector<Place> delta0(const Rational& a, const Rational& b);
std::vector<Place> delta0(const FqtField& k, const FqtElem& a, const FqtElem& b);

// c with v(c) = 0 and X^2+X+c irreducible modulo every listed place.  Over Q
// the places must be odd primes.
Rational choose_c(const std::vector<Place>& places);
FqtElem choose_c(const FqtField& k, const std::vector<Place>& places);

// Same 2-fold form up to isometry with the second symbol integral on the
// ramification set.  The char-2 search for the first symbol tries at most
// `budget` candidates.
std::pair<Rational, Rational> special_form(const Rational& a0, const Rational& a1);
std::pair<FqtElem, FqtElem> special_form(const FqtField& k, const FqtElem& a0, const FqtElem& a1,
                                         long budget = 20000);

// --- ring instances over Q(t) -----------------------------------------------

struct RingInstance {
  SInstance<QtField> s{QtField{RationalField{}}, {}, {}, {}};
  std::vector<Place> delta0;
  Rational big_c;  // positive value at every place of delta0
  std::vector<CompositePlace> locus;
};

// <<a0, b1, b2]] with (b1, b2) the special form of (a1, a2); c and the
// positive element are chosen from the ramification set.
RingInstance make_ring_instance(const QtElem& a0, const Rational& a1, const Rational& a2);
// Rechecks every stored field of an instance (e.g. one read from disk).
void verify_ring_instance(RingInstance& inst);

// x has no pole at a divisorial place where q stays anisotropic.
bool ring_rhs_member(const QtElem& x, const RingInstance& inst);

struct RingLhsResult {
  bool member = false;
  std::optional<Rational> scaling;  // a with a*x in S_c
  std::optional<CompositePlace> pole;  // locus place where x has a first-stage pole
  SMembershipResult<QtField> detail;
};
// Scales x into the maximal ideal of every locus place and asks S_c.
RingLhsResult ring_lhs_member(const QtElem& x, const RingInstance& inst, long budget = 20);

// --- integrality ------------------------------------------------------------

struct IntegralityCertificate {
  QtElem x;
  bool integral = false;
  std::optional<DivisorialPlace> bad;
  Factorization<QPoly> denominator;
};
IntegralityCertificate bad_divisor(const QtElem& x);

// --- form constructors ------------------------------------------------------

template <class E>
struct ConstructedForm {
  PfisterForm<E> form;
  Place split_place;  // where the quadratic algebra splits and the form ramifies
  long places_tried = 0;
};

// 2-fold forms anisotropic over K[X]/(X^2+bX+c).  Over Q the form also
// splits over Q_2 and R.
ConstructedForm<Rational> anisotropic_form_over(const Rational& b, const Rational& c, long budget = 1000);
ConstructedForm<FqtElem> anisotropic_form_over(const FqtField& k, const FqtElem& b, const FqtElem& c,
                                               long budget = 1000);
// 3-fold <<s, a1, a2]] over Q(s) anisotropic over Q(s)[X]/(X^2+bX+c); b and c
// must be constants.
ConstructedForm<QtElem> anisotropic_form_over(const QtField& k, const QtElem& b, const QtElem& c,
                                              long budget = 1000);

// <<b0, a1, a2]] with b0 a uniformizer at v and congruent to 1 at each w:
// anisotropic over the henselisation at v, isotropic at every w.
PfisterForm<QtElem> separating_form(const DivisorialPlace& v, const std::vector<DivisorialPlace>& w_set,
                                    long budget = 1000);

}  // namespace pfl
