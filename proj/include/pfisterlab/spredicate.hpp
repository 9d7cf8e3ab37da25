#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfisterlab/isotropy.hpp"

namespace pfl {

enum class Membership { Member, NonMember, Unresolved };
enum class Route { QIsotropic, DirectEtale, HenselianSandwich, LocGlob };

std::string_view to_string(Membership m);
std::string_view to_string(Route r);

// Conditions on a subring instance; set only by verify_conditions.
struct InstanceFlags {
  bool constant_pair = false;      // last two symbols lie in the constant field
  bool dyadic_real_split = false;  // and their 2-fold form splits over Q_2 and R
  bool residue_irreducible = false;  // X^2+X+c irreducible at every ramified place
};

template <class K>
struct SInstance {
  K field;
  typename K::Elem c;
  PfisterForm<typename K::Elem> q;
  InstanceFlags flags;
};

inline const std::string kLocGlobPrinciple = "loc-glob-principle";
// Member verdicts that only consulted divisorial-first-stage composites.
inline const std::string kDivisorialLocus = "divisorial-locus";

template <class K>
struct SMembershipResult {
  using AE = typename EtaleAlgebra<K>::Elem;
  Membership member = Membership::Unresolved;
  Route route = Route::DirectEtale;
  std::optional<UnitIdealZero<AE>> witness;
  std::optional<Place> obstruction;
  std::vector<Place> checked;
  std::vector<std::string> conditional_on;
  std::string reason;
  bool is_member() const { return member == Membership::Member; }
};

// --- direct membership ------------------------------------------------------

// The three equivalent characterizations over a finite field.
struct DirectRoutes {
  bool definition = false;   // case split on isotropy and irreducibility
  bool projective = false;   // nonzero zero over each residue field of A
  bool unit_ideal = false;   // zero over A generating the unit ideal
};
DirectRoutes s_routes(const SInstance<FiniteField>& inst, FqElem x);

// Finite fields: all three routes, asserted equal.  Q and F_p(t): the etale
// decider, certified by a witness when one turns up within `budget`.
SMembershipResult<FiniteField> s_member_direct(FqElem x, const SInstance<FiniteField>& inst);
SMembershipResult<RationalField> s_member_direct(const Rational& x, const SInstance<RationalField>& inst,
                                                 long budget = 20);
SMembershipResult<FqtField> s_member_direct(const FqtField::Elem& x, const SInstance<FqtField>& inst,
                                            long budget = 1);

// --- henselian membership ---------------------------------------------------

// v(x) > 0 member, v(x) < 0 non-member, v(x) = 0 by the reduced polynomial;
// a double root is settled by whether q represents the discriminant class.
SMembershipResult<RationalField> s_member_henselian(const Rational& x, const SInstance<RationalField>& inst,
                                                    const Place& v);
SMembershipResult<FqtField> s_member_henselian(const FqtField::Elem& x, const SInstance<FqtField>& inst,
                                               const FptPlace& v);
SMembershipResult<QtField> s_member_henselian(const QtField::Elem& x, const SInstance<QtField>& inst,
                                              const CompositePlace& v);

// Membership over the henselisation read off from the etale algebra alone:
// q splits over F(sqrt D) iff q' _|_ <D> is isotropic.  Odd residue
// characteristic only; nullopt when X^2+(1-x)X+c is inseparable.
std::optional<bool> henselian_member_exact(const Rational& x, const SInstance<RationalField>& inst,
                                           const PrimePlace& v);
std::optional<bool> henselian_member_exact(const FqtField::Elem& x, const SInstance<FqtField>& inst,
                                           const FptPlace& v);
std::optional<bool> henselian_member_exact(const QtField::Elem& x, const SInstance<QtField>& inst,
                                           const CompositePlace& v);

// --- Q(t) -------------------------------------------------------------------

// Ramified places of the last two symbols over Q.
std::vector<Place> constant_pair_ramification(const SInstance<QtField>& inst);
// Checks the three instance conditions and records them in the flags;
// PreconditionFailed names the first one that fails.
void verify_conditions(SInstance<QtField>& inst);

// Rank-2 composites (divisorial first stage) where <<a0,a1,a2]] stays
// anisotropic.  Requires a1, a2 in Q; first-stage places with odd order of
// a0 must have residue field Q.
std::vector<CompositePlace> anisotropy_locus(const QtField& k, const PfisterForm<QtField::Elem>& q);

SMembershipResult<QtField> s_member_locglob(const QtField::Elem& x, const SInstance<QtField>& inst,
                                            long budget = 20);

}  // namespace pfl
