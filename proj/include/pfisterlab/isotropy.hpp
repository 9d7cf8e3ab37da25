#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pfisterlab/etale.hpp"
#include "pfisterlab/pfister.hpp"
#include "pfisterlab/quadratic.hpp"

namespace pfl {

// --- verdicts ---------------------------------------------------------------

template <class E>
struct Witness {
  std::vector<E> vector;
};
struct LocalObstruction {
  Place place;
  int symbol = -1;
};
// Residue forms met along the reduction, outermost stage first.
struct ResidueObstruction {
  std::vector<std::string> chain;
};
struct ResidueIsotropy {
  std::vector<std::string> chain;
};
struct RealObstruction {
  std::vector<int> signs;
};
// Decided from local data at `places`; `principle` names the theorem used.
struct LocalGlobal {
  std::vector<Place> places;
  std::string principle;
};

template <class E>
using Evidence =
    std::variant<Witness<E>, LocalObstruction, ResidueObstruction, ResidueIsotropy, RealObstruction, LocalGlobal>;

template <class E>
struct IsotropyVerdict {
  bool isotropic = false;
  Evidence<E> evidence;
};

// Places where a 2-fold form stays anisotropic.  Empty for other folds,
// except the real place for definite forms over Q.
struct RamificationSet {
  std::vector<Place> places;
};

template <class E>
struct UnitIdealZero {
  std::vector<E> vector;
  std::vector<E> cofactors;
};

// --- finite fields ----------------------------------------------------------

// Any residue form (possibly empty) over F_q.
bool isotropic_residue(const FiniteField& k, const ExpandedForm<FqElem>& f);
std::optional<std::vector<FqElem>> finite_zero(const FiniteField& k, const ExpandedForm<FqElem>& f);
IsotropyVerdict<FqElem> isotropic_finite(const FiniteField& k, const PfisterForm<FqElem>& q);

// --- Q and its completions --------------------------------------------------

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);
bool is_local_square(const Rational& a, const Place& v);
// 2, the odd primes dividing some numerator or denominator, then real.
std::vector<Place> candidate_places(const std::vector<Rational>& elements);
bool isotropic_diagonal_local(const std::vector<Rational>& coeffs, const Place& v);
bool isotropic_diagonal(const std::vector<Rational>& coeffs);

// --- F_p(t) -----------------------------------------------------------------

enum class LocalSymbol { Split, Nonsplit };

// (a, b) at v for odd p; +1 when <<a,b]] is split.
int tame_symbol(const FqtField& k, const FqtField::Elem& a, const FqtField::Elem& b, const FptPlace& v);
// <<a, b]] in characteristic 2 with b in the Artin-Schreier slot: trace of the
// residue of b da/a.  +1 when split.  No condition on v(b).
int artin_schreier_symbol(const FqtField& k, const FqtField::Elem& a, const FqtField::Elem& b, const FptPlace& v);
LocalSymbol local_symbol_fpt(const FqtField& k, const FqtField::Elem& a, const FqtField::Elem& b, const FptPlace& v);

bool is_local_square(const FqtField& k, const FqtField::Elem& a, const FptPlace& v);
// a in {x^2 + x : x in the completion}.
bool in_local_artin_schreier_image(const FqtField& k, const FqtField::Elem& a, const FptPlace& v);
// Finite places in the support of the elements, then the degree place.
std::vector<FptPlace> candidate_places(const FqtField& k, const std::vector<FqtField::Elem>& elements);

// --- global deciders --------------------------------------------------------

std::pair<IsotropyVerdict<Rational>, RamificationSet> isotropic_global(const RationalField& k,
                                                                       const PfisterForm<Rational>& q,
                                                                       long witness_budget = 20);
std::pair<IsotropyVerdict<FqtField::Elem>, RamificationSet> isotropic_global(const FqtField& k,
                                                                             const PfisterForm<FqtField::Elem>& q,
                                                                             long witness_budget = 1);

// --- henselian deciders -----------------------------------------------------

IsotropyVerdict<Rational> isotropic_henselian(const RationalField& k, const PfisterForm<Rational>& q, const Place& v);
IsotropyVerdict<FqtField::Elem> isotropic_henselian(const FqtField& k, const PfisterForm<FqtField::Elem>& q,
                                                    const FptPlace& v);
// Divisorial (residue field Q) or composite places.
IsotropyVerdict<QtField::Elem> isotropic_henselian(const QtField& k, const PfisterForm<QtField::Elem>& q,
                                                   const Place& v);

// --- quadratic etale algebras -----------------------------------------------

// X^2 + bX + c acquires a root over the completion at v.
bool place_splits(const Rational& b, const Rational& c, const Place& v);
bool place_splits(const FqtField& k, const FqtField::Elem& b, const FqtField::Elem& c, const FptPlace& v);

IsotropyVerdict<EtaleAlgebra<RationalField>::Elem> isotropic_over_etale(const RationalField& k,
                                                                        const PfisterForm<Rational>& q,
                                                                        const Rational& b, const Rational& c,
                                                                        long witness_budget = 20);
IsotropyVerdict<EtaleAlgebra<FqtField>::Elem> isotropic_over_etale(const FqtField& k,
                                                                   const PfisterForm<FqtField::Elem>& q,
                                                                   const FqtField::Elem& b, const FqtField::Elem& c,
                                                                   long witness_budget = 1);

// --- witness search ---------------------------------------------------------

// Over Q the budget bounds the integer coordinates of a scaled zero; over
// F_p(t) it bounds polynomial degrees.  Finite fields are searched fully.
std::optional<std::vector<Rational>> witness_search(const RationalField& k, const PfisterForm<Rational>& q,
                                                    long budget);
std::optional<std::vector<FqElem>> witness_search(const FiniteField& k, const PfisterForm<FqElem>& q, long budget);
std::optional<std::vector<FqtField::Elem>> witness_search(const FqtField& k, const PfisterForm<FqtField::Elem>& q,
                                                          long budget);

std::optional<UnitIdealZero<EtaleAlgebra<FiniteField>::Elem>> witness_search(const EtaleAlgebra<FiniteField>& a,
                                                                             const PfisterForm<FqElem>& q,
                                                                             long budget);
std::optional<UnitIdealZero<EtaleAlgebra<RationalField>::Elem>> witness_search(
    const EtaleAlgebra<RationalField>& a, const PfisterForm<Rational>& q, long budget);
std::optional<UnitIdealZero<EtaleAlgebra<FqtField>::Elem>> witness_search(const EtaleAlgebra<FqtField>& a,
                                                                          const PfisterForm<FqtField::Elem>& q,
                                                                          long budget);
// Only when the discriminant is a rational constant times a square and two
// symbols are rational constants.
std::optional<UnitIdealZero<EtaleAlgebra<QtField>::Elem>> witness_search(const EtaleAlgebra<QtField>& a,
                                                                         const PfisterForm<QtField::Elem>& q,
                                                                         long budget);

// Small integer zero of sum e_i x_i^2 with x_0 solved for and |x_i| <= budget
// for the others; `nonzero` (if >= 0) must be a nonzero coordinate.
std::optional<std::vector<Integer>> integer_zero(const std::vector<Integer>& e, long budget, int nonzero = -1);
// Same over F_q[t], free coordinates of degree <= budget.
std::optional<std::vector<FqPoly>> polynomial_zero(const FqPolys& ring, const std::vector<FqPoly>& e, long budget,
                                                   int nonzero = -1);

// Lift coefficients into an etale algebra.
template <class K>
ExpandedForm<typename EtaleAlgebra<K>::Elem> lift_form(const EtaleAlgebra<K>& a,
                                                       const ExpandedForm<typename K::Elem>& f) {
  using AE = typename EtaleAlgebra<K>::Elem;
  if (const auto* d = std::get_if<DiagonalForm<typename K::Elem>>(&f)) {
    DiagonalForm<AE> out;
    for (const auto& c : d->coeffs) out.coeffs.push_back(a.from_base(c));
    return out;
  }
  const auto& b = std::get<BlockForm<typename K::Elem>>(f);
  BlockForm<AE> out{{}, a.from_base(b.as_param)};
  for (const auto& c : b.coeffs) out.coeffs.push_back(a.from_base(c));
  return out;
}

template <class K>
PfisterForm<typename EtaleAlgebra<K>::Elem> lift_form(const EtaleAlgebra<K>& a, const PfisterForm<typename K::Elem>& q) {
  PfisterForm<typename EtaleAlgebra<K>::Elem> out;
  for (const auto& s : q.symbols) out.symbols.push_back(a.from_base(s));
  return out;
}

template <class From, class To, class Map>
Evidence<To> map_evidence(const Evidence<From>& e, Map map) {
  return std::visit(
      [&](const auto& x) -> Evidence<To> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Witness<From>>) {
          Witness<To> w;
          for (const auto& c : x.vector) w.vector.push_back(map(c));
          return w;
        } else {
          return x;
        }
      },
      e);
}

}  // namespace pfl
