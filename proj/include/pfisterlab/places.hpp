#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfisterlab/parse.hpp"

namespace pfl {

struct PrimePlace {
  Integer p;
  friend bool operator==(const PrimePlace&, const PrimePlace&) = default;
};
struct RealPlace {
  friend bool operator==(const RealPlace&, const RealPlace&) = default;
};
// Place of F_p(t): a monic irreducible pi over F_p, or the degree place.
struct FptPlace {
  FiniteField k;
  std::optional<FqPoly> pi;
  bool is_degree() const { return !pi.has_value(); }
  friend bool operator==(const FptPlace& a, const FptPlace& b) { return a.k == b.k && a.pi == b.pi; }
};
// Valuation of Q(t) trivial on Q.
struct DivisorialPlace {
  std::optional<QPoly> pi;
  bool is_degree() const { return !pi.has_value(); }
  friend bool operator==(const DivisorialPlace&, const DivisorialPlace&) = default;
};
// Rank 2: a divisorial valuation with residue field Q followed by the p-adic
// valuation on that residue field.
struct CompositePlace {
  DivisorialPlace first;
  Integer p;
  friend bool operator==(const CompositePlace&, const CompositePlace&) = default;
};

using Place = std::variant<PrimePlace, RealPlace, FptPlace, DivisorialPlace, CompositePlace>;

std::string to_string(const Place& v);
// Syntax: p:5, real, fpt:t^2+1, deg, div:t-2, comp:div:t-2/p:5, comp:deg/p:3.
// `field` decides what "deg" means and supplies F_p for fpt places.
Place parse_place(std::string_view text, const AnyField& field);

// Value in Z or Z^2 (lexicographic), or the infinite value of 0.
class Value {
 public:
  Value() = default;
  explicit Value(long a) : coords_{a} {}
  Value(long a, long b) : coords_{a, b} {}
  static Value infinite(std::size_t rank = 1) {
    Value v;
    v.coords_.assign(rank, 0);
    v.infinite_ = true;
    return v;
  }
  bool is_infinite() const { return infinite_; }
  std::size_t rank() const { return coords_.size(); }
  const std::vector<long>& coords() const { return coords_; }
  long operator[](std::size_t i) const { return coords_.at(i); }
  // Sign in the lexicographic order: -1, 0 or +1 (infinite counts as +1).
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Value operator+(const Value& o) const;
  Value operator-() const;
  Value scaled(long m) const;
  friend bool operator==(const Value& a, const Value& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.coords_ == b.coords_);
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  std::string to_string() const;

 private:
  std::vector<long> coords_;
  bool infinite_ = false;
};

// --- valuations -------------------------------------------------------------

Value valuation(const Rational& x, const PrimePlace& v);
Value valuation(const Rational& x, const CompositePlace& v);  // constants: (0, v_p)
Value valuation(const FqtField& k, const FqtField::Elem& x, const FptPlace& v);
Value valuation(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v);
Value valuation(const QtField& k, const QtField::Elem& x, const CompositePlace& v);
// Dispatch on a runtime place; FieldMismatch when v does not live on the field.
Value valuation(const Rational& x, const Place& v);
Value valuation(const FqtField& k, const FqtField::Elem& x, const Place& v);
Value valuation(const QtField& k, const QtField::Elem& x, const Place& v);

int real_sign(const Rational& x);

// --- residues (defined for v(x) >= 0) ---------------------------------------

FiniteField residue_field(const PrimePlace& v);
FiniteField residue_field(const FptPlace& v);
FiniteField residue_field(const CompositePlace& v);

FqElem residue(const Rational& x, const PrimePlace& v);
FqElem residue(const FqtField& k, const FqtField::Elem& x, const FptPlace& v);
Rational residue(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v);
FqElem residue(const QtField& k, const QtField::Elem& x, const CompositePlace& v);
FqElem residue(const Rational& x, const CompositePlace& v);

// Uniformizers: p, pi (or 1/t at the degree place); for composites the first
// stage uniformizer, value (1,0).
Rational uniformizer(const PrimePlace& v);
FqtField::Elem uniformizer(const FqtField& k, const FptPlace& v);
QtField::Elem uniformizer(const QtField& k, const DivisorialPlace& v);
QtField::Elem uniformizer(const QtField& k, const CompositePlace& v);

// Degree of the residue field over the constants (1 at the degree place).
long place_degree(const FptPlace& v);

// x divided by the uniformizer power of its order, i.e. a unit at v.
FqtField::Elem unit_part(const FqtField& k, const FqtField::Elem& x, const FptPlace& v, long* order = nullptr);
QtField::Elem unit_part(const QtField& k, const QtField::Elem& x, const DivisorialPlace& v, long* order = nullptr);

// Places where x has a zero or pole (finite places only, sorted).
std::vector<FptPlace> support(const FqtField& k, const FqtField::Elem& x);
std::vector<DivisorialPlace> support(const QtField& k, const QtField::Elem& x);

// --- weak approximation -----------------------------------------------------

// One constraint: either a residue target (value >= 0 with prescribed
// reduction; a zero target asks for positive value), a sign at the real
// place, or a minimum value.  MinValuation(n) is met with value exactly n.
template <class Residue>
struct Constraint {
  Place place;
  std::optional<Residue> residue;
  long min_valuation = 0;
  int sign = 0;
};

using QConstraint = Constraint<Integer>;
using FqtConstraint = Constraint<FqElem>;
using QtConstraint = Constraint<Rational>;

Rational weak_approx(const std::vector<QConstraint>& constraints);
FqtField::Elem weak_approx(const FqtField& k, const std::vector<FqtConstraint>& constraints);
QtField::Elem weak_approx(const QtField& k, const std::vector<QtConstraint>& constraints);

// --- phi combination --------------------------------------------------------

// phi(x, y) = x^2 + xy + c y^2.
Rational phi(const Rational& x, const Rational& y, const Rational& c);
// a = phi(1, phi(a1^-1, phi(a2^-1, ...)))^-1, so that v(a) >= max_i v(a_i)
// at every listed place.  Places are prime or composite (acting on Q).
Rational phi_combine(const std::vector<Rational>& elements, const Rational& c, const std::vector<Place>& places);

}  // namespace pfl
