#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pfisterlab/finite_field.hpp"
#include "pfisterlab/polynomial.hpp"
#include "pfisterlab/rational_field.hpp"

namespace pfl {

using FqPolys = Polynomials<FiniteField>;
using QPolys = Polynomials<RationalField>;
using FqPoly = FqPolys::Elem;
using QPoly = QPolys::Elem;

template <class Poly>
struct Factorization {
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, ascending degree
};

// Distinct-degree decomposition followed by equal-degree splitting with a
// fixed-seed generator, so results are reproducible.
Factorization<FqPoly> factor(const FqPolys& ring, const FqPoly& f);
bool is_irreducible(const FqPolys& ring, const FqPoly& f);
std::vector<FiniteField::Elem> roots(const FqPolys& ring, const FqPoly& f);

// Over Q: linear factors from rational roots; a cofactor of degree <= 3 with
// no rational root is irreducible.  Anything else is UnsupportedField.
Factorization<QPoly> factor(const QPolys& ring, const QPoly& f);
bool is_irreducible(const QPolys& ring, const QPoly& f);
std::vector<Rational> rational_roots(const QPolys& ring, const QPoly& f);

// Square root of a polynomial when it is a perfect square (odd characteristic
// or characteristic 0, and Frobenius-based in characteristic 2); nullopt
// otherwise.
std::optional<QPoly> poly_sqrt(const QPolys& ring, const QPoly& f);
std::optional<FqPoly> poly_sqrt(const FqPolys& ring, const FqPoly& f);

}  // namespace pfl
