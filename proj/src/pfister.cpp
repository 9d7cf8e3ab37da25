#include "pfisterlab/pfister.hpp"

namespace pfl {

Rational QpLocal::unit(const Rational& x) const {
  long n = order(x);
  Integer pn;
  mpz_pow_ui(pn.get_mpz_t(), v.p.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
  return n >= 0 ? Rational(x / pn) : Rational(x * pn);
}

SpringerSplit<FqElem> springer_split(const RationalField& k, const PfisterForm<Rational>& q, const PrimePlace& v) {
  return springer_split_expanded(QpLocal{v}, expand(k, q));
}

SpringerSplit<FqElem> springer_split(const FqtField& k, const PfisterForm<FqtField::Elem>& q, const FptPlace& v) {
  return springer_split_expanded(FptLocal{k, v}, expand(k, q));
}

SpringerSplit<Rational> springer_split(const QtField& k, const PfisterForm<QtField::Elem>& q, const DivisorialPlace& v) {
  return springer_split_expanded(DivLocal{k, v}, expand(k, q));
}

SpringerSplit<FqElem> springer_split(const DiagonalForm<Rational>& f, const PrimePlace& v) {
  return springer_split_expanded(QpLocal{v}, ExpandedForm<Rational>{f});
}

}  // namespace pfl
