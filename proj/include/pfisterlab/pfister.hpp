#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pfisterlab/places.hpp"

namespace pfl {

// <<a1,...,ak]].  In characteristic 2 the last symbol is the Artin-Schreier
// slot and may be zero.
template <class E>
struct PfisterForm {
  std::vector<E> symbols;
  std::size_t fold() const { return symbols.size(); }
  friend bool operator==(const PfisterForm&, const PfisterForm&) = default;
};

// sum b_i X_i^2
template <class E>
struct DiagonalForm {
  std::vector<E> coeffs;
};

// sum b_i (X_i^2 + X_i Y_i + a Y_i^2); variables ordered X_1..X_n, Y_1..Y_n.
template <class E>
struct BlockForm {
  std::vector<E> coeffs;
  E as_param;
};

template <class E>
using ExpandedForm = std::variant<DiagonalForm<E>, BlockForm<E>>;

template <RingContext R>
void validate(const R& r, const PfisterForm<typename R::Elem>& q) {
  if (q.symbols.empty()) fail(ErrorKind::ArityMismatch, "Pfister form needs at least one symbol");
  std::size_t nonzero = r.characteristic() == 2 ? q.symbols.size() - 1 : q.symbols.size();
  for (std::size_t i = 0; i < nonzero; ++i)
    if (r.is_zero(q.symbols[i])) fail(ErrorKind::PreconditionFailed, "Pfister symbol " + std::to_string(i + 1) + " is zero");
}

template <RingContext R>
DiagonalForm<typename R::Elem> expand_diagonal(const R& r, const PfisterForm<typename R::Elem>& q) {
  // <<a_i..a_k]] = <<a_{i+1}..a_k]] _|_ (-a_i) <<a_{i+1}..a_k]]
  std::vector<typename R::Elem> coeffs = {r.one()};
  for (std::size_t i = q.symbols.size(); i-- > 0;) {
    auto scale = r.neg(q.symbols[i]);
    std::size_t n = coeffs.size();
    for (std::size_t j = 0; j < n; ++j) coeffs.push_back(r.mul(scale, coeffs[j]));
  }
  return {coeffs};
}

template <RingContext R>
BlockForm<typename R::Elem> expand_blocks(const R& r, const PfisterForm<typename R::Elem>& q) {
  std::vector<typename R::Elem> coeffs = {r.one()};
  for (std::size_t i = q.symbols.size() - 1; i-- > 0;) {
    auto scale = r.neg(q.symbols[i]);
    std::size_t n = coeffs.size();
    for (std::size_t j = 0; j < n; ++j) coeffs.push_back(r.mul(scale, coeffs[j]));
  }
  return {coeffs, q.symbols.back()};
}

template <RingContext R>
ExpandedForm<typename R::Elem> expand(const R& r, const PfisterForm<typename R::Elem>& q) {
  validate(r, q);
  if (r.characteristic() == 2) return expand_blocks(r, q);
  return expand_diagonal(r, q);
}

inline std::size_t variable_count(std::size_t fold) { return std::size_t{1} << fold; }

template <RingContext R>
typename R::Elem evaluate(const R& r, const DiagonalForm<typename R::Elem>& f, const std::vector<typename R::Elem>& v) {
  if (v.size() != f.coeffs.size()) fail(ErrorKind::ArityMismatch, "vector length does not match the form");
  auto acc = r.zero();
  for (std::size_t i = 0; i < v.size(); ++i) acc = r.add(acc, r.mul(f.coeffs[i], r.mul(v[i], v[i])));
  return acc;
}

template <RingContext R>
typename R::Elem evaluate(const R& r, const BlockForm<typename R::Elem>& f, const std::vector<typename R::Elem>& v) {
  std::size_t n = f.coeffs.size();
  if (v.size() != 2 * n) fail(ErrorKind::ArityMismatch, "vector length does not match the form");
  auto acc = r.zero();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = v[i];
    const auto& y = v[n + i];
    auto block = r.add(r.add(r.mul(x, x), r.mul(x, y)), r.mul(f.as_param, r.mul(y, y)));
    acc = r.add(acc, r.mul(f.coeffs[i], block));
  }
  return acc;
}

template <RingContext R>
typename R::Elem evaluate(const R& r, const ExpandedForm<typename R::Elem>& f, const std::vector<typename R::Elem>& v) {
  return std::visit([&](const auto& g) { return evaluate(r, g, v); }, f);
}

template <RingContext R>
typename R::Elem evaluate(const R& r, const PfisterForm<typename R::Elem>& q, const std::vector<typename R::Elem>& v) {
  return evaluate(r, expand(r, q), v);
}

template <RingContext R>
std::string to_string(const R& r, const PfisterForm<typename R::Elem>& q) {
  std::string s = "<<";
  for (std::size_t i = 0; i < q.symbols.size(); ++i) s += (i ? "," : "") + r.to_string(q.symbols[i]);
  return s + "]]";
}

template <class K>
PfisterForm<typename K::Elem> parse_form(const K& k, std::string_view text) {
  std::string s(text);
  if (s.size() < 5 || s.substr(0, 2) != "<<" || s.substr(s.size() - 2) != "]]")
    fail(ErrorKind::SyntaxError, "Pfister form must look like <<a1,...,ak]]: " + s);
  PfisterForm<typename K::Elem> q;
  for (const auto& part : split_top_level(std::string_view(s).substr(2, s.size() - 4)))
    q.symbols.push_back(parse_element(k, part));
  validate(k, q);
  return q;
}

template <RingContext R>
std::string to_string(const R& r, const ExpandedForm<typename R::Elem>& f) {
  return std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        std::string s = "(";
        for (std::size_t i = 0; i < g.coeffs.size(); ++i) s += (i ? "," : "") + r.to_string(g.coeffs[i]);
        s += ")";
        if constexpr (std::is_same_v<T, BlockForm<typename R::Elem>>) s += "[" + r.to_string(g.as_param) + "]";
        return s;
      },
      f);
}

// --- Springer decomposition -------------------------------------------------

// q ~ q0 _|_ pi q1 over the henselisation, with q0, q1 over the residue field.
// shifts[i] is the even exponent 2m by which coefficient i was divided.
template <class RE>
struct SpringerSplit {
  ExpandedForm<RE> q0;
  ExpandedForm<RE> q1;
  std::vector<long> shifts;
};

template <class Local>
auto springer_split_expanded(const Local& local, const ExpandedForm<typename Local::Elem>& f)
    -> SpringerSplit<typename Local::ResidueElem> {
  using RE = typename Local::ResidueElem;
  SpringerSplit<RE> out;
  auto place_coeff = [&](const typename Local::Elem& b, std::vector<RE>& c0, std::vector<RE>& c1) {
    long n = local.order(b);
    long e = ((n % 2) + 2) % 2;
    out.shifts.push_back(n - e);
    RE r = local.residue_of_unit(local.unit(b));
    (e == 0 ? c0 : c1).push_back(r);
  };
  if (const auto* d = std::get_if<DiagonalForm<typename Local::Elem>>(&f)) {
    local.require_odd_residue();
    DiagonalForm<RE> a, b;
    for (const auto& c : d->coeffs) place_coeff(c, a.coeffs, b.coeffs);
    out.q0 = a;
    out.q1 = b;
    return out;
  }
  const auto& blocks = std::get<BlockForm<typename Local::Elem>>(f);
  long va = local.order_or_infinite(blocks.as_param);
  if (va < 0) fail(ErrorKind::UnnormalizedASSlot, "Artin-Schreier slot has negative valuation");
  RE abar = local.reduce(blocks.as_param);
  BlockForm<RE> a{{}, abar}, b{{}, abar};
  for (const auto& c : blocks.coeffs) place_coeff(c, a.coeffs, b.coeffs);
  out.q0 = a;
  out.q1 = b;
  return out;
}

// Local adapters: order, unit part and residue at a rank-1 place.
struct QpLocal {
  using Elem = Rational;
  using ResidueElem = FqElem;
  PrimePlace v;
  long order(const Rational& x) const { return arith::valuation(x, v.p); }
  long order_or_infinite(const Rational& x) const { return x == 0 ? std::numeric_limits<long>::max() : order(x); }
  Rational unit(const Rational& x) const;
  FqElem residue_of_unit(const Rational& u) const { return residue(u, v); }
  FqElem reduce(const Rational& x) const { return residue(x, v); }
  void require_odd_residue() const {
    if (v.p == 2) fail(ErrorKind::DyadicResidue, "mixed characteristic (0,2) is excluded");
  }
};

struct FptLocal {
  using Elem = FqtField::Elem;
  using ResidueElem = FqElem;
  FqtField k;
  FptPlace v;
  long order(const Elem& x) const { return valuation(k, x, v)[0]; }
  long order_or_infinite(const Elem& x) const {
    return k.is_zero(x) ? std::numeric_limits<long>::max() : order(x);
  }
  Elem unit(const Elem& x) const { return unit_part(k, x, v); }
  FqElem residue_of_unit(const Elem& u) const { return residue(k, u, v); }
  FqElem reduce(const Elem& x) const { return residue(k, x, v); }
  void require_odd_residue() const {}
};

struct DivLocal {
  using Elem = QtField::Elem;
  using ResidueElem = Rational;
  QtField k;
  DivisorialPlace v;
  long order(const Elem& x) const { return valuation(k, x, v)[0]; }
  long order_or_infinite(const Elem& x) const {
    return k.is_zero(x) ? std::numeric_limits<long>::max() : order(x);
  }
  Elem unit(const Elem& x) const { return unit_part(k, x, v); }
  Rational residue_of_unit(const Elem& u) const { return residue(k, u, v); }
  Rational reduce(const Elem& x) const { return residue(k, x, v); }
  void require_odd_residue() const {}
};

SpringerSplit<FqElem> springer_split(const RationalField& k, const PfisterForm<Rational>& q, const PrimePlace& v);
SpringerSplit<FqElem> springer_split(const FqtField& k, const PfisterForm<FqtField::Elem>& q, const FptPlace& v);
SpringerSplit<Rational> springer_split(const QtField& k, const PfisterForm<QtField::Elem>& q, const DivisorialPlace& v);
SpringerSplit<FqElem> springer_split(const DiagonalForm<Rational>& f, const PrimePlace& v);

}  // namespace pfl
