#pragma once

#include <concepts>
#include <string>

namespace pfl {

// A field (or commutative ring) context: elements are plain values and every
// operation goes through the context object.
template <class F>
concept RingContext = requires(const F& k, const typename F::Elem& a, long n) {
  { k.zero() } -> std::convertible_to<typename F::Elem>;
  { k.one() } -> std::convertible_to<typename F::Elem>;
  { k.from_int(n) } -> std::convertible_to<typename F::Elem>;
  { k.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { k.sub(a, a) } -> std::convertible_to<typename F::Elem>;
  { k.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { k.neg(a) } -> std::convertible_to<typename F::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.equal(a, a) } -> std::convertible_to<bool>;
  { k.characteristic() } -> std::convertible_to<long>;
  { k.to_string(a) } -> std::convertible_to<std::string>;
};

template <class F>
concept FieldContext = RingContext<F> && requires(const F& k, const typename F::Elem& a) {
  { k.inv(a) } -> std::convertible_to<typename F::Elem>;
};

}  // namespace pfl
