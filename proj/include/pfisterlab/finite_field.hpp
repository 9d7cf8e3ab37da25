#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pfl {

// Element of F_q encoded by its base-p digit expansion in the power basis of z.
struct FqElem {
  std::uint32_t code = 0;
  friend bool operator==(FqElem, FqElem) = default;
  friend auto operator<=>(FqElem, FqElem) = default;
};

// F_q = F_p[z]/(modulus).  Prime fields use direct modular arithmetic, proper
// extensions (q <= 2^20) multiply through discrete-log tables.
class FiniteField {
 public:
  using Elem = FqElem;

  static FiniteField prime(std::uint32_t p);
  // modulus: monic, coefficients low to high in [0, p); must be irreducible.
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);
  // Prime field for prime q, otherwise the lexicographically first monic
  // irreducible modulus.
  static FiniteField of_order(std::uint32_t q);

  std::uint32_t p() const { return d_->p; }
  std::uint32_t degree() const { return d_->m; }
  std::uint32_t order() const { return d_->q; }
  long characteristic() const { return d_->p; }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
  bool is_prime_field() const { return d_->m == 1; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(long n) const;
  Elem from_code(std::uint32_t code) const { return {code}; }
  Elem generator() const;  // class of z; proper extensions only
  Elem primitive_element() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  bool is_zero(Elem a) const { return a.code == 0; }
  bool is_one(Elem a) const { return a.code == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  bool is_square(Elem a) const;
  std::optional<Elem> sqrt(Elem a) const;
  // Trace down to the prime field, returned as an integer in [0, p).
  std::uint32_t trace(Elem a) const;
  // Characteristic 2: is a of the form x^2 + x?
  bool in_artin_schreier_image(Elem a) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& digits) const;

  std::string to_string(Elem a) const;
  std::string descriptor() const;

  bool operator==(const FiniteField& other) const;

 private:
  struct Data {
    std::uint32_t p = 0;
    std::uint32_t m = 1;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> exp_table;
    std::vector<std::uint32_t> log_table;
  };
  explicit FiniteField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Images of all elements of `small` under an embedding into `big`.
std::vector<FqElem> embedding(const FiniteField& small, const FiniteField& big);

// Exhaustive irreducibility test for a monic polynomial over F_p (degree <= 20).
bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& monic);

}  // namespace pfl
