#include "pfisterlab/finite_field.hpp"

#include <algorithm>

#include "pfisterlab/error.hpp"

namespace pfl {
namespace {

using Digits = std::vector<std::uint64_t>;

void trim(Digits& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Digits poly_mod(Digits a, const Digits& m, std::uint64_t p) {
  trim(a);
  std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t f = a.back() * lead_inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + (p - f) * m[i]) % p;
    trim(a);
  }
  return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, m, p);
}

Digits poly_gcd(Digits a, Digits b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  Digits f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // f is irreducible iff gcd(f, z^(p^i) - z) = 1 for 1 <= i <= m/2.
  Digits z = {0, 1};
  Digits power = z;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    Digits acc = {1};
    Digits base = power;
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    power = acc;
    Digits diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

FiniteField FiniteField::prime(std::uint32_t p) {
  if (!is_prime_u32(p)) fail(ErrorKind::UnsupportedField, "F" + std::to_string(p) + ": order is not prime");
  auto d = std::make_shared<Data>();
  d->p = p;
  d->m = 1;
  d->q = p;
  d->modulus = {0, 1};
  return FiniteField(std::move(d));
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime_u32(p)) fail(ErrorKind::UnsupportedField, "characteristic is not prime");
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2 || modulus.back() != 1)
    fail(ErrorKind::UnsupportedField, "modulus must be monic of positive degree");
  for (auto c : modulus)
    if (c >= p) fail(ErrorKind::UnsupportedField, "modulus coefficient out of range");
  auto d = std::make_shared<Data>();
  d->p = p;
  d->m = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < d->m; ++i) {
    q *= p;
    if (q > (1u << 20)) fail(ErrorKind::UnsupportedField, "field too large for table arithmetic");
  }
  d->q = static_cast<std::uint32_t>(q);
  d->modulus = modulus;
  if (d->m == 1) {
    // A linear modulus gives the prime field itself.
    d->modulus = {0, 1};
    d_ = std::move(d);
    return;
  }
  if (!is_irreducible_mod_p(p, modulus))
    fail(ErrorKind::UnsupportedField, "modulus is not irreducible");

  Digits mod(modulus.begin(), modulus.end());
  auto to_digits = [&](std::uint32_t code) {
    Digits r(d->m, 0);
    for (std::uint32_t i = 0; i < d->m; ++i) {
      r[i] = code % p;
      code /= p;
    }
    trim(r);
    return r;
  };
  auto to_code = [&](const Digits& r) {
    std::uint64_t code = 0;
    for (std::size_t i = r.size(); i-- > 0;) code = code * p + r[i];
    return static_cast<std::uint32_t>(code);
  };
  d->exp_table.assign(d->q - 1, 0);
  d->log_table.assign(d->q, 0);
  for (std::uint32_t g = 2; g < d->q; ++g) {
    Digits gd = to_digits(g);
    Digits cur = {1};
    std::uint32_t k = 0;
    bool primitive = true;
    for (; k < d->q - 1; ++k) {
      std::uint32_t code = to_code(cur);
      if (k > 0 && code == 1) {
        primitive = false;
        break;
      }
      d->exp_table[k] = code;
      cur = poly_mulmod(cur, gd, mod, p);
    }
    if (primitive) {
      for (std::uint32_t i = 0; i < d->q - 1; ++i) d->log_table[d->exp_table[i]] = i;
      d_ = std::move(d);
      return;
    }
  }
  fail(ErrorKind::UnsupportedField, "no primitive element found");
}

FiniteField FiniteField::of_order(std::uint32_t q) {
  if (q < 2) fail(ErrorKind::UnsupportedField, "field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p) ++p;
  std::uint32_t m = 0;
  for (std::uint32_t r = q; r > 1; r /= p) {
    if (r % p) fail(ErrorKind::UnsupportedField, "order is not a prime power");
    ++m;
  }
  if (m == 1) return prime(p);
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> f(m + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[m] = 1;
    if (is_irreducible_mod_p(p, f)) return FiniteField(p, f);
  }
  fail(ErrorKind::UnsupportedField, "no irreducible modulus");
}

FqElem FiniteField::from_int(long n) const {
  long p = d_->p;
  long r = n % p;
  if (r < 0) r += p;
  return {static_cast<std::uint32_t>(r)};
}

FqElem FiniteField::generator() const {
  if (d_->m == 1) fail(ErrorKind::UnsupportedField, "prime field has no generator symbol z");
  return {d_->p};
}

FqElem FiniteField::primitive_element() const {
  if (d_->m > 1) return {d_->exp_table.size() > 1 ? d_->exp_table[1] : 1};
  for (std::uint32_t g = 1; g < d_->p; ++g) {
    std::uint32_t order = 1;
    std::uint64_t x = g;
    while (x != 1) {
      x = x * g % d_->p;
      ++order;
    }
    if (order == d_->p - 1) return {g};
  }
  return {1};
}

FqElem FiniteField::add(FqElem a, FqElem b) const {
  std::uint32_t p = d_->p;
  if (d_->m == 1) {
    std::uint64_t s = static_cast<std::uint64_t>(a.code) + b.code;
    return {static_cast<std::uint32_t>(s >= p ? s - p : s)};
  }
  std::uint32_t result = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_->m; ++i) {
    std::uint32_t s = a.code % p + b.code % p;
    if (s >= p) s -= p;
    result += s * scale;
    scale *= p;
    a.code /= p;
    b.code /= p;
  }
  return {result};
}

FqElem FiniteField::neg(FqElem a) const {
  std::uint32_t p = d_->p;
  if (d_->m == 1) return {a.code == 0 ? 0 : p - a.code};
  std::uint32_t result = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_->m; ++i) {
    std::uint32_t digit = a.code % p;
    result += (digit == 0 ? 0 : p - digit) * scale;
    scale *= p;
    a.code /= p;
  }
  return {result};
}

FqElem FiniteField::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FiniteField::mul(FqElem a, FqElem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  if (d_->m == 1)
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.code) * b.code % d_->p)};
  std::uint64_t e = static_cast<std::uint64_t>(d_->log_table[a.code]) + d_->log_table[b.code];
  return {d_->exp_table[e % (d_->q - 1)]};
}

FqElem FiniteField::inv(FqElem a) const {
  if (a.code == 0) fail(ErrorKind::DivisionByZeroOrNonUnit, "inverse of zero in " + descriptor());
  if (d_->m == 1) return {static_cast<std::uint32_t>(inv_mod(a.code, d_->p))};
  std::uint32_t l = d_->log_table[a.code];
  return {d_->exp_table[l == 0 ? 0 : d_->q - 1 - l]};
}

FqElem FiniteField::pow(FqElem a, std::uint64_t e) const {
  FqElem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool FiniteField::is_square(FqElem a) const {
  if (a.code == 0 || d_->p == 2) return true;
  if (d_->m > 1) return d_->log_table[a.code] % 2 == 0;
  return pow(a, (d_->q - 1) / 2) == one();
}

std::optional<FqElem> FiniteField::sqrt(FqElem a) const {
  if (a.code == 0) return zero();
  if (d_->p == 2) return pow(a, d_->q / 2);
  if (!is_square(a)) return std::nullopt;
  if (d_->m > 1) return FqElem{d_->exp_table[d_->log_table[a.code] / 2]};
  // Tonelli-Shanks.
  std::uint64_t p = d_->p;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  FqElem z{2};
  while (is_square(z)) z.code++;
  FqElem c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
  std::uint64_t m = s;
  while (t != one()) {
    std::uint64_t i = 0;
    FqElem tt = t;
    while (tt != one()) {
      tt = mul(tt, tt);
      ++i;
    }
    FqElem b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

std::uint32_t FiniteField::trace(FqElem a) const {
  FqElem acc = zero(), cur = a;
  for (std::uint32_t i = 0; i < d_->m; ++i) {
    acc = add(acc, cur);
    cur = pow(cur, d_->p);
  }
  return acc.code;
}

bool FiniteField::in_artin_schreier_image(FqElem a) const {
  if (d_->p != 2) fail(ErrorKind::UnsupportedField, "Artin-Schreier class needs characteristic 2");
  return trace(a) == 0;
}

std::vector<std::uint32_t> FiniteField::digits(FqElem a) const {
  std::vector<std::uint32_t> r(d_->m, 0);
  for (std::uint32_t i = 0; i < d_->m; ++i) {
    r[i] = a.code % d_->p;
    a.code /= d_->p;
  }
  return r;
}

FqElem FiniteField::from_digits(const std::vector<std::uint32_t>& digits) const {
  // Reduce longer digit strings modulo the defining polynomial.
  FqElem result = zero();
  FqElem power = one();
  FqElem z = d_->m == 1 ? zero() : generator();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (d_->m == 1 && i > 0) fail(ErrorKind::UnsupportedField, "prime field has no z");
    result = add(result, mul(from_int(digits[i]), power));
    if (d_->m > 1) power = mul(power, z);
  }
  return result;
}

std::string FiniteField::to_string(FqElem a) const {
  if (d_->m == 1) return std::to_string(a.code);
  auto dg = digits(a);
  std::string out;
  for (std::size_t i = dg.size(); i-- > 0;) {
    if (dg[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(dg[i]);
      continue;
    }
    if (dg[i] != 1) out += std::to_string(dg[i]) + "*";
    out += "z";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string FiniteField::descriptor() const {
  std::string out = "F" + std::to_string(d_->q);
  if (d_->m == 1) return out;
  std::string poly;
  for (std::size_t i = d_->modulus.size(); i-- > 0;) {
    std::uint32_t c = d_->modulus[i];
    if (c == 0) continue;
    if (!poly.empty()) poly += "+";
    if (i == 0) {
      poly += std::to_string(c);
      continue;
    }
    if (c != 1) poly += std::to_string(c) + "*";
    poly += "z";
    if (i > 1) poly += "^" + std::to_string(i);
  }
  return out + ":" + poly;
}

bool FiniteField::operator==(const FiniteField& other) const {
  return d_ == other.d_ || (d_->p == other.d_->p && d_->modulus == other.d_->modulus);
}

std::vector<FqElem> embedding(const FiniteField& small, const FiniteField& big) {
  if (small.p() != big.p() || big.degree() % small.degree() != 0)
    fail(ErrorKind::FieldMismatch, "no embedding " + small.descriptor() + " -> " + big.descriptor());
  FqElem root = big.zero();
  if (small.degree() > 1) {
    const auto& f = small.modulus();
    bool found = false;
    for (std::uint32_t code = 0; code < big.order() && !found; ++code) {
      FqElem r{code};
      FqElem value = big.zero(), power = big.one();
      for (auto c : f) {
        value = big.add(value, big.mul(big.from_int(c), power));
        power = big.mul(power, r);
      }
      if (big.is_zero(value)) {
        root = r;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::FieldMismatch, "modulus has no root in the larger field");
  }
  std::vector<FqElem> image(small.order());
  for (std::uint32_t code = 0; code < small.order(); ++code) {
    auto dg = small.digits(FqElem{code});
    FqElem value = big.zero(), power = big.one();
    for (auto c : dg) {
      value = big.add(value, big.mul(big.from_int(c), power));
      power = big.mul(power, root);
    }
    image[code] = value;
  }
  return image;
}

}  // namespace pfl
