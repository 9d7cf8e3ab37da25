#include "pfisterlab/parse.hpp"

#include <algorithm>

namespace pfl {

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

namespace {

FiniteField parse_finite_field(std::string_view text) {
  std::string s(text);
  if (s.empty() || s[0] != 'F') fail(ErrorKind::SyntaxError, "unknown field '" + s + "'");
  auto colon = s.find(':');
  std::string order_text = s.substr(1, colon == std::string::npos ? std::string::npos : colon - 1);
  if (order_text.empty() || order_text.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::SyntaxError, "bad field order in '" + s + "'");
  unsigned long q = std::stoul(order_text);
  if (q > (1ul << 30)) fail(ErrorKind::UnsupportedField, "field order too large");
  FiniteField k = FiniteField::of_order(static_cast<std::uint32_t>(q));
  if (colon == std::string::npos) return k;
  // Parse the modulus as a polynomial in z over F_p.
  FiniteField fp = FiniteField::prime(k.p());
  Polynomials<FiniteField> ring(fp, "z");
  auto poly = detail::parse_expr(
      ring, s.substr(colon + 1),
      [&](const Integer& n) { return ring.constant(fp.from_int(arith::mod(n, fp.p()).get_si())); },
      [&](const std::string& name) {
        if (name != "z") detail::unknown_symbol(name);
        return ring.x();
      });
  std::vector<std::uint32_t> modulus;
  for (auto c : poly) modulus.push_back(c.code);
  FiniteField custom(k.p(), modulus);
  if (custom.order() != q) fail(ErrorKind::UnsupportedField, "modulus degree does not match field order");
  return custom;
}

}  // namespace

AnyField parse_field(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  bool function_field = s.size() > 3 && s.substr(s.size() - 3) == "(t)";
  if (function_field) s = s.substr(0, s.size() - 3);
  if (s == "Q") {
    if (function_field) return QtField(RationalField{});
    return RationalField{};
  }
  FiniteField k = parse_finite_field(s);
  if (function_field) return FqtField(k);
  return k;
}

std::string descriptor(const AnyField& field) {
  return std::visit([](const auto& k) { return k.descriptor(); }, field);
}

}  // namespace pfl
