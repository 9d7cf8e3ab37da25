#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pfisterlab/etale.hpp"
#include "pfisterlab/quadratic.hpp"

namespace pfl {

namespace detail {

// Recursive-descent parser for ring expressions:
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' digits)?
//   atom  := digits | identifier | '(' expr ')'
template <class K, class Number, class Ident>
class ExprParser {
 public:
  using Elem = typename K::Elem;
  ExprParser(const K& k, std::string_view text, Number number, Ident ident)
      : k_(k), s_(text), number_(number), ident_(ident) {}

  Elem parse() {
    Elem e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Elem expr() {
    Elem acc;
    if (eat('-')) acc = k_.neg(term());
    else {
      eat('+');
      acc = term();
    }
    while (true) {
      if (eat('+')) acc = k_.add(acc, term());
      else if (eat('-')) acc = k_.sub(acc, term());
      else return acc;
    }
  }
  Elem term() {
    Elem acc = unary();
    while (true) {
      if (eat('*')) acc = k_.mul(acc, unary());
      else if (eat('/')) acc = k_.mul(acc, k_.inv(unary()));
      else return acc;
    }
  }
  Elem unary() {
    if (eat('-')) return k_.neg(unary());
    return power();
  }
  Elem power() {
    Elem base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected exponent");
    unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    Elem r = k_.one();
    for (unsigned long i = 0; i < e; ++i) r = k_.mul(r, base);
    return r;
  }
  Elem atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expr();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return number_(Integer(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      return ident_(name);
    }
    error("unexpected character");
  }

  const K& k_;
  std::string_view s_;
  std::size_t pos_ = 0;
  Number number_;
  Ident ident_;
};

template <class K, class Number, class Ident>
typename K::Elem parse_expr(const K& k, std::string_view text, Number number, Ident ident) {
  return ExprParser<K, Number, Ident>(k, text, number, ident).parse();
}

[[noreturn]] inline void unknown_symbol(const std::string& name) {
  fail(ErrorKind::SyntaxError, "unknown symbol '" + name + "'");
}

}  // namespace detail

inline Rational parse_element(const RationalField& k, std::string_view text) {
  return detail::parse_expr(
      k, text, [](const Integer& n) { return Rational(n); },
      [](const std::string& name) -> Rational { detail::unknown_symbol(name); });
}

inline FqElem parse_element(const FiniteField& k, std::string_view text) {
  return detail::parse_expr(
      k, text,
      [&](const Integer& n) { return k.from_int(arith::mod(n, k.p()).get_si()); },
      [&](const std::string& name) -> FqElem {
        if (name == "z" && k.degree() > 1) return k.generator();
        detail::unknown_symbol(name);
      });
}

inline FqtField::Elem parse_element(const FqtField& k, std::string_view text) {
  const auto& f = k.base();
  return detail::parse_expr(
      k, text,
      [&](const Integer& n) { return k.from_base(f.from_int(arith::mod(n, f.p()).get_si())); },
      [&](const std::string& name) -> FqtField::Elem {
        if (name == "t") return k.t();
        if (name == "z" && f.degree() > 1) return k.from_base(f.generator());
        detail::unknown_symbol(name);
      });
}

inline QtField::Elem parse_element(const QtField& k, std::string_view text) {
  return detail::parse_expr(
      k, text, [&](const Integer& n) { return k.from_base(Rational(n)); },
      [&](const std::string& name) -> QtField::Elem {
        if (name == "t") return k.t();
        detail::unknown_symbol(name);
      });
}

// Splits "a,b,c" at top-level commas (ignoring commas nested in brackets).
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

template <class K>
typename EtaleAlgebra<K>::Elem parse_element(const EtaleAlgebra<K>& a, std::string_view text) {
  std::string s(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(ErrorKind::SyntaxError, "etale element must look like [b1,b2]: " + s);
  auto parts = split_top_level(std::string_view(s).substr(1, s.size() - 2));
  if (parts.size() != 2) fail(ErrorKind::SyntaxError, "etale element needs two coordinates: " + s);
  return a.make(parse_element(a.base(), parts[0]), parse_element(a.base(), parts[1]));
}

// Runtime field descriptors used by the CLI and fixtures.
using AnyField = std::variant<RationalField, FiniteField, QtField, FqtField>;

// "Q", "F5", "F9", "F9:z^2+1", "Q(t)", "F3(t)", "F9:z^2+1(t)".
AnyField parse_field(std::string_view text);
std::string descriptor(const AnyField& field);

}  // namespace pfl
