#pragma once

// Parser for polynomials written as in the KnotInfo HOMFLY column, e.g.
// "(v^(-2)-1+v^2)-z^2", into the oracle's map representation.

#include <cctype>
#include <stdexcept>
#include <string>

#include "skein_oracle.hpp"

namespace oracle {

class PolyParser {
 public:
  explicit PolyParser(std::string text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    }
  }

  Poly parse() {
    Poly p = expr();
    if (i_ != s_.size()) throw std::runtime_error("trailing text in polynomial: " + s_.substr(i_));
    return p;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

  Poly expr() {
    Poly acc = term();
    while (peek() == '+' || peek() == '-') {
      const char op = s_[i_++];
      add_into(acc, term(), op == '+' ? 1 : -1, 0, 0);
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek() == '*') {
      ++i_;
      acc = mul(acc, factor());
    }
    return acc;
  }

  Poly factor() {
    if (peek() == '-') {
      ++i_;
      Poly out;
      add_into(out, factor(), -1, 0, 0);
      return out;
    }
    Poly base = primary();
    if (peek() != '^') return base;
    ++i_;
    const int e = exponent();
    if (base.size() == 1 && base.begin()->second == 1) {
      const auto [v, z] = base.begin()->first;
      return Poly{{{v * e, z * e}, 1}};
    }
    if (e < 0) throw std::runtime_error("negative power of a sum");
    Poly out{{{0, 0}, 1}};
    for (int k = 0; k < e; ++k) out = mul(out, base);
    return out;
  }

  Poly primary() {
    const char ch = peek();
    if (ch == '(') {
      ++i_;
      Poly p = expr();
      if (peek() != ')') throw std::runtime_error("missing )");
      ++i_;
      return p;
    }
    if (ch == 'v' || ch == 'z') {
      ++i_;
      return ch == 'v' ? Poly{{{1, 0}, 1}} : Poly{{{0, 1}, 1}};
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::int64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s_[i_++] - '0');
      return Poly{{{0, 0}, v}};
    }
    throw std::runtime_error(std::string("unexpected '") + ch + "' in polynomial");
  }

  int exponent() {
    bool paren = false, neg = false;
    if (peek() == '(') {
      paren = true;
      ++i_;
    }
    if (peek() == '-') {
      neg = true;
      ++i_;
    }
    int e = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw std::runtime_error("bad exponent");
    while (std::isdigit(static_cast<unsigned char>(peek()))) e = e * 10 + (s_[i_++] - '0');
    if (paren) {
      if (peek() != ')') throw std::runtime_error("missing ) in exponent");
      ++i_;
    }
    return neg ? -e : e;
  }

  std::string s_;
  std::size_t i_ = 0;
};

inline Poly parse_poly(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace oracle
