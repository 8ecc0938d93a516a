#pragma once

// Recursive-descent parser for psi expressions:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER | 't' | '(' expr ')'
//
// Exponents are nonnegative integer literals. Values are exact rational
// functions, normalized after every operation.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "ubdyn/ratfunc.hpp"

namespace ubdyn {

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse_error", "at position " + std::to_string(position) + ": " + message), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class PsiParser {
 public:
  static constexpr unsigned long kMaxExponent = 1000;

  explicit PsiParser(std::string_view text) : s_(text) {}

  RatFuncQ parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
    RatFuncQ v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  RatFuncQ expr() {
    RatFuncQ v = term();
    while (true) {
      skip_ws();
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  RatFuncQ term() {
    RatFuncQ v = unary();
    while (true) {
      skip_ws();
      if (accept('*')) {
        v = v * unary();
      } else if (peek() == '/') {
        const std::size_t at = pos_++;
        RatFuncQ rhs = unary();
        if (rhs.is_zero()) throw ParseError(at, "division by the zero polynomial");
        v = v / rhs;
      } else {
        return v;
      }
    }
  }

  RatFuncQ unary() {
    skip_ws();
    if (accept('-')) return -unary();
    return power();
  }

  RatFuncQ power() {
    RatFuncQ base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError(at, "exponent must be a nonnegative integer literal");
    }
    const BigInt e = integer();
    if (e > BigInt(static_cast<unsigned long>(kMaxExponent))) {
      throw ParseError(at, "exponent " + e.get_str() + " exceeds " + std::to_string(kMaxExponent));
    }
    skip_ws();
    if (peek() == '^') throw ParseError(pos_, "chained exponents need parentheses");
    return base.pow(e.get_ui());
  }

  RatFuncQ primary() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      BigInt v = integer();
      if (peek() == '.') throw ParseError(at, "floating literals are not supported; write a quotient");
      return RatFuncQ::constant(v);
    }
    if (c == 't') {
      ++pos_;
      return RatFuncQ::variable();
    }
    if (c == '(') {
      ++pos_;
      RatFuncQ v = expr();
      skip_ws();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return v;
    }
    if (pos_ == s_.size()) throw ParseError(pos_, "unexpected end of expression");
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFuncQ parse_psi(std::string_view text) { return detail::PsiParser(text).parse(); }

}  // namespace ubdyn
