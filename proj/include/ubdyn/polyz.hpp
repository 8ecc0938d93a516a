#pragma once

// Dense univariate polynomials over Z and binary forms in (x, y).

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "ubdyn/exact_arith.hpp"

namespace ubdyn {

/// Coefficients by degree, trailing zeros trimmed; the zero polynomial is empty.
class PolyZ {
 public:
  PolyZ() = default;
  explicit PolyZ(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  PolyZ(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }
  static PolyZ constant(const BigInt& v) { return PolyZ(std::vector<BigInt>{v}); }
  static PolyZ monomial(const BigInt& v, std::size_t deg) {
    std::vector<BigInt> c(deg + 1);
    c[deg] = v;
    return PolyZ(std::move(c));
  }
  static PolyZ variable() { return monomial(1, 1); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const BigInt& lead() const { return c_.back(); }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const std::vector<BigInt>& coeffs() const noexcept { return c_; }

  friend bool operator==(const PolyZ&, const PolyZ&) = default;

  friend PolyZ operator+(const PolyZ& a, const PolyZ& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return PolyZ(std::move(r));
  }
  friend PolyZ operator-(const PolyZ& a, const PolyZ& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return PolyZ(std::move(r));
  }
  PolyZ operator-() const {
    std::vector<BigInt> r(c_);
    for (auto& v : r) v = -v;
    return PolyZ(std::move(r));
  }
  friend PolyZ operator*(const PolyZ& a, const PolyZ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyZ(std::move(r));
  }
  friend PolyZ operator*(const BigInt& s, const PolyZ& a) {
    std::vector<BigInt> r(a.c_);
    for (auto& v : r) v *= s;
    return PolyZ(std::move(r));
  }

  PolyZ pow(unsigned long e) const {
    PolyZ result = constant(1);
    PolyZ base = *this;
    while (e != 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e != 0) base = base * base;
    }
    return result;
  }

  /// Exact division by an integer that divides every coefficient.
  PolyZ divexact(const BigInt& s) const {
    std::vector<BigInt> r(c_);
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
    return PolyZ(std::move(r));
  }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Homogenized value den^deg * p(num/den) for x = num/den; `deg` may exceed degree().
  BigInt eval_homogeneous(const BigInt& num, const BigInt& den, std::size_t deg) const {
    BigInt acc = 0;
    BigInt num_pow = 1;
    for (std::size_t i = 0; i <= deg; ++i) {
      if (i < c_.size() && sgn(c_[i]) != 0) acc += c_[i] * num_pow * pow_int(den, deg - i);
      num_pow *= num;
    }
    return acc;
  }

  Rat eval(const Rat& x) const {
    if (is_zero()) return Rat(0);
    const auto deg = static_cast<std::size_t>(degree());
    return Rat(eval_homogeneous(x.num(), x.den(), deg), pow_int(x.den(), deg));
  }

  PolyZ derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return PolyZ(std::move(r));
  }

  /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& v : c_) {
      g = gcd_int(g, v);
      if (g == 1) break;
    }
    return g;
  }

  /// Primitive part with positive leading coefficient.
  PolyZ primitive_part() const {
    if (is_zero()) return {};
    BigInt ct = content();
    if (sgn(lead()) < 0) ct = -ct;
    return divexact(ct);
  }

  /// Prints in the input grammar of the psi parser, e.g. "3*t^2-t+8".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const BigInt& v = c_[k];
      if (sgn(v) == 0) continue;
      BigInt mag = abs_int(v);
      if (out.empty()) {
        if (sgn(v) < 0) out += "-";
      } else {
        out += sgn(v) < 0 ? "-" : "+";
      }
      if (k == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[t].
inline PolyZ pseudo_remainder(PolyZ a, const PolyZ& b) {
  if (b.is_zero()) throw Error("division_by_zero", "pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const BigInt& lb = b.lead();
  for (std::size_t k = r.size(); k-- > db;) {
    const BigInt lr = r[k];
    for (auto& v : r) v *= lb;
    if (sgn(lr) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= lr * b.coeffs()[j];
  }
  r.resize(db);
  return PolyZ(std::move(r));
}

/// Divides a by b if the quotient lies in Z[t].
inline std::optional<PolyZ> divide_exact(const PolyZ& a, const PolyZ& b) {
  if (b.is_zero()) throw Error("division_by_zero", "division by the zero polynomial");
  if (a.is_zero()) return PolyZ();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<BigInt> q(r.size() - db);
  const BigInt& lb = b.lead();
  for (std::size_t k = r.size(); k-- > db;) {
    if (sgn(r[k]) == 0) continue;
    if (mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t()) == 0) return std::nullopt;
    BigInt factor;
    mpz_divexact(factor.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
    q[k - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= factor * b.coeffs()[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (sgn(r[i]) != 0) return std::nullopt;
  }
  return PolyZ(std::move(q));
}

/// Primitive gcd (positive leading coefficient); gcd(0, 0) = 0. Equals the monic
/// Q[t]-gcd up to a rational scalar.
inline PolyZ gcd_primitive(const PolyZ& a, const PolyZ& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  PolyZ u = a.primitive_part();
  PolyZ v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    PolyZ r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part();
}

/// Yun's algorithm on the primitive part: pairs (S_i, i) with every S_i squarefree,
/// primitive, nonconstant and pp(f) = prod S_i^i.
inline std::vector<std::pair<PolyZ, unsigned>> squarefree_decomposition(const PolyZ& f) {
  std::vector<std::pair<PolyZ, unsigned>> out;
  PolyZ a = f.primitive_part();
  if (a.degree() < 1) return out;
  PolyZ c = gcd_primitive(a, a.derivative());
  PolyZ w = divide_exact(a, c).value().primitive_part();
  unsigned i = 1;
  while (c.degree() > 0) {
    PolyZ y = gcd_primitive(w, c);
    PolyZ z = divide_exact(w, y).value().primitive_part();
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = divide_exact(c, y).value().primitive_part();
  }
  if (w.degree() > 0) out.emplace_back(w, i);
  return out;
}

/// Binary form sum_j c_j x^(deg-j) y^j, stored by y-degree. H(1, T) has the
/// same coefficient list as the univariate polynomial it came from.
class HomogPoly {
 public:
  HomogPoly() = default;
  HomogPoly(std::vector<BigInt> by_y_degree, std::size_t degree)
      : c_(std::move(by_y_degree)), degree_(degree) {
    if (c_.size() > degree_ + 1) throw Error("invalid_form", "coefficient beyond the form's degree");
    c_.resize(degree_ + 1);
  }
  /// x^(deg - deg p) * p^h(x, y).
  static HomogPoly homogenize(const PolyZ& p, std::size_t degree) {
    if (p.degree() > static_cast<long>(degree)) throw Error("invalid_form", "degree too small to homogenize");
    return HomogPoly(p.coeffs(), degree);
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<BigInt>& coeffs() const noexcept { return c_; }
  /// Coefficient of x^(deg-j) y^j.
  const BigInt& coeff_y(std::size_t j) const { return c_.at(j); }

  PolyZ dehomogenize() const { return PolyZ(c_); }

  BigInt eval(const BigInt& x, const BigInt& y) const {
    BigInt acc = 0;
    BigInt ypow = 1;
    for (std::size_t j = 0; j <= degree_; ++j) {
      if (sgn(c_[j]) != 0) acc += c_[j] * pow_int(x, degree_ - j) * ypow;
      ypow *= y;
    }
    return acc;
  }

  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    PolyZ prod = a.dehomogenize() * b.dehomogenize();
    return HomogPoly(prod.coeffs(), a.degree_ + b.degree_);
  }
  friend HomogPoly operator*(const BigInt& s, const HomogPoly& a) {
    std::vector<BigInt> r(a.c_);
    for (auto& v : r) v *= s;
    return HomogPoly(std::move(r), a.degree_);
  }
  HomogPoly pow(unsigned long e) const {
    return HomogPoly(dehomogenize().pow(e).coeffs(), degree_ * e);
  }

  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

  /// Nonzero terms as (coeff, xdeg, ydeg), ordered by descending y-degree.
  std::vector<std::tuple<BigInt, std::size_t, std::size_t>> terms() const {
    std::vector<std::tuple<BigInt, std::size_t, std::size_t>> out;
    for (std::size_t j = degree_ + 1; j-- > 0;) {
      if (sgn(c_[j]) != 0) out.emplace_back(c_[j], degree_ - j, j);
    }
    return out;
  }

 private:
  std::vector<BigInt> c_ = std::vector<BigInt>(1);
  std::size_t degree_ = 0;
};

}  // namespace ubdyn
