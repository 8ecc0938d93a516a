#pragma once

// Polynomials over prime fields F_ell with word-sized moduli (ell < 2^62).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ubdyn/exact_arith.hpp"
#include "ubdyn/polyz.hpp"

namespace ubdyn {

class FpPoly {
 public:
  using Residue = std::uint64_t;

  explicit FpPoly(Residue modulus) : p_(modulus) {}
  FpPoly(Residue modulus, std::vector<Residue> coeffs) : p_(modulus), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
  }
  static FpPoly monomial(Residue modulus, Residue v, std::size_t deg) {
    std::vector<Residue> c(deg + 1, 0);
    c[deg] = v;
    return {modulus, std::move(c)};
  }

  Residue modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  Residue lead() const { return c_.back(); }
  Residue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Residue>& coeffs() const noexcept { return c_; }

  friend bool operator==(const FpPoly&, const FpPoly&) = default;

  Residue add(Residue a, Residue b) const { return a + b >= p_ ? a + b - p_ : a + b; }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue mul(Residue a, Residue b) const { return detail::mulmod_u64(a, b, p_); }
  Residue inv(Residue a) const {
    if (a % p_ == 0) throw Error("not_invertible", "zero has no inverse mod " + std::to_string(p_));
    return detail::powmod_u64(a, p_ - 2, p_);
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    std::vector<Residue> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.add(a.coeff(i), b.coeff(i));
    return {a.p_, std::move(r)};
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    std::vector<Residue> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.sub(a.coeff(i), b.coeff(i));
    return {a.p_, std::move(r)};
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<Residue> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = a.add(r[i + j], a.mul(a.c_[i], b.c_[j]));
    }
    return {a.p_, std::move(r)};
  }

  /// Quotient and remainder; b must be nonzero.
  friend std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw Error("division_by_zero", "division by the zero polynomial mod " + std::to_string(a.p_));
    if (a.degree() < b.degree()) return {FpPoly(a.p_), a};
    std::vector<Residue> r = a.c_;
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Residue> q(r.size() - db, 0);
    const Residue lb_inv = a.inv(b.lead());
    for (std::size_t k = r.size(); k-- > db;) {
      if (r[k] == 0) continue;
      const Residue f = a.mul(r[k], lb_inv);
      q[k - db] = f;
      for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = a.sub(r[k - db + j], a.mul(f, b.c_[j]));
    }
    r.resize(db);
    return {FpPoly(a.p_, std::move(q)), FpPoly(a.p_, std::move(r))};
  }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divrem(a, b).second; }

  FpPoly monic() const {
    if (is_zero()) return *this;
    const Residue li = inv(lead());
    std::vector<Residue> r(c_);
    for (auto& v : r) v = mul(v, li);
    return {p_, std::move(r)};
  }

  FpPoly derivative() const {
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<Residue> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mul(c_[i], i % p_);
    return {p_, std::move(r)};
  }

  Residue eval(Residue x) const {
    Residue acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add(mul(acc, x), *it);
    return acc;
  }

  /// "c0 + c1*T + ... (mod ell)"
  std::string to_string() const {
    std::string out;
    if (c_.empty()) out = "0";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) out += " + ";
      out += std::to_string(c_[i]);
      if (i == 1) out += "*T";
      if (i > 1) out += "*T^" + std::to_string(i);
    }
    return out + " (mod " + std::to_string(p_) + ")";
  }

 private:
  static void check_same(const FpPoly& a, const FpPoly& b) {
    if (a.p_ != b.p_) {
      throw Error("modulus_mismatch",
                  "moduli differ: " + std::to_string(a.p_) + " vs " + std::to_string(b.p_));
    }
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Residue p_;
  std::vector<Residue> c_;
};

inline void require_word_prime(std::uint64_t ell) {
  if (ell >= (std::uint64_t{1} << 62U) || !is_prime(ell)) {
    throw NotPrime(std::to_string(ell) + " is not a word-sized prime");
  }
}

inline FpPoly reduce_mod(const PolyZ& h, std::uint64_t ell) {
  require_word_prime(ell);
  std::vector<FpPoly::Residue> c;
  c.reserve(h.coeffs().size());
  BigInt r;
  const BigInt m(static_cast<unsigned long>(ell));
  for (const auto& v : h.coeffs()) {
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    c.push_back(r.get_ui());
  }
  return {ell, std::move(c)};
}

/// Reduces the dehomogenization H(1, T).
inline FpPoly reduce_mod(const HomogPoly& form, std::uint64_t ell) { return reduce_mod(form.dehomogenize(), ell); }

/// Monic gcd (zero only when both inputs are zero).
inline FpPoly gcd_fp(FpPoly a, FpPoly b) {
  if (a.modulus() != b.modulus()) {
    throw Error("modulus_mismatch", "gcd of polynomials over different prime fields");
  }
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^exp mod h by square-and-multiply.
inline FpPoly powmod(const FpPoly& base, const BigInt& exp, const FpPoly& h) {
  FpPoly result = FpPoly(h.modulus(), {1}) % h;
  FpPoly b = base % h;
  const std::size_t bits = sgn(exp) == 0 ? 0 : bit_size(exp);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % h;
    if (mpz_tstbit(exp.get_mpz_t(), i) != 0) result = (result * b) % h;
  }
  return result;
}

/// T^ell mod h.
inline FpPoly frobenius_powmod(std::uint64_t ell, const FpPoly& h) {
  if (h.degree() < 1) throw Error("invalid_modulus", "Frobenius power needs deg h >= 1");
  return powmod(FpPoly::monomial(h.modulus(), 1, 1), BigInt(static_cast<unsigned long>(ell)), h);
}

/// True iff the binary form has a zero in P^1(F_ell): an affine root of H(1,T)
/// (deg gcd(T^ell - T, h) >= 1) or the point [0:1] (leading y-coefficient = 0).
inline bool projective_root_exists(const HomogPoly& form, std::uint64_t ell) {
  const FpPoly h = reduce_mod(form, ell);
  if (h.is_zero()) {
    throw Error("degenerate_reduction", "form vanishes identically mod " + std::to_string(ell));
  }
  if (h.degree() < static_cast<long>(form.degree())) return true;
  if (h.degree() == 0) return false;
  const FpPoly t = FpPoly::monomial(ell, 1, 1);
  const FpPoly g = gcd_fp(frobenius_powmod(ell, h) - t, h);
  return g.degree() >= 1;
}

namespace detail {

inline std::vector<unsigned long> prime_divisors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// Rabin's test: T^(ell^n) = T mod h and gcd(T^(ell^(n/r)) - T, h) = 1 for each
/// prime r | n.
inline bool irreducible_mod(const FpPoly& poly) {
  if (poly.degree() < 1) throw Error("invalid_argument", "irreducibility of a constant");
  const FpPoly h = poly.monic();
  const auto n = static_cast<unsigned long>(h.degree());
  if (n == 1) return true;
  const std::uint64_t ell = h.modulus();
  const FpPoly t = FpPoly::monomial(ell, 1, 1);
  // frob[k] = T^(ell^k) mod h
  std::vector<FpPoly> frob;
  frob.reserve(n + 1);
  frob.push_back(t % h);
  const FpPoly x_ell = frobenius_powmod(ell, h);
  const BigInt e(static_cast<unsigned long>(ell));
  for (unsigned long k = 1; k <= n; ++k) {
    frob.push_back(k == 1 ? x_ell : powmod(frob.back(), e, h));
  }
  if (frob[n] != t % h) return false;
  for (unsigned long r : detail::prime_divisors(n)) {
    if (gcd_fp(frob[n / r] - t, h).degree() != 0) return false;
  }
  return true;
}

/// Distinct-degree factorization of a squarefree polynomial: pairs (k, g_k) with
/// g_k the product of all monic irreducible factors of degree k.
inline std::vector<std::pair<unsigned long, FpPoly>> distinct_degree_factorization(const FpPoly& poly) {
  std::vector<std::pair<unsigned long, FpPoly>> out;
  FpPoly f = poly.monic();
  const std::uint64_t ell = f.modulus();
  const FpPoly t = FpPoly::monomial(ell, 1, 1);
  const BigInt e(static_cast<unsigned long>(ell));
  FpPoly frob = t;
  unsigned long k = 0;
  while (f.degree() >= 2 * static_cast<long>(k + 1)) {
    ++k;
    frob = powmod(frob, e, f);
    FpPoly g = gcd_fp(frob - t, f);
    if (g.degree() > 0) {
      out.emplace_back(k, g);
      f = divrem(f, g).first.monic();
      frob = frob % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(static_cast<unsigned long>(f.degree()), f);
  return out;
}

}  // namespace ubdyn
