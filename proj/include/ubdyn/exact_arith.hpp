#pragma once

// Exact integers and rationals: the numeric substrate for the whole library.
//
// BigInt is GMP's mpz_class. Rat keeps the canonical form
//   gcd(num, den) == 1, den > 0, zero == 0/1
// so that equality of values is equality of representations.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ubdyn {

using BigInt = mpz_class;

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidRational : public Error {
 public:
  explicit InvalidRational(const std::string& detail) : Error("invalid_rational", detail) {}
};

class NotPrime : public Error {
 public:
  explicit NotPrime(const std::string& detail) : Error("not_prime", detail) {}
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic for every 64-bit input (first twelve prime bases).
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t()) != 0) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline BigInt abs_int(const BigInt& x) { return sgn(x) < 0 ? BigInt(-x) : x; }

inline BigInt gcd_int(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::size_t bit_size(const BigInt& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

/// Largest k with ell^k | n, for n != 0.
inline long int_valuation(const BigInt& n, const BigInt& ell) {
  BigInt rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), ell.get_mpz_t()));
}

class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  int sign() const { return sgn(num_); }
  bool is_zero() const { return sgn(num_) == 0; }
  bool is_integer() const { return den_ == 1; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  Rat operator-() const { return from_canonical(-num_, den_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw InvalidRational("division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  /// Powers of a reduced fraction stay reduced.
  Rat pow(unsigned long e) const { return from_canonical(pow_int(num_, e), pow_int(den_, e)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Cross-multiplication; denominators are positive.
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "num/den", den omitted when 1.
  std::string to_string() const {
    if (den_ == 1) return num_.get_str();
    return num_.get_str() + "/" + den_.get_str();
  }

  /// Accepts "[-]digits" or "[-]digits/digits"; the result is reduced.
  static Rat parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    const std::string_view den_text =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    return Rat(parse_int(num_text, true), parse_int(den_text, false));
  }

 private:
  static Rat from_canonical(BigInt n, BigInt d) {
    Rat r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }

  static BigInt parse_int(std::string_view s, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !s.empty() && s.front() == '-') start = 1;
    if (start == s.size()) throw InvalidRational("malformed rational '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw InvalidRational("malformed rational '" + std::string(s) + "'");
      }
    }
    return BigInt(std::string(s));
  }

  void normalize() {
    if (sgn(den_) == 0) throw InvalidRational("zero denominator");
    if (sgn(den_) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (sgn(num_) == 0) {
      den_ = 1;
      return;
    }
    BigInt g = gcd_int(num_, den_);
    if (g != 1) {
      mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rat rat_reduce(const BigInt& num, const BigInt& den) { return Rat(num, den); }

/// Naive height max(|num|, den).
inline BigInt rat_height(const Rat& x) {
  BigInt a = abs_int(x.num());
  return a > x.den() ? a : x.den();
}

/// Every reduced b/a with max(|b|, a) <= bound, ordered by (height, numerator, denominator).
inline std::vector<Rat> rationals_of_height_at_most(long bound) {
  struct Key {
    long height, num, den;
  };
  std::vector<Key> keys;
  for (long den = 1; den <= bound; ++den) {
    for (long num = -bound; num <= bound; ++num) {
      if (std::gcd(num < 0 ? -num : num, den) != 1) continue;
      keys.push_back({std::max(num < 0 ? -num : num, den), num, den});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.num != b.num) return a.num < b.num;
    return a.den < b.den;
  });
  std::vector<Rat> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.emplace_back(BigInt(k.num), BigInt(k.den));
  return out;
}

/// v_ell of a rational; `infinite` encodes v(0) = +inf.
struct Valuation {
  long value = 0;
  bool infinite = false;

  static Valuation infinity() { return {0, true}; }
  bool at_least(long k) const { return infinite || value >= k; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline Valuation padic_valuation(const Rat& x, const BigInt& ell) {
  if (!is_prime(ell)) throw NotPrime(ell.get_str() + " is not prime");
  if (x.is_zero()) return Valuation::infinity();
  return {int_valuation(x.num(), ell) - int_valuation(x.den(), ell), false};
}

inline std::optional<BigInt> nth_root_exact(const BigInt& b, unsigned long d) {
  if (sgn(b) <= 0 || d < 2) return std::nullopt;
  BigInt root;
  if (mpz_root(root.get_mpz_t(), b.get_mpz_t(), d) == 0) return std::nullopt;
  return root;
}

inline std::optional<BigInt> sqrt_exact(const BigInt& n) {
  if (sgn(n) < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  return isqrt(n);
}

/// Nonnegative square root in Q, if any.
inline std::optional<Rat> is_square_rat(const Rat& x) {
  auto n = sqrt_exact(x.num());
  if (!n) return std::nullopt;
  auto d = sqrt_exact(x.den());
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

/// A point of P^1(Q): a rational or infinity.
class ProjRat {
 public:
  ProjRat() = default;  // infinity
  ProjRat(Rat v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ProjRat infinity() { return {}; }
  bool is_infinity() const noexcept { return !value_.has_value(); }
  const Rat& value() const { return value_.value(); }

  friend bool operator==(const ProjRat&, const ProjRat&) = default;

  // Infinity sorts after every finite value.
  friend std::strong_ordering operator<=>(const ProjRat& a, const ProjRat& b) {
    if (a.is_infinity() || b.is_infinity()) {
      return static_cast<int>(a.is_infinity()) <=> static_cast<int>(b.is_infinity());
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return is_infinity() ? "inf" : value_->to_string(); }

  static ProjRat parse(std::string_view text) {
    if (text == "inf") return infinity();
    return Rat::parse(text);
  }

 private:
  std::optional<Rat> value_;
};

}  // namespace ubdyn

template <>
struct std::hash<ubdyn::Rat> {
  std::size_t operator()(const ubdyn::Rat& r) const noexcept {
    const std::size_t h1 = mpz_get_ui(r.num().get_mpz_t()) ^ (r.sign() < 0 ? 0x9e3779b97f4a7c15ULL : 0);
    const std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6U) + (h1 >> 2U));
  }
};
