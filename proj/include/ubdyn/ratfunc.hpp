#pragma once

// psi in Q(t): normalized quotients of integer polynomials, the homogeneous
// pole normal form psi(y/x) = G(x,y) / (A * H(x,y)^n), and the hypothesis
// that the pole support is one irreducible point of degree >= 2.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubdyn/exact_arith.hpp"
#include "ubdyn/ffpoly.hpp"
#include "ubdyn/polyz.hpp"

namespace ubdyn {

/// psi = num / den with gcd(num, den) = 1 in Q[t], coprime contents and lc(den) > 0.
class RatFuncQ {
 public:
  RatFuncQ() : num_(), den_(PolyZ::constant(1)) {}
  RatFuncQ(PolyZ num, PolyZ den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  static RatFuncQ constant(const BigInt& v) { return {PolyZ::constant(v), PolyZ::constant(1)}; }
  static RatFuncQ variable() { return {PolyZ::variable(), PolyZ::constant(1)}; }

  const PolyZ& num() const noexcept { return num_; }
  const PolyZ& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

  friend bool operator==(const RatFuncQ&, const RatFuncQ&) = default;

  friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) {
    if (b.is_zero()) throw Error("division_by_zero", "division by the zero polynomial");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RatFuncQ operator-() const { return {-num_, den_}; }
  RatFuncQ pow(unsigned long e) const { return {num_.pow(e), den_.pow(e)}; }

  /// Exact value, or infinity at a pole.
  ProjRat eval(const Rat& c) const {
    const auto k = static_cast<std::size_t>(std::max(num_.degree(), den_.degree()));
    BigInt top = num_.eval_homogeneous(c.num(), c.den(), k);
    BigInt bottom = den_.eval_homogeneous(c.num(), c.den(), k);
    if (sgn(bottom) == 0) return ProjRat::infinity();
    return Rat(std::move(top), std::move(bottom));
  }

  /// Re-parses to the same value: "P" or "(P)/(Q)".
  std::string to_string() const {
    if (den_ == PolyZ::constant(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error("division_by_zero", "denominator is the zero polynomial");
    if (num_.is_zero()) {
      den_ = PolyZ::constant(1);
      return;
    }
    const PolyZ g = gcd_primitive(num_, den_);
    if (g.degree() > 0) {
      num_ = divide_exact(num_, g).value();
      den_ = divide_exact(den_, g).value();
    }
    BigInt c = gcd_int(num_.content(), den_.content());
    if (sgn(den_.lead()) < 0) c = -c;
    if (c != 1) {
      num_ = num_.divexact(c);
      den_ = den_.divexact(c);
    }
  }

  PolyZ num_;
  PolyZ den_;
};

inline ProjRat eval_psi(const RatFuncQ& f, const Rat& c) { return f.eval(c); }

// ---------------------------------------------------------------------------
// Irreducibility over Q

class UndecidedError : public Error {
 public:
  explicit UndecidedError(const std::string& detail) : Error("undecided", detail) {}
};

struct IrreducibilityOptions {
  long degree_cap = 16;
  std::uint64_t prime_limit = 200;
  /// Upper limit on candidate factors tried by the exhaustive search.
  double search_budget = 2e7;
};

enum class IrreducibilityMethod {
  Linear,            // degree 1
  ModPrime,          // irreducible mod a prime not dividing lc * disc
  DegreeSieve,       // factor-degree patterns mod several primes are incompatible
  ExhaustiveSearch,  // no factor inside the Landau-Mignotte box
  RationalRoot,      // reducible: linear factor found
  RepeatedFactor,    // reducible: gcd(h, h') nontrivial
  FactorFound,       // reducible: factor found by the exhaustive search
};

inline std::string to_string(IrreducibilityMethod m) {
  switch (m) {
    case IrreducibilityMethod::Linear: return "linear";
    case IrreducibilityMethod::ModPrime: return "mod_prime";
    case IrreducibilityMethod::DegreeSieve: return "degree_sieve";
    case IrreducibilityMethod::ExhaustiveSearch: return "exhaustive_search";
    case IrreducibilityMethod::RationalRoot: return "rational_root";
    case IrreducibilityMethod::RepeatedFactor: return "repeated_factor";
    case IrreducibilityMethod::FactorFound: return "factor_found";
  }
  return "unknown";
}

struct IrreducibilityResult {
  bool irreducible = false;
  IrreducibilityMethod method = IrreducibilityMethod::Linear;
  /// ModPrime: the certifying prime. DegreeSieve: every prime whose pattern was used.
  std::vector<std::uint64_t> primes;
  /// ExhaustiveSearch: factor degrees whose boxes were exhausted.
  std::vector<unsigned long> searched_degrees;
  /// Reducible: two nonconstant factors whose product is h.
  std::vector<PolyZ> factors;
};

namespace detail {

/// Positive divisors of |n| by trial division; none when |n| is too large to factor here.
inline std::optional<std::vector<BigInt>> small_divisors(const BigInt& n) {
  const BigInt m = abs_int(n);
  if (sgn(m) == 0 || m > BigInt("1000000000000")) return std::nullopt;
  unsigned long v = m.get_ui();
  std::vector<std::pair<unsigned long, int>> pf;
  for (unsigned long p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    pf.emplace_back(p, e);
  }
  if (v > 1) pf.emplace_back(v, 1);
  std::vector<BigInt> divs{BigInt(1)};
  for (auto [p, e] : pf) {
    const std::size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Subset sums of a multiset of factor degrees, restricted to 1..n-1.
inline std::vector<bool> feasible_degrees(const std::vector<unsigned long>& degrees, unsigned long n) {
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (unsigned long d : degrees) {
    for (unsigned long s = n; s + 1 > d; --s) {
      if (reach[s - d]) reach[s] = true;
      if (s == d) break;
    }
  }
  reach[0] = false;
  reach[n] = false;
  return reach;
}

}  // namespace detail

/// Decides irreducibility of a nonconstant primitive polynomial over Q, with a
/// certificate either way. Never guesses: throws UndecidedError past the caps.
inline IrreducibilityResult irreducible_over_Q(const PolyZ& poly, const IrreducibilityOptions& opt = {}) {
  if (poly.degree() < 1) throw Error("invalid_argument", "irreducibility of a constant polynomial");
  if (poly.degree() > opt.degree_cap) {
    throw UndecidedError("degree " + std::to_string(poly.degree()) + " exceeds the cap " +
                         std::to_string(opt.degree_cap) + "; undecided at desk scale");
  }
  const PolyZ h = poly.primitive_part();
  const auto n = static_cast<unsigned long>(h.degree());
  IrreducibilityResult res;
  if (n == 1) {
    res.irreducible = true;
    res.method = IrreducibilityMethod::Linear;
    return res;
  }
  auto reducible = [&](IrreducibilityMethod m, const PolyZ& g) {
    res.irreducible = false;
    res.method = m;
    res.factors = {g, divide_exact(h, g).value()};
    return res;
  };

  // Rational root test.
  if (sgn(h.coeff(0)) == 0) return reducible(IrreducibilityMethod::RationalRoot, PolyZ::variable());
  const auto tail_divs = detail::small_divisors(h.coeff(0));
  const auto lead_divs = detail::small_divisors(h.lead());
  const bool roots_tested = tail_divs && lead_divs;
  if (roots_tested) {
    for (const auto& b : *lead_divs) {
      for (const auto& a : *tail_divs) {
        for (int s : {1, -1}) {
          const BigInt num = s * a;
          if (gcd_int(num, b) != 1) continue;
          if (sgn(h.eval_homogeneous(num, b, n)) == 0) {
            return reducible(IrreducibilityMethod::RationalRoot, PolyZ(std::vector<BigInt>{-num, b}));
          }
        }
      }
    }
  }

  const PolyZ sq = gcd_primitive(h, h.derivative());
  if (sq.degree() > 0) return reducible(IrreducibilityMethod::RepeatedFactor, sq);

  // Factor-degree patterns modulo small primes with squarefree, degree-preserving reduction.
  std::vector<bool> feasible(n + 1, true);
  feasible[0] = feasible[n] = false;
  std::vector<std::uint64_t> used;
  for (std::uint64_t ell = 2; ell <= opt.prime_limit; ++ell) {
    if (!is_prime(ell)) continue;
    const FpPoly hb = reduce_mod(h, ell);
    if (hb.degree() != static_cast<long>(n)) continue;
    if (gcd_fp(hb, hb.derivative()).degree() != 0) continue;
    std::vector<unsigned long> degs;
    for (const auto& [k, g] : distinct_degree_factorization(hb)) {
      for (long j = 0; j < g.degree() / static_cast<long>(k); ++j) degs.push_back(k);
    }
    if (degs.size() == 1) {
      res.irreducible = true;
      res.method = IrreducibilityMethod::ModPrime;
      res.primes = {ell};
      return res;
    }
    used.push_back(ell);
    const auto here = detail::feasible_degrees(degs, n);
    bool any = false;
    for (unsigned long k = 1; k < n; ++k) {
      feasible[k] = feasible[k] && here[k];
      any = any || feasible[k];
    }
    if (!any) {
      res.irreducible = true;
      res.method = IrreducibilityMethod::DegreeSieve;
      res.primes = used;
      return res;
    }
  }

  // Exhaustive search: a factor g of degree k has |g_i| <= C(k,i) * ||h||_2,
  // g_k | lc(h), g_0 | h(0).
  if (!roots_tested) {
    throw UndecidedError("coefficients too large for the divisor search; undecided at desk scale");
  }
  BigInt norm_sq = 0;
  for (const auto& v : h.coeffs()) norm_sq += v * v;
  const BigInt h_at_1 = h.eval(BigInt(1));
  const BigInt h_at_m1 = h.eval(BigInt(-1));

  std::vector<unsigned long> degrees;
  for (unsigned long k = 1; 2 * k <= n; ++k) {
    if (feasible[k]) degrees.push_back(k);
  }
  for (unsigned long k : degrees) {
    std::vector<BigInt> bound(k + 1);
    for (unsigned long i = 0; i <= k; ++i) {
      const BigInt b = detail::binomial(k, i);
      bound[i] = isqrt(b * b * norm_sq);
    }
    std::vector<std::vector<BigInt>> choices(k + 1);
    for (const auto& d : *lead_divs) {
      if (d <= bound[k]) choices[k].push_back(d);
    }
    for (const auto& d : *tail_divs) {
      if (d <= bound[0]) {
        choices[0].push_back(d);
        choices[0].push_back(-d);
      }
    }
    double total = 1;
    for (unsigned long i = 1; i < k; ++i) {
      if (bound[i] > BigInt(1000000000)) throw UndecidedError("coefficient box too large; undecided at desk scale");
      total *= 2 * bound[i].get_d() + 1;
    }
    total *= static_cast<double>(choices[0].size() * choices[k].size());
    if (total > opt.search_budget) {
      throw UndecidedError("exhaustive factor search needs ~" + std::to_string(static_cast<long long>(total)) +
                           " candidates; undecided at desk scale");
    }
    if (choices[0].empty() || choices[k].empty()) continue;
    for (unsigned long i = 1; i < k; ++i) {
      for (BigInt v = -bound[i]; v <= bound[i]; ++v) choices[i].push_back(v);
    }
    std::vector<std::size_t> idx(k + 1, 0);
    std::vector<BigInt> coeffs(k + 1);
    while (true) {
      for (unsigned long i = 0; i <= k; ++i) coeffs[i] = choices[i][idx[i]];
      PolyZ g(coeffs);
      const BigInt g1 = g.eval(BigInt(1));
      const BigInt gm1 = g.eval(BigInt(-1));
      const bool passes_1 = sgn(g1) != 0 ? mpz_divisible_p(h_at_1.get_mpz_t(), g1.get_mpz_t()) != 0 : sgn(h_at_1) == 0;
      const bool passes_m1 =
          sgn(gm1) != 0 ? mpz_divisible_p(h_at_m1.get_mpz_t(), gm1.get_mpz_t()) != 0 : sgn(h_at_m1) == 0;
      if (passes_1 && passes_m1 && divide_exact(h, g)) {
        return reducible(IrreducibilityMethod::FactorFound, g.primitive_part());
      }
      std::size_t pos = 0;
      while (pos <= k && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
      if (pos > k) break;
    }
    res.searched_degrees.push_back(k);
  }
  res.irreducible = true;
  res.method = IrreducibilityMethod::ExhaustiveSearch;
  res.primes = used;
  return res;
}

// ---------------------------------------------------------------------------
// Pole decomposition and hypothesis

enum class FailureReason {
  ReducibleSupport,
  SinglePointSupport,
  PoleAtInfinityMixed,
  DegreeOne,
  NotARationalFunction,
};

inline std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::ReducibleSupport: return "ReducibleSupport";
    case FailureReason::SinglePointSupport: return "SinglePointSupport";
    case FailureReason::PoleAtInfinityMixed: return "PoleAtInfinityMixed";
    case FailureReason::DegreeOne: return "DegreeOne";
    case FailureReason::NotARationalFunction: return "NotARationalFunction";
  }
  return "unknown";
}

struct PoleDecomposition {
  BigInt A;
  HomogPoly G;
  HomogPoly H;
  unsigned long n = 1;
  IrreducibilityResult irreducibility;
};

class DecompositionResult {
 public:
  DecompositionResult(PoleDecomposition d) : dec_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  DecompositionResult(FailureReason r) : reason_(r) {}  // NOLINT(google-explicit-constructor)

  bool ok() const noexcept { return dec_.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
  const PoleDecomposition& value() const { return dec_.value(); }
  const PoleDecomposition& operator*() const { return dec_.value(); }
  const PoleDecomposition* operator->() const { return &dec_.value(); }
  FailureReason reason() const { return reason_.value(); }

 private:
  std::optional<PoleDecomposition> dec_;
  std::optional<FailureReason> reason_;
};

/// psi(y/x) = G / (A * H^n) with A the (positive) content of the denominator,
/// H primitive and irreducible with positive leading y-coefficient, deg G = n deg H.
inline DecompositionResult homog_decompose(const RatFuncQ& f, const IrreducibilityOptions& opt = {}) {
  const PolyZ& p = f.num();
  const PolyZ& q = f.den();
  if (f.is_constant()) return FailureReason::NotARationalFunction;
  if (p.degree() > q.degree()) {
    // Pole at [0:1]; the support contains the linear form x.
    return q.degree() == 0 ? FailureReason::DegreeOne : FailureReason::PoleAtInfinityMixed;
  }
  const BigInt a = q.content();
  const PolyZ q_prim = q.divexact(a);
  const auto parts = squarefree_decomposition(q_prim);
  if (parts.size() != 1) return FailureReason::ReducibleSupport;
  const auto& [base, mult] = parts.front();
  if (base.pow(mult) != q_prim) throw Error("internal", "squarefree decomposition does not recombine");
  if (base.degree() == 1) return FailureReason::DegreeOne;
  IrreducibilityResult irr = irreducible_over_Q(base, opt);
  if (!irr.irreducible) return FailureReason::ReducibleSupport;

  const auto deg_q = static_cast<std::size_t>(q.degree());
  PoleDecomposition dec{a, HomogPoly::homogenize(p, deg_q),
                        HomogPoly::homogenize(base, static_cast<std::size_t>(base.degree())), mult, std::move(irr)};
  if (dec.G.degree() != dec.n * dec.H.degree()) throw Error("internal", "deg G != n deg H");
  return dec;
}

struct HypothesisReport {
  bool passes = false;
  std::optional<FailureReason> failure_reason;
  std::optional<PoleDecomposition> decomposition;
};

/// Passes iff the pole support is a single Q-irreducible point of degree >= 2.
/// Any support that is one rational point reports SinglePointSupport.
inline HypothesisReport check_hypothesis(const RatFuncQ& f, const IrreducibilityOptions& opt = {}) {
  HypothesisReport rep;
  DecompositionResult d = homog_decompose(f, opt);
  if (d.ok()) {
    rep.passes = true;
    rep.decomposition = d.value();
    return rep;
  }
  rep.failure_reason = d.reason() == FailureReason::DegreeOne ? FailureReason::SinglePointSupport : d.reason();
  return rep;
}

}  // namespace ubdyn
