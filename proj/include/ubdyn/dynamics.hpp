#pragma once

// Exact dynamics of f(z) = z^d + alpha on P^1(Q).
//
// Denominator lemma. Write alpha = a/b in lowest terms and let z be an affine
// rational preperiodic point. For a prime ell with v = v_ell(z) < 0 and
// ell ∤ b, v_ell(f(z)) = d*v < v, so valuations decrease forever; hence
// v_ell(z) >= 0. For ell | b with e = v_ell(b) > 0: if d*v < -e the same
// argument applies; if d*v > -e then v_ell(f(z)) = -e and the next step has
// d*(-e) < -e. So every orbit point satisfies d*v_ell(z) = -e. Consequently
// affine preperiodic points exist only when b = m0^d, and all of them have
// denominator exactly m0.
//
// Escape radius. With R = 1 + max(1, |alpha|) and |z| >= R:
//   |f(z)| >= |z|^2 - |alpha| >= |z| + |z|(R - 1) - |alpha| >= |z| + 1,
// since |z|(R-1) >= R*max(1,|alpha|) >= |alpha| + 1. (For d > 2, |z|^d >= |z|^2.)
//
// Together these bound the candidate set to {u/m0 : |u| <= R*m0}.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ubdyn/exact_arith.hpp"
#include "ubdyn/parallel.hpp"

namespace ubdyn {

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& detail) : Error("budget_exceeded", detail) {}
};

class DeskScaleError : public Error {
 public:
  explicit DeskScaleError(const std::string& detail) : Error("too_large", detail) {}
};

struct MapSpec {
  unsigned long d = 2;
  Rat alpha;

  MapSpec(unsigned long degree, Rat a) : d(degree), alpha(std::move(a)) {
    if (d < 2) throw Error("invalid_argument", "degree must be at least 2");
  }
};

inline ProjRat apply_map(const MapSpec& m, const ProjRat& z) {
  if (z.is_infinity()) return z;
  return z.value().pow(m.d) + m.alpha;
}

/// R = 1 + max(1, |alpha|); |z| >= R implies |f(z)| >= |z| + 1.
inline Rat escape_radius(const MapSpec& m) {
  const Rat a = m.alpha.abs();
  return Rat(1) + (a > Rat(1) ? a : Rat(1));
}

/// m0 = den(alpha)^(1/d) when that root is an integer.
inline std::optional<BigInt> candidate_denominator(const MapSpec& m) {
  if (m.alpha.den() == 1) return BigInt(1);
  return nth_root_exact(m.alpha.den(), m.d);
}

struct OrbitOutcome {
  enum class Kind { Preperiodic, Escaped, BudgetExceeded };
  /// Archimedean: |z| >= R. Adic: denominator differs from m0, so some ell-adic
  /// valuation decreases without bound.
  enum class Escape { Archimedean, Adic };

  Kind kind = Kind::BudgetExceeded;
  std::size_t tail = 0;
  std::size_t period = 0;
  std::size_t step = 0;
  Escape escape = Escape::Archimedean;

  static OrbitOutcome preperiodic(std::size_t t, std::size_t n) { return {Kind::Preperiodic, t, n, t + n, {}}; }
  static OrbitOutcome escaped(std::size_t s, Escape how) { return {Kind::Escaped, 0, 0, s, how}; }
  static OrbitOutcome budget_exceeded(std::size_t s) { return {Kind::BudgetExceeded, 0, 0, s, {}}; }
};

inline constexpr std::size_t kDefaultOrbitBudget = 512;

/// Minimal (tail, period) from the full orbit history; escapes are reported as
/// soon as an iterate leaves the certified candidate set.
inline OrbitOutcome classify_orbit(const MapSpec& m, const ProjRat& start, std::size_t budget = kDefaultOrbitBudget) {
  if (budget < 1) throw Error("invalid_argument", "budget must be at least 1");
  if (start.is_infinity()) return OrbitOutcome::preperiodic(0, 1);
  const Rat radius = escape_radius(m);
  const auto m0 = candidate_denominator(m);
  std::map<Rat, std::size_t> seen;
  std::vector<Rat> orbit;
  Rat z = start.value();
  for (std::size_t i = 0;; ++i) {
    if (auto it = seen.find(z); it != seen.end()) {
      const std::size_t tail = it->second;
      const std::size_t period = i - tail;
      for (std::size_t k = 1; k < period; ++k) {
        if (orbit[tail + k] == orbit[tail]) throw Error("internal", "period is not minimal");
      }
      return OrbitOutcome::preperiodic(tail, period);
    }
    if (!m0 || z.den() != *m0) return OrbitOutcome::escaped(i, OrbitOutcome::Escape::Adic);
    if (z.abs() >= radius) return OrbitOutcome::escaped(i, OrbitOutcome::Escape::Archimedean);
    if (i == budget) return OrbitOutcome::budget_exceeded(i);
    seen.emplace(z, i);
    orbit.push_back(z);
    z = z.pow(m.d) + m.alpha;
  }
}

struct PreperPoint {
  ProjRat z;
  std::size_t tail = 0;
  std::size_t period = 1;
  ProjRat image;
};

struct PreperGraph {
  MapSpec map;
  /// Finite points in increasing order, then infinity.
  std::vector<PreperPoint> points;
  std::optional<BigInt> denominator;
  Rat radius;

  std::size_t total_count() const { return points.size(); }
  std::size_t affine_count() const { return points.size() - 1; }
  std::size_t max_period() const {
    std::size_t best = 0;
    for (const auto& p : points) best = std::max(best, p.period);
    return best;
  }
  std::size_t max_tail() const {
    std::size_t best = 0;
    for (const auto& p : points) best = std::max(best, p.tail);
    return best;
  }
};

struct EnumerationOptions {
  std::size_t budget = kDefaultOrbitBudget;
  /// Largest |u| tried among candidates u/m0.
  long numerator_cap = 1'000'000;
  unsigned workers = 1;
};

namespace detail {

/// Numerators u with gcd(u, m0) = 1 and |u| <= R*m0, ascending.
inline std::vector<long> candidate_numerators(const Rat& radius, const BigInt& m0, long cap) {
  const BigInt scaled = radius.num() * m0;
  BigInt limit;
  mpz_fdiv_q(limit.get_mpz_t(), scaled.get_mpz_t(), radius.den().get_mpz_t());
  if (limit > BigInt(cap)) {
    throw DeskScaleError("candidate numerators up to " + limit.get_str() + " exceed the cap " + std::to_string(cap) +
                         "; too large for desk scale");
  }
  const long u_max = limit.get_si();
  std::vector<long> out;
  for (long u = -u_max; u <= u_max; ++u) {
    if (gcd_int(BigInt(u), m0) == 1) out.push_back(u);
  }
  return out;
}

}  // namespace detail

/// The complete rational preperiodic set, including infinity.
inline PreperGraph enumerate_preperiodic(const MapSpec& m, const EnumerationOptions& opt = {}) {
  PreperGraph g{m, {}, candidate_denominator(m), escape_radius(m)};
  if (g.denominator) {
    const BigInt& m0 = *g.denominator;
    const auto nums = detail::candidate_numerators(g.radius, m0, opt.numerator_cap);
    std::vector<OrbitOutcome> outcomes(nums.size());
    parallel_for(nums.size(), opt.workers, [&](std::size_t i) {
      outcomes[i] = classify_orbit(m, Rat(BigInt(nums[i]), m0), opt.budget);
    });
    for (std::size_t i = 0; i < nums.size(); ++i) {
      const auto& o = outcomes[i];
      if (o.kind == OrbitOutcome::Kind::BudgetExceeded) {
        throw BudgetExceededError("orbit of " + Rat(BigInt(nums[i]), m0).to_string() + " not resolved within " +
                                  std::to_string(opt.budget) + " steps");
      }
      if (o.kind != OrbitOutcome::Kind::Preperiodic) continue;
      const Rat z(BigInt(nums[i]), m0);
      g.points.push_back({z, o.tail, o.period, apply_map(m, z)});
    }
  }
  g.points.push_back({ProjRat::infinity(), 0, 1, ProjRat::infinity()});
  return g;
}

/// Rational roots of z^d - z + alpha.
inline std::vector<Rat> affine_fixed_points(const MapSpec& m) {
  std::vector<Rat> out;
  if (m.d == 2) {
    const auto s = is_square_rat(Rat(1) - Rat(4) * m.alpha);
    if (!s) return out;
    const Rat half = Rat(BigInt(1), BigInt(2));
    out.push_back((Rat(1) - *s) * half);
    if (!s->is_zero()) out.push_back((Rat(1) + *s) * half);
    return out;
  }
  const auto m0 = candidate_denominator(m);
  if (!m0) return out;
  for (long u : detail::candidate_numerators(escape_radius(m), *m0, 1'000'000)) {
    const Rat z(BigInt(u), *m0);
    if (z.pow(m.d) + m.alpha == z) out.push_back(z);
  }
  return out;
}

/// Independent oracle: raw iteration of every z with height <= height_bound,
/// declaring z non-preperiodic once an iterate exceeds 256 bits. Uses neither
/// the denominator lemma nor the escape radius.
inline std::vector<Rat> brute_force_preper_oracle(const MapSpec& m, long height_bound) {
  if (height_bound > 100) throw Error("invalid_argument", "oracle height bound is limited to 100");
  constexpr std::size_t kBitCutoff = 256;
  constexpr std::size_t kMaxSteps = 100000;
  std::vector<Rat> out;
  for (const Rat& start : rationals_of_height_at_most(height_bound)) {
    std::set<Rat> seen;
    Rat z = start;
    for (std::size_t step = 0;; ++step) {
      if (!seen.insert(z).second) {
        out.push_back(start);
        break;
      }
      if (bit_size(z.num()) > kBitCutoff || bit_size(z.den()) > kBitCutoff) break;
      if (step == kMaxSteps) throw Error("internal", "oracle orbit neither repeated nor grew");
      z = z.pow(m.d) + m.alpha;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ubdyn
