#pragma once

// Search for primes ell with ell ∤ A and H mod ell free of linear factors. Such
// primes never divide the denominator of psi(c), for any rational c.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ubdyn/exact_arith.hpp"
#include "ubdyn/ffpoly.hpp"
#include "ubdyn/parallel.hpp"
#include "ubdyn/ratfunc.hpp"

namespace ubdyn {

/// Primes p <= bound, by a segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound))) + 1;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }
  constexpr std::uint64_t kSegment = 1U << 16U;
  std::vector<bool> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= bound; lo += kSegment) {
    const std::uint64_t hi = std::min(bound, lo + kSegment - 1);
    std::fill(seg.begin(), seg.end(), true);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = false;
    }
    for (std::uint64_t x = lo; x <= hi; ++x) {
      if (seg[x - lo]) out.push_back(x);
    }
  }
  return out;
}

enum class PrimeStatus { Good, Bad, Degenerate };

/// Degenerate: ell | A, or the reduction drops degree (ell divides the leading
/// y-coefficient of H). Otherwise Good iff H has no zero in P^1(F_ell).
inline PrimeStatus classify_prime(const PoleDecomposition& dec, std::uint64_t ell) {
  const BigInt m(static_cast<unsigned long>(ell));
  if (mpz_divisible_p(dec.A.get_mpz_t(), m.get_mpz_t()) != 0) return PrimeStatus::Degenerate;
  const BigInt& lead = dec.H.coeff_y(dec.H.degree());
  if (mpz_divisible_p(lead.get_mpz_t(), m.get_mpz_t()) != 0) return PrimeStatus::Degenerate;
  return projective_root_exists(dec.H, ell) ? PrimeStatus::Bad : PrimeStatus::Good;
}

struct GoodPrimeReport {
  PoleDecomposition decomposition;
  /// Largest ell examined: the count-th good prime, or the bound when incomplete.
  std::uint64_t scanned_bound = 0;
  std::vector<std::uint64_t> good_primes;
  std::vector<std::uint64_t> skipped_degenerate;
  std::size_t eligible_scanned = 0;
  /// |good| / |eligible scanned|
  Rat empirical_density;
  bool complete = false;
};

namespace detail {

inline std::vector<PrimeStatus> classify_block(const PoleDecomposition& dec, const std::vector<std::uint64_t>& primes,
                                               std::size_t begin, std::size_t end, unsigned workers) {
  std::vector<PrimeStatus> st(end - begin);
  parallel_for(end - begin, workers, [&](std::size_t i) { st[i] = classify_prime(dec, primes[begin + i]); });
  return st;
}

}  // namespace detail

/// First `count` good primes <= bound in increasing order. Blocks are classified
/// concurrently and consumed in prime order, so the report is worker-independent.
inline GoodPrimeReport find_good_primes(const PoleDecomposition& dec, std::size_t count, std::uint64_t bound,
                                        unsigned workers = 1) {
  if (count < 1) throw Error("invalid_argument", "count must be at least 1");
  GoodPrimeReport rep;
  rep.decomposition = dec;
  rep.scanned_bound = bound;
  const auto primes = primes_up_to(bound);
  constexpr std::size_t kBlock = 4096;
  for (std::size_t begin = 0; begin < primes.size() && !rep.complete; begin += kBlock) {
    const std::size_t end = std::min(primes.size(), begin + kBlock);
    const auto st = detail::classify_block(dec, primes, begin, end, workers);
    for (std::size_t i = 0; i < st.size(); ++i) {
      const std::uint64_t ell = primes[begin + i];
      if (st[i] == PrimeStatus::Degenerate) {
        rep.skipped_degenerate.push_back(ell);
        continue;
      }
      ++rep.eligible_scanned;
      if (st[i] == PrimeStatus::Good) rep.good_primes.push_back(ell);
      if (rep.good_primes.size() == count) {
        rep.complete = true;
        rep.scanned_bound = ell;
        break;
      }
    }
  }
  rep.empirical_density = rep.eligible_scanned == 0
                              ? Rat(0)
                              : Rat(BigInt(static_cast<unsigned long>(rep.good_primes.size())),
                                    BigInt(static_cast<unsigned long>(rep.eligible_scanned)));
  return rep;
}

/// Fraction of eligible primes <= bound that are good.
inline Rat empirical_density(const PoleDecomposition& dec, std::uint64_t bound, unsigned workers = 1) {
  const auto primes = primes_up_to(bound);
  const auto st = detail::classify_block(dec, primes, 0, primes.size(), workers);
  unsigned long good = 0;
  unsigned long eligible = 0;
  for (PrimeStatus s : st) {
    if (s == PrimeStatus::Degenerate) continue;
    ++eligible;
    if (s == PrimeStatus::Good) ++good;
  }
  return eligible == 0 ? Rat(0) : Rat(BigInt(good), BigInt(eligible));
}

struct Lemma1Record {
  std::uint64_t ell = 0;
  long height_bound = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// The first few c with ell | H(a, b) or v_ell(psi(c)) < 0.
  std::vector<Rat> witnesses;
};

/// For every c = b/a of height <= height_bound checks ell ∤ H(a, b) and
/// v_ell(psi(c)) >= 0. Violations are counted; they are only possible when ell
/// is not a good prime.
inline Lemma1Record verify_lemma1(const RatFuncQ& psi, const PoleDecomposition& dec, std::uint64_t ell,
                                  long height_bound, std::size_t max_witnesses = 10) {
  require_word_prime(ell);
  Lemma1Record rec;
  rec.ell = ell;
  rec.height_bound = height_bound;
  const BigInt m(static_cast<unsigned long>(ell));
  for (const Rat& c : rationals_of_height_at_most(height_bound)) {
    ++rec.checked;
    const BigInt h_val = dec.H.eval(c.den(), c.num());
    bool bad = mpz_divisible_p(h_val.get_mpz_t(), m.get_mpz_t()) != 0;
    const ProjRat v = psi.eval(c);
    bad = bad || v.is_infinity() || !padic_valuation(v.value(), m).at_least(0);
    if (bad) {
      ++rec.violations;
      if (rec.witnesses.size() < max_witnesses) rec.witnesses.push_back(c);
    }
  }
  return rec;
}

}  // namespace ubdyn
