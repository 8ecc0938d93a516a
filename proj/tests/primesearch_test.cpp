#include <gtest/gtest.h>

#include "ubdyn/primesearch.hpp"
#include "ubdyn/psi_parser.hpp"

namespace ubdyn {
namespace {

Rat R(long n, long d = 1) { return Rat(BigInt(n), BigInt(d)); }

PoleDecomposition decompose(const char* text) {
  const auto d = homog_decompose(parse_psi(text));
  if (!d) throw std::runtime_error(std::string("no decomposition for ") + text);
  return d.value();
}

// (a | p) for odd p by Euler's criterion, using naive repeated multiplication.
int legendre(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  long acc = 1;
  for (long i = 0; i < (p - 1) / 2; ++i) acc = acc * r % p;
  return acc == 1 ? 1 : -1;
}

std::vector<std::uint64_t> trial_division_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool prime = true;
    for (std::uint64_t j = 2; j * j <= k; ++j) prime = prime && (k % j != 0);
    if (prime) out.push_back(k);
  }
  return out;
}

TEST(PrimeSieve, MatchesTrialDivision) {
  EXPECT_EQ(primes_up_to(1), std::vector<std::uint64_t>{});
  EXPECT_EQ(primes_up_to(2), std::vector<std::uint64_t>{2});
  EXPECT_EQ(primes_up_to(20000), trial_division_primes(20000));
  EXPECT_EQ(primes_up_to(200000).size(), 17984U);
}

TEST(FindGoodPrimes, Examples) {
  const auto dec = decompose("2/(t^2+8)");
  const auto two = find_good_primes(dec, 2, 100);
  EXPECT_TRUE(two.complete);
  EXPECT_EQ(two.good_primes, (std::vector<std::uint64_t>{5, 7}));

  const auto seven = find_good_primes(dec, 7, 40);
  EXPECT_TRUE(seven.complete);
  EXPECT_EQ(seven.good_primes, (std::vector<std::uint64_t>{5, 7, 13, 23, 29, 31, 37}));

  const auto sqrt2 = find_good_primes(decompose("1/(t^2-2)"), 1, 20);
  EXPECT_EQ(sqrt2.good_primes, (std::vector<std::uint64_t>{3}));
}

TEST(FindGoodPrimes, IncompleteBelowBound) {
  const auto rep = find_good_primes(decompose("2/(t^2+8)"), 10, 30);
  EXPECT_FALSE(rep.complete);
  EXPECT_EQ(rep.scanned_bound, 30U);
  EXPECT_EQ(rep.good_primes, (std::vector<std::uint64_t>{5, 7, 13, 23, 29}));
  EXPECT_EQ(rep.empirical_density, R(5, 10));
}

TEST(FindGoodPrimes, LegendreCharacterization) {
  // Good primes for y^2 + 8x^2: odd ell with (-8 | ell) = -1.
  const auto dec = decompose("2/(t^2+8)");
  const auto rep = find_good_primes(dec, 100000, 10000, 4);
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t ell : trial_division_primes(10000)) {
    if (ell > 2 && legendre(-8, static_cast<long>(ell)) == -1) oracle.push_back(ell);
  }
  EXPECT_EQ(rep.good_primes, oracle);
  for (std::uint64_t ell : rep.good_primes) EXPECT_TRUE(ell % 8 == 5 || ell % 8 == 7);
}

TEST(FindGoodPrimes, DegenerateAndMonotone) {
  // A = 3, leading y-coefficient 5: both primes are skipped.
  const auto dec = decompose("1/(15*t^2+3)");
  EXPECT_EQ(dec.A, 3);
  const auto small = find_good_primes(dec, 1000, 50);
  EXPECT_EQ(small.skipped_degenerate, (std::vector<std::uint64_t>{3, 5}));
  const auto large = find_good_primes(dec, 1000, 500);
  for (std::uint64_t ell : small.good_primes) {
    EXPECT_NE(std::find(large.good_primes.begin(), large.good_primes.end(), ell), large.good_primes.end());
    EXPECT_EQ(classify_prime(dec, ell), PrimeStatus::Good);
  }
}

TEST(FindGoodPrimes, WorkerCountDoesNotMatter) {
  const auto dec = decompose("1/(t^3-2)");
  const auto one = find_good_primes(dec, 50, 5000, 1);
  const auto four = find_good_primes(dec, 50, 5000, 4);
  EXPECT_EQ(one.good_primes, four.good_primes);
  EXPECT_EQ(one.scanned_bound, four.scanned_bound);
  EXPECT_EQ(one.empirical_density, four.empirical_density);
}

TEST(EmpiricalDensity, QuadraticFamiliesNearOneHalf) {
  const Rat lo = R(48, 100);
  const Rat hi = R(52, 100);
  for (const char* text : {"2/(t^2+8)", "1/(t^2-2)"}) {
    const Rat d = empirical_density(decompose(text), 100000, 4);
    EXPECT_GE(d, lo) << text;
    EXPECT_LE(d, hi) << text;
  }
}

TEST(EmpiricalDensity, CyclotomicTwelveIsPositive) {
  // Phi_12 has a root mod ell iff ell = 1 mod 12, so the good density is 3/4.
  const Rat d = empirical_density(decompose("1/(t^4-t^2+1)"), 10000);
  EXPECT_GT(d, R(1, 2));
  std::size_t eligible = 0;
  std::size_t good = 0;
  for (std::uint64_t ell : trial_division_primes(10000)) {
    ++eligible;
    good += (ell % 12 != 1) ? 1 : 0;
  }
  EXPECT_EQ(d, Rat(BigInt(static_cast<unsigned long>(good)), BigInt(static_cast<unsigned long>(eligible))));
}

TEST(VerifyLemma1, GoodPrimesHaveNoViolations) {
  const RatFuncQ psi = parse_psi("2/(t^2+8)");
  const auto dec = homog_decompose(psi).value();
  for (std::uint64_t ell : {5, 7}) {
    const auto rec = verify_lemma1(psi, dec, ell, 100);
    EXPECT_EQ(rec.violations, 0U);
    EXPECT_EQ(rec.checked, rationals_of_height_at_most(100).size());
  }
}

TEST(VerifyLemma1, BadPrimeControl) {
  const RatFuncQ psi = parse_psi("2/(t^2+8)");
  const auto rec = verify_lemma1(psi, homog_decompose(psi).value(), 3, 20);
  EXPECT_GT(rec.violations, 0U);
  EXPECT_NE(std::find(rec.witnesses.begin(), rec.witnesses.end(), R(1)), rec.witnesses.end());
  EXPECT_EQ(padic_valuation(eval_psi(psi, R(1)).value(), 3).value, -2);
}

TEST(VerifyLemma1, SoundnessAgainstDenominatorFactorization) {
  // Independent check: factor the denominator of psi(c) by trial division.
  for (const char* text : {"2/(t^2+8)", "(t^3+1)/(t^4-t^2+1)^2", "1/(7*t^2+3*t+5)"}) {
    const RatFuncQ psi = parse_psi(text);
    const auto dec = homog_decompose(psi).value();
    const auto rep = find_good_primes(dec, 6, 1000);
    for (const Rat& c : rationals_of_height_at_most(200)) {
      const Rat v = eval_psi(psi, c).value();
      for (std::uint64_t ell : rep.good_primes) {
        EXPECT_NE(v.den() % static_cast<unsigned long>(ell), 0) << text << " c=" << c.to_string() << " ell=" << ell;
      }
    }
  }
}

TEST(VerifyLemma1, RepresentativeIndependence) {
  // Scaling (a, b) by k multiplies H(a, b) by k^deg H; for ell ∤ k divisibility is unchanged.
  const auto dec = decompose("2/(t^2+8)");
  for (const Rat& c : rationals_of_height_at_most(30)) {
    for (long k : {2L, 3L, 11L, -13L}) {
      for (unsigned long ell : {5UL, 7UL, 13UL}) {
        if (k % static_cast<long>(ell) == 0) continue;
        const bool base = dec.H.eval(c.den(), c.num()) % ell == 0;
        const bool scaled = dec.H.eval(c.den() * k, c.num() * k) % ell == 0;
        EXPECT_EQ(base, scaled);
      }
    }
  }
}

}  // namespace
}  // namespace ubdyn
