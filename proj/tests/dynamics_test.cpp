#include <gtest/gtest.h>

#include <random>

#include "ubdyn/dynamics.hpp"

namespace ubdyn {
namespace {

Rat R(long n, long d = 1) { return Rat(BigInt(n), BigInt(d)); }

std::vector<Rat> finite_points(const PreperGraph& g) {
  std::vector<Rat> out;
  for (const auto& p : g.points) {
    if (!p.z.is_infinity()) out.push_back(p.z.value());
  }
  return out;
}

std::vector<Rat> restrict_height(const std::vector<Rat>& zs, long h) {
  std::vector<Rat> out;
  for (const Rat& z : zs) {
    if (rat_height(z) <= h) out.push_back(z);
  }
  return out;
}

TEST(ApplyMap, Examples) {
  const MapSpec m(2, R(-29, 16));
  EXPECT_EQ(apply_map(m, R(-1, 4)), ProjRat(R(-7, 4)));
  EXPECT_EQ(apply_map(m, R(-7, 4)), ProjRat(R(5, 4)));
  EXPECT_EQ(apply_map(m, R(5, 4)), ProjRat(R(-1, 4)));
  EXPECT_TRUE(apply_map(m, ProjRat::infinity()).is_infinity());
  EXPECT_EQ(apply_map(MapSpec(3, R(0)), R(-1)), ProjRat(R(-1)));
  EXPECT_THROW(MapSpec(1, R(0)), Error);
}

TEST(EscapeRadius, Examples) {
  EXPECT_EQ(escape_radius(MapSpec(2, R(-29, 16))), R(45, 16));
  EXPECT_EQ(escape_radius(MapSpec(2, R(1, 4))), R(2));
  EXPECT_EQ(escape_radius(MapSpec(3, R(-5))), R(6));
}

TEST(EscapeRadius, GrowthOnSamples) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(-400, 400);
  std::uniform_int_distribution<long> den(1, 60);
  std::uniform_int_distribution<unsigned long> deg(2, 5);
  for (int i = 0; i < 1000; ++i) {
    const MapSpec m(deg(rng), R(num(rng), den(rng)));
    const Rat radius = escape_radius(m);
    Rat z = radius + R(std::abs(num(rng)), den(rng));
    if (i % 2 == 1) z = Rat(0) - z;
    const Rat fz = apply_map(m, z).value();
    EXPECT_GE(fz.abs(), z.abs() + Rat(1)) << "alpha=" << m.alpha.to_string() << " z=" << z.to_string();
  }
}

TEST(CandidateDenominator, Examples) {
  EXPECT_EQ(candidate_denominator(MapSpec(2, R(-29, 16))), BigInt(4));
  EXPECT_FALSE(candidate_denominator(MapSpec(2, R(1, 2))).has_value());
  EXPECT_EQ(candidate_denominator(MapSpec(3, R(5, 8))), BigInt(2));
  EXPECT_EQ(candidate_denominator(MapSpec(2, R(3))), BigInt(1));
}

TEST(ClassifyOrbit, Examples) {
  const MapSpec m(2, R(-29, 16));
  const auto cyc = classify_orbit(m, R(-1, 4));
  EXPECT_EQ(cyc.kind, OrbitOutcome::Kind::Preperiodic);
  EXPECT_EQ(cyc.tail, 0U);
  EXPECT_EQ(cyc.period, 3U);
  const auto pre = classify_orbit(m, R(1, 4));
  EXPECT_EQ(pre.kind, OrbitOutcome::Kind::Preperiodic);
  EXPECT_EQ(pre.tail, 1U);
  EXPECT_EQ(pre.period, 3U);
  EXPECT_EQ(classify_orbit(m, R(3)).kind, OrbitOutcome::Kind::Escaped);
  EXPECT_EQ(classify_orbit(m, R(1, 3)).escape, OrbitOutcome::Escape::Adic);
  const auto inf = classify_orbit(m, ProjRat::infinity());
  EXPECT_EQ(inf.period, 1U);
}

TEST(ClassifyOrbit, BudgetIsEnforced) {
  const MapSpec m(2, R(-29, 16));
  EXPECT_EQ(classify_orbit(m, R(1, 4), 1).kind, OrbitOutcome::Kind::BudgetExceeded);
  EXPECT_THROW(classify_orbit(m, R(1, 4), 0), Error);
  EXPECT_THROW(enumerate_preperiodic(m, {1, 1'000'000, 1}), BudgetExceededError);
}

TEST(Enumerate, GoldCases) {
  struct Case {
    unsigned long d;
    Rat alpha;
    std::size_t total;
    std::size_t max_period;
  };
  const std::vector<Case> cases = {
      {2, R(-29, 16), 9, 3}, {2, R(1, 4), 3, 1}, {2, R(-1), 4, 2}, {2, R(1, 2), 1, 1},
      {3, R(0), 4, 1},       {2, R(2, 9), 5, 1}, {2, R(0), 4, 1},
  };
  for (const auto& c : cases) {
    const MapSpec m(c.d, c.alpha);
    const auto g = enumerate_preperiodic(m);
    EXPECT_EQ(g.total_count(), c.total) << c.alpha.to_string();
    EXPECT_EQ(g.max_period(), c.max_period) << c.alpha.to_string();
    EXPECT_EQ(finite_points(g), brute_force_preper_oracle(m, 100)) << c.alpha.to_string();
  }
  const auto g = enumerate_preperiodic(MapSpec(2, R(-29, 16)));
  const std::vector<Rat> expected = {R(-7, 4), R(-5, 4), R(-3, 4), R(-1, 4), R(1, 4),
                                     R(3, 4),  R(5, 4),  R(7, 4)};
  EXPECT_EQ(finite_points(g), expected);
  EXPECT_TRUE(g.points.back().z.is_infinity());
}

TEST(Enumerate, TooLargeForDeskScale) {
  EXPECT_THROW(enumerate_preperiodic(MapSpec(2, R(-2'000'000))), DeskScaleError);
}

TEST(AffineFixedPoints, Examples) {
  EXPECT_EQ(affine_fixed_points(MapSpec(2, R(2, 9))), (std::vector<Rat>{R(1, 3), R(2, 3)}));
  EXPECT_EQ(affine_fixed_points(MapSpec(2, R(1, 4))), (std::vector<Rat>{R(1, 2)}));
  EXPECT_TRUE(affine_fixed_points(MapSpec(2, R(1, 2))).empty());
  EXPECT_EQ(affine_fixed_points(MapSpec(3, R(0))), (std::vector<Rat>{R(-1), R(0), R(1)}));
}

TEST(BruteForceOracle, GoldCases) {
  EXPECT_EQ(brute_force_preper_oracle(MapSpec(2, R(1, 4)), 20), (std::vector<Rat>{R(-1, 2), R(1, 2)}));
  EXPECT_EQ(brute_force_preper_oracle(MapSpec(2, R(-1)), 20), (std::vector<Rat>{R(-1), R(0), R(1)}));
  EXPECT_TRUE(brute_force_preper_oracle(MapSpec(2, R(1, 2)), 20).empty());
  EXPECT_THROW(brute_force_preper_oracle(MapSpec(2, R(0)), 101), Error);
}

class RandomMaps : public ::testing::Test {
 protected:
  // Half the alphas get a perfect-power denominator and a third a planted fixed point.
  static std::vector<MapSpec> make(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<MapSpec> out;
    while (out.size() < n) {
      const unsigned long d = 2 + rng() % 3;
      long den = 1 + static_cast<long>(rng() % 100);
      if (out.size() % 2 == 0) {
        const long root = 1 + static_cast<long>(rng() % 4);
        den = pow_int(BigInt(root), d).get_si();
        if (den > 100) den = 1;
      }
      const long num = static_cast<long>(rng() % 201) - 100;
      Rat a = R(num, den);
      if (out.size() % 3 == 1) {
        const long m = 1 + static_cast<long>(rng() % (d == 2 ? 10 : 4));
        const Rat z0 = R(static_cast<long>(rng() % 21) - 10, m);
        a = z0 - z0.pow(d);
      }
      if (rat_height(a) > 100) continue;
      out.emplace_back(d, a);
    }
    return out;
  }
};

TEST_F(RandomMaps, ClosureAndConsistency) {
  for (const auto& m : make(200, 101)) {
    const auto g = enumerate_preperiodic(m);
    std::map<ProjRat, const PreperPoint*> index;
    for (const auto& p : g.points) index[p.z] = &p;
    ASSERT_EQ(index.size(), g.points.size());
    for (const auto& p : g.points) {
      EXPECT_EQ(apply_map(m, p.z), p.image);
      auto it = index.find(p.image);
      ASSERT_NE(it, index.end()) << "not closed under f, alpha=" << m.alpha.to_string();
      const PreperPoint& q = *it->second;
      if (p.tail > 0) {
        EXPECT_EQ(q.tail, p.tail - 1);
        EXPECT_EQ(q.period, p.period);
      } else {
        EXPECT_EQ(q.tail, 0U);
        EXPECT_EQ(q.period, p.period);
      }
    }
  }
}

TEST_F(RandomMaps, PeriodIsMinimal) {
  for (const auto& m : make(200, 202)) {
    for (const auto& p : enumerate_preperiodic(m).points) {
      if (p.tail != 0) continue;
      ProjRat z = p.z;
      for (std::size_t k = 1; k <= p.period; ++k) {
        z = apply_map(m, z);
        EXPECT_EQ(z == p.z, k == p.period);
      }
    }
  }
}

TEST_F(RandomMaps, DenominatorRigidity) {
  for (const auto& m : make(200, 303)) {
    const auto g = enumerate_preperiodic(m);
    const auto zs = finite_points(g);
    if (!g.denominator) {
      EXPECT_TRUE(zs.empty());
      continue;
    }
    for (const Rat& z : zs) EXPECT_EQ(z.den(), *g.denominator);
  }
}

TEST_F(RandomMaps, MatchesOracleUpToHeight50) {
  for (const auto& m : make(200, 404)) {
    const auto g = enumerate_preperiodic(m);
    EXPECT_EQ(restrict_height(finite_points(g), 50), brute_force_preper_oracle(m, 50))
        << "d=" << m.d << " alpha=" << m.alpha.to_string();
  }
}

TEST_F(RandomMaps, WorkerCountDoesNotMatter) {
  for (const auto& m : make(40, 505)) {
    const auto a = enumerate_preperiodic(m, {kDefaultOrbitBudget, 1'000'000, 1});
    const auto b = enumerate_preperiodic(m, {kDefaultOrbitBudget, 1'000'000, 4});
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].z, b.points[i].z);
      EXPECT_EQ(a.points[i].tail, b.points[i].tail);
      EXPECT_EQ(a.points[i].period, b.points[i].period);
    }
  }
}

}  // namespace
}  // namespace ubdyn
