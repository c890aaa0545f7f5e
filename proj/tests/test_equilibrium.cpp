// Copyright 2026 The secgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "secgame/equilibrium.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secgame/errors.hpp"

namespace secgame {
namespace {

// Roots of h(gamma) = 0.5 for the weak-protection curve, bisected on the
// long-double oracle.
constexpr double kWeakMidRoot = 0.70380314687136804;
constexpr double kWeakHighRoot = 0.93886896071381535;
// Root of h(gamma) (1 - gamma) = 0.1 on the same curve.
constexpr double kWeakUniformMarket = 0.8107580838630153;
// Oracle welfare at gamma = 1 for that spec, the grid maximum.
constexpr double kWeakUniformSocialWelfare = 0.39654755665607291;

EpidemicModel Strong() { return {0.01, 0.0, 0.5, PoissonDegree{10.0}}; }
EpidemicModel Weak() { return {0.01, 0.1, 0.5, PoissonDegree{10.0}}; }
// Isolated agents: h is p and g vanishes.
EpidemicModel Isolated(double p) { return {p, 0.0, 0.0, FixedDegree{0}}; }

TEST(Quantile, Examples) {
  EXPECT_DOUBLE_EQ(Quantile(Uniform01{}, 0.3), 0.3);
  EXPECT_DOUBLE_EQ(Quantile(PowerTypes{2.0}, 0.25), 0.5);
  EXPECT_EQ(Quantile(Homogeneous{3.0}, 0.7), 3.0);
}

TEST(Quantile, PiecewiseRoundTrip) {
  const PiecewiseLinearCdf types{{{0.0, 0.0}, {0.2, 0.5}, {0.7, 0.6}, {1.0, 1.0}}};
  oracle::Gen gen(41);
  for (int i = 0; i < 500; ++i) {
    const double u = gen.Uniform(0.0, 1.0);
    ASSERT_NEAR(Cdf(types, Quantile(types, u)), u, 1e-12);
  }
}

TEST(Quantile, RejectsOutOfRange) {
  EXPECT_THROW(Quantile(Uniform01{}, 1.2), InputError);
  EXPECT_THROW(Validate(PiecewiseLinearCdf{{{0.0, 0.0}, {0.5, 0.5}}}),
               InputError);
}

TEST(QuantileIntegral, UniformClosedFormAgreesWithQuadrature) {
  // A two-knot piecewise CDF is the uniform law, integrated numerically.
  const PiecewiseLinearCdf numeric{{{0.0, 0.0}, {1.0, 1.0}}};
  oracle::Gen gen(42);
  for (int i = 0; i < 100; ++i) {
    double a = gen.Uniform(0.0, 1.0), b = gen.Uniform(0.0, 1.0);
    if (a > b) std::swap(a, b);
    const double closed = ((1 - a) * (1 - a) - (1 - b) * (1 - b)) / 2.0;
    ASSERT_NEAR(QuantileIntegral(Uniform01{}, a, b), closed, 1e-14);
    ASSERT_NEAR(QuantileIntegral(numeric, a, b), closed, 1e-10);
  }
}

TEST(QuantileIntegral, PowerLawClosedForm) {
  // integral_0^1 (1 - u)^(1/k) du = k / (k + 1).
  EXPECT_NEAR(QuantileIntegral(PowerTypes{3.0}, 0.0, 1.0), 0.75, 1e-14);
}

TEST(Willingness, VanishesAtFullAdoption) {
  const GameSpec spec{Weak(), Uniform01{}, 0.1};
  EXPECT_EQ(Willingness(spec, 1.0), 0.0);
}

TEST(Willingness, HomogeneousIsScaledIncentive) {
  const GameSpec spec{Weak(), Homogeneous{2.5}, 0.1};
  for (const double gamma : {0.0, 0.3, 0.9, 1.0}) {
    EXPECT_DOUBLE_EQ(Willingness(spec, gamma),
                     2.5 * Incentive(Weak(), gamma));
  }
}

TEST(Willingness, ConstantIncentiveIsLinear) {
  const GameSpec spec{Isolated(0.4), Uniform01{}, 0.1};
  for (const double gamma : {0.0, 0.25, 0.6}) {
    EXPECT_NEAR(Willingness(spec, gamma), 0.4 * (1.0 - gamma), 1e-15);
  }
}

TEST(Willingness, BackwardSlopeAtOneIsNegative) {
  for (const TypeDistribution& types :
       {TypeDistribution{Uniform01{}}, TypeDistribution{PowerTypes{0.5}}}) {
    for (const auto& epi : {Weak(), Strong()}) {
      const GameSpec spec{epi, types, 0.1};
      EXPECT_GT(Willingness(spec, 1.0 - 1e-4), Willingness(spec, 1.0));
    }
  }
}

TEST(FindEquilibria, LinearWillingnessHasOneStableRoot) {
  const EquilibriumReport r =
      FindEquilibria(GameSpec{Isolated(0.5), Uniform01{}, 0.2});
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_NEAR(r.equilibria[0].gamma_star, 0.6, 1e-10);
  EXPECT_TRUE(r.equilibria[0].stable);
  EXPECT_EQ(r.equilibria[0].kind, EquilibriumKind::kInterior);
}

TEST(FindEquilibria, WeakProtectionHasThreeEquilibria) {
  const EquilibriumReport r =
      FindEquilibria(GameSpec{Weak(), Homogeneous{1.0}, 0.5});
  ASSERT_EQ(r.equilibria.size(), 3u);
  EXPECT_EQ(r.equilibria[0].gamma_star, 0.0);
  EXPECT_EQ(r.equilibria[0].kind, EquilibriumKind::kZero);
  EXPECT_TRUE(r.equilibria[0].stable);
  EXPECT_NEAR(r.equilibria[1].gamma_star, kWeakMidRoot, 1e-9);
  EXPECT_FALSE(r.equilibria[1].stable);
  EXPECT_NEAR(r.equilibria[2].gamma_star, kWeakHighRoot, 1e-9);
  EXPECT_TRUE(r.equilibria[2].stable);
  EXPECT_TRUE(r.critical_mass);
  EXPECT_TRUE(r.single_peaked);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(FindEquilibria, PriceAboveEveryValuationLeavesZero) {
  const EquilibriumReport r =
      FindEquilibria(GameSpec{Weak(), Uniform01{}, 1.0});
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].gamma_star, 0.0);
  EXPECT_EQ(r.equilibria[0].kind, EquilibriumKind::kZero);
}

TEST(FindEquilibria, HomogeneousCanReachFullAdoption) {
  const EquilibriumReport r =
      FindEquilibria(GameSpec{Isolated(0.5), Homogeneous{1.0}, 0.3});
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].gamma_star, 1.0);
  EXPECT_EQ(r.equilibria[0].kind, EquilibriumKind::kFull);
}

TEST(FindEquilibria, RejectsCoarseGrid) {
  EXPECT_THROW(FindEquilibria(GameSpec{Weak(), Uniform01{}, 0.1}, 20),
               InputError);
}

// Roots solve w = c, labels agree with the slope, and w - c keeps its sign
// between consecutive equilibria.
TEST(FindEquilibria, RootsAndLabelsAreConsistent) {
  const std::vector<TypeDistribution> types = {
      Uniform01{}, PowerTypes{0.5}, PowerTypes{3.0}, Homogeneous{1.0},
      PiecewiseLinearCdf{{{0.0, 0.0}, {0.5, 0.2}, {1.0, 1.0}}}};
  for (const auto& epi : {Weak(), Strong()}) {
    for (const auto& t : types) {
      for (const double c : {0.05, 0.15, 0.3, 0.45, 0.52}) {
        const GameSpec spec{epi, t, c};
        const EquilibriumReport r = FindEquilibria(spec);
        ASSERT_FALSE(r.equilibria.empty());
        for (const auto& e : r.equilibria) {
          const double w = Willingness(spec, e.gamma_star);
          if (e.kind == EquilibriumKind::kInterior) {
            ASSERT_LE(std::abs(w - c), 1e-8);
            const double slope = (Willingness(spec, e.gamma_star + 1e-6) -
                                  Willingness(spec, e.gamma_star - 1e-6));
            ASSERT_EQ(e.stable, slope < 0.0);
          } else if (e.kind == EquilibriumKind::kZero) {
            ASSERT_LE(w, c);
          } else {
            ASSERT_GE(w, c);
          }
        }
        for (std::size_t i = 0; i + 1 < r.equilibria.size(); ++i) {
          const double lo = r.equilibria[i].gamma_star;
          const double hi = r.equilibria[i + 1].gamma_star;
          const double sign = Willingness(spec, 0.5 * (lo + hi)) - c;
          for (int k = 1; k < 20; ++k) {
            const double g = lo + (hi - lo) * k / 20.0;
            ASSERT_GT((Willingness(spec, g) - c) * sign, 0.0);
          }
        }
      }
    }
  }
}

TEST(CriticalMass, StrongProtectionHasNone) {
  const CriticalMassReport r = CriticalMass(GameSpec{Strong(), Uniform01{}, 0.1});
  EXPECT_FALSE(r.positive);
  EXPECT_LT(r.w_slope0, 0.0);
}

TEST(CriticalMass, WeakProtectionHomogeneousHasSome) {
  const CriticalMassReport r =
      CriticalMass(GameSpec{Weak(), Homogeneous{1.0}, 0.1});
  EXPECT_TRUE(r.positive);
  EXPECT_GT(r.h_slope0, 0.0);
  EXPECT_FALSE(r.w0_zero);
  EXPECT_TRUE(std::isinf(r.density_near_one));
  EXPECT_TRUE(r.single_peaked);
}

TEST(CriticalMass, ConstantIncentiveHasNone) {
  const CriticalMassReport r =
      CriticalMass(GameSpec{Isolated(0.3), Uniform01{}, 0.1});
  EXPECT_FALSE(r.positive);
  EXPECT_NEAR(r.h_slope0, 0.0, 1e-12);
  EXPECT_NEAR(r.density_near_one, 1.0, 1e-9);
}

TEST(Welfare, ZeroAtZeroAdoption) {
  EXPECT_EQ(Welfare(GameSpec{Weak(), Uniform01{}, 0.1}, 0.0), 0.0);
}

TEST(Welfare, HomogeneousFormula) {
  const GameSpec spec{Weak(), Homogeneous{2.0}, 0.3};
  for (const double gamma : {0.2, 0.6, 1.0}) {
    const double expected =
        2.0 * PublicExternality(Weak(), gamma) +
        gamma * (2.0 * Incentive(Weak(), gamma) - 0.3);
    EXPECT_NEAR(Welfare(spec, gamma), expected, 1e-14);
  }
}

TEST(SocialOptimum, ProhibitivePriceKeepsEveryoneOut) {
  const WelfareReport r = SocialOptimum(GameSpec{Weak(), Uniform01{}, 5.0});
  EXPECT_EQ(r.gamma_social, 0.0);
  EXPECT_EQ(r.gamma_market, 0.0);
  EXPECT_EQ(r.efficiency_loss, 0.0);
  EXPECT_FALSE(r.poa.has_value());
}

TEST(SocialOptimum, WeakProtectionUnderinvests) {
  const WelfareReport r = SocialOptimum(GameSpec{Weak(), Uniform01{}, 0.1});
  EXPECT_NEAR(r.gamma_market, kWeakUniformMarket, 1e-8);
  EXPECT_EQ(r.gamma_social, 1.0);
  EXPECT_NEAR(r.w_social, kWeakUniformSocialWelfare, 1e-9);
  EXPECT_GT(r.efficiency_loss, 0.0);
  ASSERT_TRUE(r.poa.has_value());
  EXPECT_NEAR(*r.poa, r.w_social / r.w_market, 1e-12);
  EXPECT_TRUE(r.welfare_theorem_holds);
}

TEST(SocialOptimum, NoExternalityMatchesMarketCorner) {
  const WelfareReport r =
      SocialOptimum(GameSpec{Isolated(0.5), Homogeneous{1.0}, 0.2});
  EXPECT_EQ(r.gamma_social, 1.0);
  EXPECT_EQ(r.gamma_market, 1.0);
  EXPECT_NEAR(r.efficiency_loss, 0.0, 1e-12);
}

TEST(SocialOptimum, SmallestStableSelectsTheTrap) {
  const GameSpec spec{Weak(), Homogeneous{1.0}, 0.45};
  const WelfareReport largest = SocialOptimum(spec);
  const WelfareReport smallest =
      SocialOptimum(spec, 401, MarketSelection::kSmallestStable);
  EXPECT_GT(largest.gamma_market, 0.9);
  EXPECT_EQ(smallest.gamma_market, 0.0);
  EXPECT_GT(smallest.efficiency_loss, largest.efficiency_loss);
}

TEST(SocialOptimum, WelfareTheoremOnPriceGrid) {
  const std::vector<TypeDistribution> types = {Uniform01{}, PowerTypes{2.0},
                                               Homogeneous{1.0}};
  for (const auto& epi : {Weak(), Strong()}) {
    for (const auto& t : types) {
      for (int i = 1; i <= 12; ++i) {
        const WelfareReport r = SocialOptimum(GameSpec{epi, t, 0.05 * i});
        ASSERT_GE(r.gamma_social, r.gamma_market - 1e-6);
        ASSERT_GE(r.efficiency_loss, -1e-12);
        ASSERT_TRUE(r.welfare_theorem_holds);
      }
    }
  }
}

}  // namespace
}  // namespace secgame
