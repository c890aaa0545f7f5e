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


#include "secgame/numerics.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

TEST(GoldenSection, FindsQuadraticMinimum) {
  const Minimum m = GoldenSectionMinimize(
      [](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0, 1e-10);
  // A flat minimum only pins x to about sqrt(machine epsilon).
  EXPECT_NEAR(m.x, 0.3, 1e-7);
  EXPECT_NEAR(m.fx, 2.0, 1e-15);
}

TEST(GoldenSection, ReturnsLowerEndpointForIncreasingFunction) {
  const Minimum m =
      GoldenSectionMinimize([](double x) { return x; }, 1.0, 4.0, 1e-9);
  EXPECT_EQ(m.x, 1.0);
}

TEST(GoldenSection, ReturnsUpperEndpointForDecreasingFunction) {
  const Minimum m =
      GoldenSectionMinimize([](double x) { return -x; }, 1.0, 4.0, 1e-9);
  EXPECT_EQ(m.x, 4.0);
}

TEST(Bisect, FindsSquareRootOfTwo) {
  const double r =
      Bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-13);
}

TEST(Bisect, RejectsBracketWithoutSignChange) {
  EXPECT_THROW(Bisect([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-9),
               InputError);
}

TEST(AdaptiveSimpson, IntegratesPolynomialExactly) {
  const Quadrature q =
      AdaptiveSimpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(q.value, 4.0, 1e-12);
}

TEST(AdaptiveSimpson, IntegratesSquareRootSingularity) {
  const Quadrature q =
      AdaptiveSimpson([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(q.value, 2.0 / 3.0, 1e-9);
}

TEST(AdaptiveSimpson, ReportsExhaustedDepth) {
  EXPECT_THROW(AdaptiveSimpson([](double x) { return std::sin(1.0 / x); },
                               1e-9, 1.0, 1e-15, 8),
               NumericalError);
}

TEST(GridRange, ParsesAndIncludesUpperBound) {
  const auto values = GridRange::Parse("0:1:0.01").Values();
  ASSERT_EQ(values.size(), 101u);
  EXPECT_EQ(values.front(), 0.0);
  EXPECT_EQ(values.back(), 1.0);
}

TEST(GridRange, StopsBelowUpperBoundOffLattice) {
  const auto values = GridRange::Parse("0:1:0.3").Values();
  ASSERT_EQ(values.size(), 4u);
  EXPECT_NEAR(values.back(), 0.9, 1e-15);
}

TEST(GridRange, RejectsMalformedText) {
  EXPECT_THROW(GridRange::Parse("0:1"), InputError);
  EXPECT_THROW(GridRange::Parse("0:x:0.1"), InputError);
  EXPECT_THROW(GridRange::Parse("0:1:0"), InputError);
  EXPECT_THROW(GridRange::Parse("1:0:0.1"), InputError);
}

TEST(Linspace, HitsBothEnds) {
  const auto values = Linspace(0.0, 1.0, 201);
  ASSERT_EQ(values.size(), 201u);
  EXPECT_EQ(values.front(), 0.0);
  EXPECT_EQ(values.back(), 1.0);
  EXPECT_NEAR(values[100], 0.5, 1e-15);
}

}  // namespace
}  // namespace secgame
