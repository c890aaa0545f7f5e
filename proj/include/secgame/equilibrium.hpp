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

// Fulfilled-expectations equilibria of the binary security game.
//
// Agents differ in their loss size l, distributed with CDF F on [0, 1].
// Expecting a secure fraction gamma, an agent of type l invests iff
// l h(gamma) > c. At a fulfilled-expectations equilibrium the marginal
// investor's willingness to pay
//
//   w(gamma) = h(gamma) F^{-1}(1 - gamma)
//
// equals the price c. Welfare adds the public (g) and private (g + h)
// externalities over non-investors and investors:
//
//   W(gamma) = g I(gamma, 1) + (g + h) I(0, gamma) - c gamma,
//   I(a, b)  = integral_a^b F^{-1}(1 - u) du.

#ifndef SECGAME_EQUILIBRIUM_HPP_
#define SECGAME_EQUILIBRIUM_HPP_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "secgame/epidemic.hpp"

namespace secgame {

// F(l) = l on [0, 1].
struct Uniform01 {};

// F(l) = l^k on [0, 1].
struct PowerTypes {
  double k = 1.0;
};

// Linear interpolation through (l_i, F_i); first knot (0, 0), last (1, 1),
// both coordinates strictly increasing.
struct PiecewiseLinearCdf {
  std::vector<std::pair<double, double>> knots;
};

// Every agent has loss `ell`. Not a continuous distribution, but allowed:
// w(gamma) reduces to ell h(gamma).
struct Homogeneous {
  double ell = 1.0;
};

using TypeDistribution =
    std::variant<Uniform01, PowerTypes, PiecewiseLinearCdf, Homogeneous>;

void Validate(const TypeDistribution& types);
bool IsDegenerate(const TypeDistribution& types);
double Cdf(const TypeDistribution& types, double ell);
// F^{-1}(u).
double Quantile(const TypeDistribution& types, double u);
// integral_a^b F^{-1}(1 - u) du for 0 <= a <= b <= 1.
double QuantileIntegral(const TypeDistribution& types, double a, double b);

struct GameSpec {
  EpidemicModel epidemic;
  TypeDistribution types = Uniform01{};
  double cost = 0.1;  // price of the security option, > 0
};

void Validate(const GameSpec& spec);

// Evaluates the game's curves, caching p(0, 0). Immutable after
// construction.
class NetworkGame {
 public:
  explicit NetworkGame(GameSpec spec, FixedPointOptions options = {});

  const GameSpec& spec() const { return spec_; }
  double h(double gamma) const;
  double g(double gamma) const;
  double Willingness(double gamma) const;
  double Welfare(double gamma) const;

 private:
  GameSpec spec_;
  FixedPointOptions options_;
  double p0_at_zero_;
};

double Willingness(const GameSpec& spec, double gamma);
double Welfare(const GameSpec& spec, double gamma);

enum class EquilibriumKind { kZero, kInterior, kFull };
const char* ToString(EquilibriumKind kind);

struct Equilibrium {
  double gamma_star = 0.0;
  bool stable = true;
  EquilibriumKind kind = EquilibriumKind::kZero;
};

struct EquilibriumReport {
  std::vector<Equilibrium> equilibria;  // ascending gamma_star
  bool critical_mass = false;
  double gamma_peak = 0.0;
  double c_peak = 0.0;  // max w
  double w0 = 0.0;      // w(0)
  double w1 = 0.0;      // w(1)
  bool single_peaked = true;
  // Grid intervals where the sign test suggests roots the grid may not
  // separate.
  std::vector<std::string> warnings;
};

// Scans w - c on `grid_n` uniform points, refines sign changes by
// bisection to `tol`. gamma = 0 is an equilibrium when w(0) <= c, gamma = 1
// when w(1) >= c. Interior roots where w crosses c from above are stable.
EquilibriumReport FindEquilibria(const GameSpec& spec, int grid_n = 201,
                                 double tol = 1e-10);

struct CriticalMassReport {
  bool positive = false;    // forward difference of w at 0 is > 0
  double w_slope0 = 0.0;    // that forward difference
  bool w0_zero = false;     // condition (i): w(0) == 0
  double h_slope0 = 0.0;    // condition (ii): h'(0+)
  double density_near_one = 0.0;  // condition (iii): F'(1-), inf if atom
  bool single_peaked = true;
};

CriticalMassReport CriticalMass(const GameSpec& spec);

enum class MarketSelection { kLargestStable, kSmallestStable };

struct WelfareReport {
  double gamma_social = 0.0;
  double w_social = 0.0;
  double gamma_market = 0.0;
  double w_market = 0.0;
  double efficiency_loss = 0.0;
  std::optional<double> poa;  // set when w_market > 1e-12
  // gamma_social >= gamma_market - 1e-6.
  bool welfare_theorem_holds = true;
};

// Grid scan of W plus golden-section refinement around the best cell.
WelfareReport SocialOptimum(
    const GameSpec& spec, int grid_n = 401,
    MarketSelection selection = MarketSelection::kLargestStable);

}  // namespace secgame

#endif  // SECGAME_EQUILIBRIUM_HPP_
