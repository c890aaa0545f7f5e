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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "secgame/errors.hpp"
#include "secgame/numerics.hpp"

namespace secgame {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Step of the one-sided differences used for endpoint derivatives.
constexpr double kEndpointStep = 1e-4;
// Below this, consecutive values count as equal in shape tests.
constexpr double kShapeTol = 1e-12;

void CheckUnit(double value, const char* name) {
  Require(value >= 0.0 && value <= 1.0,
          std::string(name) + " must lie in [0, 1]");
}

bool SinglePeaked(const std::vector<double>& values) {
  bool descending = false;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double diff = values[i + 1] - values[i];
    if (diff < -kShapeTol) descending = true;
    if (diff > kShapeTol && descending) return false;
  }
  return true;
}

// Boundary between w > c and w <= c inside [lo, hi]; `lo_positive` is the
// side of lo. Narrows to `tol`, then keeps going while |w - c| is above
// 1e-12 and the bracket can still shrink.
double RefineCrossing(const NetworkGame& game, double cost, double lo,
                      double hi, bool lo_positive, double tol) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double d = game.Willingness(mid) - cost;
    if (hi - lo <= tol && std::abs(d) <= 1e-12) return mid;
    if ((d > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void Validate(const TypeDistribution& types) {
  std::visit(
      Overloaded{
          [](const Uniform01&) {},
          [](const PowerTypes& t) {
            Require(std::isfinite(t.k) && t.k > 0.0,
                    "power type exponent must be positive");
          },
          [](const PiecewiseLinearCdf& t) {
            const auto& k = t.knots;
            Require(k.size() >= 2, "piecewise CDF needs at least two knots");
            Require(k.front().first == 0.0 && k.front().second == 0.0 &&
                        k.back().first == 1.0 && k.back().second == 1.0,
                    "piecewise CDF must run from (0, 0) to (1, 1)");
            for (std::size_t i = 1; i < k.size(); ++i) {
              Require(k[i].first > k[i - 1].first &&
                          k[i].second > k[i - 1].second,
                      "piecewise CDF knots must be strictly increasing");
            }
          },
          [](const Homogeneous& t) {
            Require(std::isfinite(t.ell) && t.ell > 0.0,
                    "homogeneous loss must be positive");
          },
      },
      types);
}

bool IsDegenerate(const TypeDistribution& types) {
  return std::holds_alternative<Homogeneous>(types);
}

double Cdf(const TypeDistribution& types, double ell) {
  return std::visit(
      Overloaded{
          [&](const Uniform01&) { return std::clamp(ell, 0.0, 1.0); },
          [&](const PowerTypes& t) {
            return std::pow(std::clamp(ell, 0.0, 1.0), t.k);
          },
          [&](const PiecewiseLinearCdf& t) {
            const auto& k = t.knots;
            if (ell <= 0.0) return 0.0;
            if (ell >= 1.0) return 1.0;
            std::size_t i = 1;
            while (k[i].first < ell) ++i;
            const double s = (ell - k[i - 1].first) / (k[i].first - k[i - 1].first);
            return k[i - 1].second + s * (k[i].second - k[i - 1].second);
          },
          [&](const Homogeneous& t) { return ell >= t.ell ? 1.0 : 0.0; },
      },
      types);
}

double Quantile(const TypeDistribution& types, double u) {
  CheckUnit(u, "quantile level");
  return std::visit(
      Overloaded{
          [&](const Uniform01&) { return u; },
          [&](const PowerTypes& t) { return std::pow(u, 1.0 / t.k); },
          [&](const PiecewiseLinearCdf& t) {
            const auto& k = t.knots;
            if (u <= 0.0) return 0.0;
            if (u >= 1.0) return 1.0;
            std::size_t i = 1;
            while (k[i].second < u) ++i;
            const double s =
                (u - k[i - 1].second) / (k[i].second - k[i - 1].second);
            return k[i - 1].first + s * (k[i].first - k[i - 1].first);
          },
          [&](const Homogeneous& t) { return t.ell; },
      },
      types);
}

double QuantileIntegral(const TypeDistribution& types, double a, double b) {
  Require(0.0 <= a && a <= b && b <= 1.0,
          "quantile integral needs 0 <= a <= b <= 1");
  return std::visit(
      Overloaded{
          [&](const Uniform01&) {
            return 0.5 * ((1.0 - a) * (1.0 - a) - (1.0 - b) * (1.0 - b));
          },
          [&](const PowerTypes& t) {
            const double e = 1.0 / t.k + 1.0;
            return (std::pow(1.0 - a, e) - std::pow(1.0 - b, e)) / e;
          },
          [&](const PiecewiseLinearCdf& t) {
            // Integrand is linear between the knot levels u = 1 - F_i.
            std::vector<double> cuts{a};
            for (auto it = t.knots.rbegin(); it != t.knots.rend(); ++it) {
              const double u = 1.0 - it->second;
              if (u > a && u < b) cuts.push_back(u);
            }
            cuts.push_back(b);
            const auto f = [&](double u) {
              return Quantile(types, std::clamp(1.0 - u, 0.0, 1.0));
            };
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
              total += AdaptiveSimpson(f, cuts[i], cuts[i + 1], 1e-13).value;
            }
            return total;
          },
          [&](const Homogeneous& t) { return t.ell * (b - a); },
      },
      types);
}

void Validate(const GameSpec& spec) {
  Validate(spec.epidemic);
  Validate(spec.types);
  Require(std::isfinite(spec.cost) && spec.cost > 0.0,
          "security cost must be positive");
}

NetworkGame::NetworkGame(GameSpec spec, FixedPointOptions options)
    : spec_(std::move(spec)), options_(options) {
  Validate(spec_);
  p0_at_zero_ = BreachProbs(spec_.epidemic, 0.0, options_).p0;
}

double NetworkGame::h(double gamma) const {
  return Incentive(spec_.epidemic, gamma, options_);
}

double NetworkGame::g(double gamma) const {
  return p0_at_zero_ - BreachProbs(spec_.epidemic, gamma, options_).p0;
}

double NetworkGame::Willingness(double gamma) const {
  CheckUnit(gamma, "gamma");
  return h(gamma) * Quantile(spec_.types, 1.0 - gamma);
}

double NetworkGame::Welfare(double gamma) const {
  CheckUnit(gamma, "gamma");
  const BreachProbabilities b = BreachProbs(spec_.epidemic, gamma, options_);
  const double g = p0_at_zero_ - b.p0;
  const double private_gain = p0_at_zero_ - b.p1;  // g + h
  return g * QuantileIntegral(spec_.types, gamma, 1.0) +
         private_gain * QuantileIntegral(spec_.types, 0.0, gamma) -
         spec_.cost * gamma;
}

double Willingness(const GameSpec& spec, double gamma) {
  return NetworkGame(spec).Willingness(gamma);
}

double Welfare(const GameSpec& spec, double gamma) {
  return NetworkGame(spec).Welfare(gamma);
}

const char* ToString(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kZero:
      return "zero";
    case EquilibriumKind::kInterior:
      return "interior";
    case EquilibriumKind::kFull:
      return "full";
  }
  return "unknown";
}

EquilibriumReport FindEquilibria(const GameSpec& spec, int grid_n, double tol) {
  Require(grid_n >= 50, "equilibrium grid needs at least 50 points");
  Require(tol > 0.0, "equilibrium tolerance must be positive");
  const NetworkGame game(spec);
  const double cost = spec.cost;

  const std::vector<double> gammas = Linspace(0.0, 1.0, grid_n);
  std::vector<double> w(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    w[i] = game.Willingness(gammas[i]);
  }

  EquilibriumReport report;
  report.w0 = w.front();
  report.w1 = w.back();
  report.single_peaked = SinglePeaked(w);
  report.critical_mass = CriticalMass(spec).positive;

  const auto peak = std::max_element(w.begin(), w.end());
  const auto ip = static_cast<std::size_t>(peak - w.begin());
  report.gamma_peak = gammas[ip];
  report.c_peak = *peak;
  if (ip > 0 && ip + 1 < gammas.size()) {
    const Minimum m = GoldenSectionMinimize(
        [&](double t) { return -game.Willingness(t); }, gammas[ip - 1],
        gammas[ip + 1], 1e-10);
    if (-m.fx > report.c_peak) {
      report.gamma_peak = m.x;
      report.c_peak = -m.fx;
    }
  }

  const bool zero_eq = report.w0 <= cost;
  const bool full_eq = report.w1 >= cost;
  if (zero_eq) report.equilibria.push_back({0.0, true, EquilibriumKind::kZero});

  // Interior crossings between "invests" (w > c) and "does not" (w <= c).
  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
    const bool left = w[i] > cost;
    const bool right = w[i + 1] > cost;
    if (left != right) {
      brackets.emplace_back(gammas[i], gammas[i + 1]);
      continue;
    }
    const double mid = 0.5 * (gammas[i] + gammas[i + 1]);
    if ((game.Willingness(mid) > cost) != left) {
      std::ostringstream msg;
      msg << "grid too coarse: w - c changes sign twice in [" << gammas[i]
          << ", " << gammas[i + 1] << "]";
      report.warnings.push_back(msg.str());
      brackets.emplace_back(gammas[i], mid);
      brackets.emplace_back(mid, gammas[i + 1]);
    }
  }
  for (const auto& [lo, hi] : brackets) {
    const bool lo_positive = game.Willingness(lo) > cost;
    const double root = RefineCrossing(game, cost, lo, hi, lo_positive, tol);
    if (zero_eq && root <= tol) continue;
    if (full_eq && root >= 1.0 - tol) continue;
    // Invest-side on the left means w falls through c: stable.
    report.equilibria.push_back({root, lo_positive, EquilibriumKind::kInterior});
  }
  if (full_eq) report.equilibria.push_back({1.0, true, EquilibriumKind::kFull});
  std::sort(report.equilibria.begin(), report.equilibria.end(),
            [](const Equilibrium& a, const Equilibrium& b) {
              return a.gamma_star < b.gamma_star;
            });
  return report;
}

CriticalMassReport CriticalMass(const GameSpec& spec) {
  const NetworkGame game(spec);
  CriticalMassReport out;
  const double w0 = game.Willingness(0.0);
  out.w_slope0 = (game.Willingness(kEndpointStep) - w0) / kEndpointStep;
  out.positive = out.w_slope0 > 0.0;
  out.w0_zero = std::abs(w0) <= kShapeTol;
  out.h_slope0 = (game.h(kEndpointStep) - game.h(0.0)) / kEndpointStep;
  out.density_near_one =
      IsDegenerate(spec.types)
          ? std::numeric_limits<double>::infinity()
          : (1.0 - Cdf(spec.types, 1.0 - kEndpointStep)) / kEndpointStep;
  std::vector<double> w;
  for (double gamma : DefaultGammaGrid()) w.push_back(game.Willingness(gamma));
  out.single_peaked = SinglePeaked(w);
  return out;
}

WelfareReport SocialOptimum(const GameSpec& spec, int grid_n,
                            MarketSelection selection) {
  Require(grid_n >= 200, "welfare grid needs at least 200 points");
  const NetworkGame game(spec);
  const EquilibriumReport eq = FindEquilibria(spec, grid_n);

  WelfareReport out;
  bool found = false;
  for (const auto& e : eq.equilibria) {
    if (!e.stable) continue;
    if (!found || (selection == MarketSelection::kLargestStable
                       ? e.gamma_star > out.gamma_market
                       : e.gamma_star < out.gamma_market)) {
      out.gamma_market = e.gamma_star;
      found = true;
    }
  }
  if (!found) {
    throw ConsistencyError("no stable equilibrium found");
  }
  out.w_market = game.Welfare(out.gamma_market);

  // Candidates: the grid, every equilibrium, and a golden-section polish
  // of the best grid cell.
  const std::vector<double> gammas = Linspace(0.0, 1.0, grid_n);
  std::vector<double> welfare(gammas.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    welfare[i] = game.Welfare(gammas[i]);
    if (welfare[i] > welfare[best]) best = i;
  }
  out.gamma_social = gammas[best];
  out.w_social = welfare[best];
  const auto consider = [&](double gamma, double value) {
    if (value > out.w_social ||
        (value == out.w_social && gamma < out.gamma_social)) {
      out.gamma_social = gamma;
      out.w_social = value;
    }
  };
  for (const auto& e : eq.equilibria) {
    consider(e.gamma_star, game.Welfare(e.gamma_star));
  }
  const double lo = gammas[best == 0 ? 0 : best - 1];
  const double hi = gammas[std::min(best + 1, gammas.size() - 1)];
  const Minimum m = GoldenSectionMinimize(
      [&](double t) { return -game.Welfare(t); }, lo, hi, 1e-12);
  consider(m.x, -m.fx);

  out.efficiency_loss = out.w_social - out.w_market;
  if (out.w_market > 1e-12) out.poa = out.w_social / out.w_market;
  out.welfare_theorem_holds = out.gamma_social >= out.gamma_market - 1e-6;
  return out;
}

}  // namespace secgame
