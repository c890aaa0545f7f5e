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

#include "secgame/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

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

void CheckUnit(double value, const char* name) {
  Require(value >= 0.0 && value <= 1.0,
          std::string(name) + " must lie in [0, 1]");
}

double Residual(const EpidemicModel& model, double gamma, double y) {
  return y - FixedPointMap(model, gamma, y);
}

}  // namespace

void Validate(const DegreeDistribution& dist) {
  std::visit(
      Overloaded{
          [](const PoissonDegree& d) {
            Require(std::isfinite(d.lambda) && d.lambda > 0.0,
                    "Poisson lambda must be positive");
          },
          [](const FixedDegree& d) {
            Require(d.d >= 0, "fixed degree must be >= 0");
          },
          [](const EmpiricalDegree& d) {
            Require(!d.pmf.empty(), "empirical degree pmf is empty");
            double total = 0.0;
            for (const auto& [k, prob] : d.pmf) {
              Require(k >= 0, "degrees must be >= 0");
              Require(prob >= 0.0 && prob <= 1.0,
                      "degree probabilities must lie in [0, 1]");
              total += prob;
            }
            Require(std::abs(total - 1.0) <= 1e-12,
                    "degree pmf must sum to 1");
          },
      },
      dist);
}

double Psi(const DegreeDistribution& dist, double s) {
  CheckUnit(s, "generating-function argument");
  return std::visit(
      Overloaded{
          [&](const PoissonDegree& d) { return std::exp(d.lambda * (s - 1.0)); },
          [&](const FixedDegree& d) { return std::pow(s, d.d); },
          [&](const EmpiricalDegree& d) {
            double sum = 0.0;
            for (const auto& [k, prob] : d.pmf) sum += prob * std::pow(s, k);
            return sum;
          },
      },
      dist);
}

double PsiPrime(const DegreeDistribution& dist, double s) {
  CheckUnit(s, "generating-function argument");
  return std::visit(
      Overloaded{
          [&](const PoissonDegree& d) {
            return d.lambda * std::exp(d.lambda * (s - 1.0));
          },
          [&](const FixedDegree& d) {
            return d.d == 0 ? 0.0 : d.d * std::pow(s, d.d - 1);
          },
          [&](const EmpiricalDegree& d) {
            double sum = 0.0;
            for (const auto& [k, prob] : d.pmf) {
              if (k > 0) sum += prob * k * std::pow(s, k - 1);
            }
            return sum;
          },
      },
      dist);
}

double MeanDegree(const DegreeDistribution& dist) { return PsiPrime(dist, 1.0); }

void Validate(const EpidemicModel& model) {
  CheckUnit(model.p, "p");
  CheckUnit(model.q, "q");
  CheckUnit(model.q_plus, "q_plus");
  Require(model.q <= model.q_plus, "q must not exceed q_plus");
  Validate(model.degree);
}

double FixedPointMap(const EpidemicModel& model, double gamma, double y) {
  return 1.0 - gamma * Psi(model.degree, 1.0 - model.q * y) -
         (1.0 - gamma) * (1.0 - model.p) *
             Psi(model.degree, 1.0 - model.q_plus * y);
}

FixedPointResult FixedPointY(const EpidemicModel& model, double gamma,
                             const FixedPointOptions& options) {
  Validate(model);
  CheckUnit(gamma, "gamma");
  Require(options.tol > 0.0, "fixed-point tolerance must be positive");

  FixedPointResult out;
  if ((1.0 - gamma) * model.p == 0.0) return out;

  // G is non-decreasing in y and G(1) <= 1, so iterates from 1 decrease
  // monotonically to the largest fixed point.
  double y = 1.0;
  double prev_step = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (out.iterations < options.max_iter) {
    const double next = FixedPointMap(model, gamma, y);
    ++out.iterations;
    const double step = std::abs(y - next);
    y = next;
    if (step <= options.tol) {
      converged = true;
      break;
    }
    if (step > options.stall_ratio * prev_step) break;
    prev_step = step;
  }

  // y - G(y) is convex with a single sign change; certify that the root is
  // within a few tolerances below the iterate, else bisect.
  const double probe = y - 10.0 * options.tol;
  const bool certified =
      converged && (probe <= 0.0 || Residual(model, gamma, probe) < 0.0);
  if (!certified) {
    double hi = Residual(model, gamma, y) >= 0.0 ? y : 1.0;
    double lo = 0.0;
    const double width = std::min(options.tol, 1e-14);
    for (int i = 0; i < 200 && hi - lo > width; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (Residual(model, gamma, mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++out.iterations;
    }
    y = hi;
    out.used_bisection = true;
  }
  out.y = std::clamp(y, 0.0, 1.0);
  out.residual = std::abs(Residual(model, gamma, out.y));
  if (!(out.residual <= std::max(100.0 * options.tol, 1e-10))) {
    throw NumericalError("fixed point did not converge", out.y, out.residual);
  }
  return out;
}

BreachProbabilities BreachProbs(const EpidemicModel& model, double gamma,
                                const FixedPointOptions& options) {
  const double y = FixedPointY(model, gamma, options).y;
  BreachProbabilities out;
  out.y = y;
  out.p1 = 1.0 - Psi(model.degree, 1.0 - model.q * y);
  out.p0 = 1.0 - (1.0 - model.p) * Psi(model.degree, 1.0 - model.q_plus * y);
  return out;
}

double Incentive(const EpidemicModel& model, double gamma,
                 const FixedPointOptions& options) {
  const BreachProbabilities b = BreachProbs(model, gamma, options);
  return b.p0 - b.p1;
}

double PublicExternality(const EpidemicModel& model, double gamma,
                         const FixedPointOptions& options) {
  return BreachProbs(model, 0.0, options).p0 -
         BreachProbs(model, gamma, options).p0;
}

double PrivateExternality(const EpidemicModel& model, double gamma,
                          const FixedPointOptions& options) {
  return BreachProbs(model, 0.0, options).p0 -
         BreachProbs(model, gamma, options).p1;
}

std::vector<CurvePoint> Curve(const EpidemicModel& model,
                              std::span<const double> gamma_grid,
                              const FixedPointOptions& options) {
  const double p0_at_zero = BreachProbs(model, 0.0, options).p0;
  std::vector<CurvePoint> out;
  out.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    const BreachProbabilities b = BreachProbs(model, gamma, options);
    out.push_back({gamma, b.y, b.p0, b.p1, b.p0 - b.p1, p0_at_zero - b.p0});
  }
  return out;
}

std::vector<double> DefaultGammaGrid() { return Linspace(0.0, 1.0, 201); }

MonotonicityReport CheckNetworkMonotone(const EpidemicModel& model,
                                        std::span<const double> gamma_grid,
                                        double tol) {
  Require(std::is_sorted(gamma_grid.begin(), gamma_grid.end()),
          "gamma grid must be sorted ascending");
  MonotonicityReport report;
  report.grid = {{"gamma", {gamma_grid.begin(), gamma_grid.end()}}};
  std::vector<double> h;
  h.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) h.push_back(Incentive(model, gamma));

  bool strict = true;
  bool flat = true;
  bool in_prefix = true;
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    const double diff = h[i + 1] - h[i];
    if (diff < -tol) {
      report.violations.push_back({std::nullopt, std::nullopt, std::nullopt,
                                   gamma_grid[i + 1], "h_decreasing", diff,
                                   false});
    }
    const bool increasing = diff > tol;
    if (in_prefix && increasing) {
      report.increasing_prefix_end = gamma_grid[i + 1];
    } else {
      in_prefix = false;
    }
    strict = strict && increasing;
    flat = flat && std::abs(diff) <= tol;
  }
  report.pass = report.violations.empty();
  report.strict = strict;
  report.flat = flat;
  return report;
}

}  // namespace secgame
