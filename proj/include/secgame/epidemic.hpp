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

// Epidemic risk on a sparse random graph under the local mean-field
// approximation.
//
// Agents are either secure (S, a fraction gamma) or not (N). An N agent
// suffers a direct loss with probability p; a lossy agent contaminates
// each neighbour with probability q (S neighbour) or q_plus (N neighbour).
// With Psi the degree generating function, the loss probability y of a
// random agent solves
//
//   y = 1 - gamma Psi(1 - q y) - (1 - gamma)(1 - p) Psi(1 - q_plus y)
//
// and the breach probabilities of S and N agents are
//
//   p1 = 1 - Psi(1 - q y),   p0 = 1 - (1 - p) Psi(1 - q_plus y).

#ifndef SECGAME_EPIDEMIC_HPP_
#define SECGAME_EPIDEMIC_HPP_

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "secgame/monotonicity.hpp"

namespace secgame {

// Erdos-Renyi limit: Psi(s) = exp(lambda (s - 1)).
struct PoissonDegree {
  double lambda = 1.0;
};

// Psi(s) = s^d.
struct FixedDegree {
  int d = 0;
};

// Psi(s) = sum_k P(D = k) s^k over the listed degrees.
struct EmpiricalDegree {
  std::vector<std::pair<int, double>> pmf;  // (degree, probability)
};

using DegreeDistribution =
    std::variant<PoissonDegree, FixedDegree, EmpiricalDegree>;

void Validate(const DegreeDistribution& dist);
double Psi(const DegreeDistribution& dist, double s);
double PsiPrime(const DegreeDistribution& dist, double s);
double MeanDegree(const DegreeDistribution& dist);

struct EpidemicModel {
  double p = 0.0;       // direct-loss probability of N agents
  double q = 0.0;       // contagion probability onto S agents
  double q_plus = 0.0;  // contagion probability onto N agents, >= q
  DegreeDistribution degree = PoissonDegree{};
};

void Validate(const EpidemicModel& model);

struct FixedPointOptions {
  double tol = 1e-12;
  long max_iter = 1'000'000;
  // Switch to bisection once successive steps shrink by a factor above
  // this (slow, near-critical contraction).
  double stall_ratio = 0.999;
};

struct FixedPointResult {
  double y = 0.0;
  long iterations = 0;
  double residual = 0.0;  // |y - G(y)|
  bool used_bisection = false;
};

// Right-hand side G(y) of the fixed-point equation.
double FixedPointMap(const EpidemicModel& model, double gamma, double y);

// Largest (and, with direct losses present, unique) fixed point in [0, 1],
// by monotone iteration from y = 1 with a bisection fallback. Without
// direct-loss seeds ((1 - gamma) p == 0) nothing is ever lost and y = 0.
// Throws NumericalError on non-convergence.
FixedPointResult FixedPointY(const EpidemicModel& model, double gamma,
                             const FixedPointOptions& options = {});

struct BreachProbabilities {
  double p0 = 0.0;  // breach probability of an N agent, p(0, gamma)
  double p1 = 0.0;  // breach probability of an S agent, p(1, gamma)
  double y = 0.0;
};

BreachProbabilities BreachProbs(const EpidemicModel& model, double gamma,
                                const FixedPointOptions& options = {});

// h(gamma) = p(0, gamma) - p(1, gamma): what protection buys.
double Incentive(const EpidemicModel& model, double gamma,
                 const FixedPointOptions& options = {});

// g(gamma) = p(0, 0) - p(0, gamma): gain felt by non-investors.
double PublicExternality(const EpidemicModel& model, double gamma,
                         const FixedPointOptions& options = {});

// g + h = p(0, 0) - p(1, gamma): gain felt by investors.
double PrivateExternality(const EpidemicModel& model, double gamma,
                          const FixedPointOptions& options = {});

struct CurvePoint {
  double gamma;
  double y;
  double p0;
  double p1;
  double h;
  double g;
};

std::vector<CurvePoint> Curve(const EpidemicModel& model,
                              std::span<const double> gamma_grid,
                              const FixedPointOptions& options = {});

// 201 uniform points on [0, 1].
std::vector<double> DefaultGammaGrid();

// Tests whether h increases along the grid. Decreases beyond `tol` are
// violations; steps within `tol` count as flat.
MonotonicityReport CheckNetworkMonotone(const EpidemicModel& model,
                                        std::span<const double> gamma_grid,
                                        double tol = 1e-10);

}  // namespace secgame

#endif  // SECGAME_EPIDEMIC_HPP_
