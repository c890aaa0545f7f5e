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

// Optimal security investment of a single risk-neutral agent:
//
//   x* = argmin { loss * p(x, v) + x : x >= 0 }
//
// plus numerical checks of the sufficient conditions under which x* is
// non-decreasing in (v, loss).

#ifndef SECGAME_INVESTMENT_HPP_
#define SECGAME_INVESTMENT_HPP_

#include <span>

#include "secgame/breach_models.hpp"
#include "secgame/monotonicity.hpp"

namespace secgame {

struct AgentProblem {
  BreachModel model;
  double loss = 1.0;           // monetary loss on breach, > 0
  double vulnerability = 0.0;  // v in [0, 1]
};

struct InvestmentSolution {
  double x_star = 0.0;
  double objective = 0.0;  // loss * p(x*, v) + x*
  bool at_boundary = true;  // x* == 0
  double fraction_of_expected_loss = 0.0;  // x* / (loss v), 0 if loss v == 0
  // The closed form is singular at v == 1; x* = 0 is returned by convention.
  bool singular = false;
};

// Global minimizer of the expected cost; ties go to the smaller x.
InvestmentSolution Solve(const AgentProblem& problem);

// Closed-form optimum for p(x, v) = v^(alpha x + 1), clamped at 0.
// Returns 0 for v in {0, 1}.
double SolveGordonLoeb(double alpha, double loss, double v);

struct OneOverEResult {
  bool bound_holds = true;
  double ratio = 0.0;  // x* / (loss v)
};

// Compares the optimal spend with loss * v / e. Meaningful for
// non-increasing, log-convex p (GordonLoeb, relaxed Portfolio).
OneOverEResult CheckOneOverE(const AgentProblem& problem);

// Rectangle [x_lo, x_hi] x [v_lo, v_hi] sampled at nx * nv points.
struct GridSpec {
  double x_lo = 0.0;
  double x_hi = 5.0;
  int nx = 26;
  double v_lo = 0.05;
  double v_hi = 0.95;
  int nv = 19;
};

// Signs of dp/dx and d2p/dxdv by finite differences over the grid. A cell
// violates when either is > tol. Cells whose central stencil would leave
// x >= 0, v in [0, 1] use one-sided stencils and are flagged
// lower-confidence.
MonotonicityReport CheckSubmodularConditions(const BreachModel& model,
                                             const GridSpec& grid,
                                             double tol = 1e-7);

// Solves on the (v, loss) grid and checks x* is non-decreasing along each
// axis up to 1e-9. Grids must be sorted ascending.
MonotonicityReport CheckMonotoneInvestment(const BreachModel& model,
                                           std::span<const double> v_grid,
                                           std::span<const double> l_grid);

}  // namespace secgame

#endif  // SECGAME_INVESTMENT_HPP_
