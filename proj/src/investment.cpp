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

#include "secgame/investment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "secgame/errors.hpp"
#include "secgame/numerics.hpp"

namespace secgame {
namespace {

constexpr double kMonotoneSlack = 1e-9;

struct Candidate {
  double x;
  double objective;
};

void Keep(Candidate& best, double x, double objective) {
  if (objective < best.objective ||
      (objective == best.objective && x < best.x)) {
    best = {x, objective};
  }
}

double Objective(const AgentProblem& problem, double x) {
  return problem.loss * Eval(problem.model, x, problem.vulnerability) + x;
}

Candidate SolveRational(const Rational& m, const AgentProblem& problem) {
  const double v = problem.vulnerability;
  Candidate best{0.0, problem.loss * v};
  if (v == 0.0) return best;
  // loss * a * b * v / (a x + 1)^(b + 1) = 1
  const double t = problem.loss * m.a * m.b * v;
  const double x = (std::pow(t, 1.0 / (m.b + 1.0)) - 1.0) / m.a;
  if (x > 0.0) Keep(best, x, Objective(problem, x));
  return best;
}

Candidate SolveExactPortfolio(const Portfolio& m, const AgentProblem& problem) {
  const double v = problem.vulnerability;
  const double loss = problem.loss;
  Candidate best{0.0, loss * v};
  const KnapsackOptions options;
  if (m.items.size() <= options.exhaustive_limit) {
    // p is a step function that only drops at subset-cost sums, so the
    // optimum is one of those sums with its best subset.
    const SubsetTable table = EnumerateSubsets(m.items, v);
    for (std::size_t mask = 1; mask < table.cost.size(); ++mask) {
      Keep(best, table.cost[mask],
           loss * v * table.product[mask] + table.cost[mask]);
    }
    return best;
  }
  const double cap = loss * v;
  const int steps = static_cast<int>(std::lround(1.0 / options.grid_fraction));
  for (int i = 1; i <= steps; ++i) {
    const double budget = cap * i / steps;
    const KnapsackResult r = KnapsackExact(m.items, budget, v, options);
    Keep(best, r.cost, loss * v * r.value + r.cost);
  }
  return best;
}

Candidate SolveRelaxedPortfolio(const Portfolio& m,
                                const AgentProblem& problem) {
  const double v = problem.vulnerability;
  const double loss = problem.loss;
  Candidate best{0.0, loss * v};
  if (v == 0.0) return best;
  for (const auto& seg : RelaxedProfile(m.items, v)) {
    Keep(best, seg.end, Objective(problem, seg.end));
    // Stationary point inside the piece: loss * rate * p(x) = 1.
    const double x =
        seg.start + (seg.log_start + std::log(loss * seg.rate * v)) / seg.rate;
    if (x > seg.start && x < seg.end) Keep(best, x, Objective(problem, x));
  }
  return best;
}

}  // namespace

double SolveGordonLoeb(double alpha, double loss, double v) {
  Require(alpha > 0.0, "alpha must be positive");
  Require(loss > 0.0, "loss must be positive");
  Require(v >= 0.0 && v <= 1.0, "vulnerability v must lie in [0, 1]");
  if (v <= 0.0 || v >= 1.0) return 0.0;
  const double log_v = std::log(v);
  const double phi =
      -std::log(-loss * alpha * log_v) / (alpha * log_v) - 1.0 / alpha;
  return std::max(0.0, phi);
}

InvestmentSolution Solve(const AgentProblem& problem) {
  Require(std::isfinite(problem.loss) && problem.loss > 0.0,
          "loss must be positive");
  Require(problem.vulnerability >= 0.0 && problem.vulnerability <= 1.0,
          "vulnerability v must lie in [0, 1]");
  Validate(problem.model);

  const double v = problem.vulnerability;
  InvestmentSolution out;
  Candidate best{0.0, problem.loss * v};
  if (const auto* gl = std::get_if<GordonLoeb>(&problem.model)) {
    const double x = SolveGordonLoeb(gl->alpha, problem.loss, v);
    if (x > 0.0) Keep(best, x, Objective(problem, x));
    out.singular = v == 1.0;
  } else if (const auto* rational = std::get_if<Rational>(&problem.model)) {
    best = SolveRational(*rational, problem);
  } else {
    const auto& portfolio = std::get<Portfolio>(problem.model);
    best = portfolio.relaxed ? SolveRelaxedPortfolio(portfolio, problem)
                             : SolveExactPortfolio(portfolio, problem);
  }
  out.x_star = best.x;
  out.objective = best.objective;
  out.at_boundary = best.x == 0.0;
  const double expected = problem.loss * v;
  out.fraction_of_expected_loss = expected > 0.0 ? best.x / expected : 0.0;
  return out;
}

OneOverEResult CheckOneOverE(const AgentProblem& problem) {
  const InvestmentSolution sol = Solve(problem);
  OneOverEResult out;
  out.ratio = sol.fraction_of_expected_loss;
  out.bound_holds = out.ratio <= 1.0 / std::numbers::e + 1e-9;
  return out;
}

MonotonicityReport CheckSubmodularConditions(const BreachModel& model,
                                             const GridSpec& grid,
                                             double tol) {
  Require(grid.nx >= 3 && grid.nv >= 3,
          "monotonicity grid needs at least 3 points per axis");
  Require(grid.x_lo >= 0.0 && grid.x_hi > grid.x_lo,
          "x range must satisfy 0 <= x_lo < x_hi");
  Require(grid.v_lo >= 0.0 && grid.v_hi <= 1.0 && grid.v_hi > grid.v_lo,
          "v range must satisfy 0 <= v_lo < v_hi <= 1");
  Validate(model);

  const std::vector<double> xs = Linspace(grid.x_lo, grid.x_hi, grid.nx);
  const std::vector<double> vs = Linspace(grid.v_lo, grid.v_hi, grid.nv);
  const double hx = 1e-4 * (grid.x_hi - grid.x_lo);
  const double hv = 1e-4 * (grid.v_hi - grid.v_lo);

  MonotonicityReport report;
  report.grid = {{"x", xs}, {"v", vs}};
  bool strict = true;
  bool flat = true;
  for (double x : xs) {
    for (double v : vs) {
      // Stencil offsets: central where the model domain allows it.
      const double x_minus = x - hx >= 0.0 ? x - hx : x;
      const double x_plus = x + hx;
      const double v_minus = v - hv >= 0.0 ? v - hv : v;
      const double v_plus = v + hv <= 1.0 ? v + hv : v;
      const bool one_sided = x_minus == x || v_minus == v || v_plus == v;
      if (one_sided) ++report.lower_confidence_cells;

      const auto p = [&](double xx, double vv) { return Eval(model, xx, vv); };
      const double dp_dx = (p(x_plus, v) - p(x_minus, v)) / (x_plus - x_minus);
      const double cross = (p(x_plus, v_plus) - p(x_plus, v_minus) -
                            p(x_minus, v_plus) + p(x_minus, v_minus)) /
                           ((x_plus - x_minus) * (v_plus - v_minus));

      if (dp_dx > tol) {
        report.violations.push_back(
            {x, v, std::nullopt, std::nullopt, "dp_dx_positive", dp_dx,
             one_sided});
      }
      if (cross > tol) {
        report.violations.push_back(
            {x, v, std::nullopt, std::nullopt, "d2p_dxdv_positive", cross,
             one_sided});
      }
      strict = strict && dp_dx < -tol && cross < -tol;
      flat = flat && std::abs(dp_dx) <= tol && std::abs(cross) <= tol;
    }
  }
  report.pass = report.violations.empty();
  report.strict = strict;
  report.flat = flat;
  return report;
}

MonotonicityReport CheckMonotoneInvestment(const BreachModel& model,
                                           std::span<const double> v_grid,
                                           std::span<const double> l_grid) {
  Require(!v_grid.empty() && !l_grid.empty(), "grids must be non-empty");
  Require(std::is_sorted(v_grid.begin(), v_grid.end()) &&
              std::is_sorted(l_grid.begin(), l_grid.end()),
          "grids must be sorted ascending");
  const std::size_t nv = v_grid.size();
  const std::size_t nl = l_grid.size();
  std::vector<double> x_star(nv * nl);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      x_star[i * nl + j] = Solve({model, l_grid[j], v_grid[i]}).x_star;
    }
  }

  MonotonicityReport report;
  report.grid = {{"v", {v_grid.begin(), v_grid.end()}},
                 {"l", {l_grid.begin(), l_grid.end()}}};
  bool strict = true;
  bool flat = true;
  const auto compare = [&](double lower, double upper, double v, double l,
                           const char* kind) {
    const double diff = upper - lower;
    if (diff < -kMonotoneSlack) {
      report.violations.push_back(
          {std::nullopt, v, l, std::nullopt, kind, diff, false});
    }
    strict = strict && diff > kMonotoneSlack;
    flat = flat && std::abs(diff) <= kMonotoneSlack;
  };
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      const double here = x_star[i * nl + j];
      if (i + 1 < nv) {
        compare(here, x_star[(i + 1) * nl + j], v_grid[i + 1], l_grid[j],
                "decreasing_in_v");
      }
      if (j + 1 < nl) {
        compare(here, x_star[i * nl + j + 1], v_grid[i], l_grid[j + 1],
                "decreasing_in_l");
      }
    }
  }
  report.pass = report.violations.empty();
  report.strict = strict;
  report.flat = flat;
  return report;
}

}  // namespace secgame
