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

// Security breach probability families p(x, v): the probability that a
// threat breaches an asset of vulnerability v after x has been spent on
// protection. Every family satisfies p(0, v) = v, 0 <= p <= v, and is
// non-increasing in x.

#ifndef SECGAME_BREACH_MODELS_HPP_
#define SECGAME_BREACH_MODELS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace secgame {

// Stand-in for log(0) in the log domain of the knapsack relaxation.
inline constexpr double kLogFloor = -700.0;

// The residual breach multiplier s(v) in [0, 1] of one protection.
class Effectiveness {
 public:
  static Effectiveness Constant(double s);
  // Piecewise-linear interpolation of `values` over the strictly increasing
  // `v_grid`; flat extrapolation outside the grid.
  static Effectiveness Tabulated(std::vector<double> v_grid,
                                 std::vector<double> values);
  // Arbitrary callable; range is checked on every evaluation.
  static Effectiveness Custom(std::function<double(double)> fn);

  double operator()(double v) const;

 private:
  explicit Effectiveness(std::function<double(double)> fn)
      : fn_(std::move(fn)) {}
  std::function<double(double)> fn_;
};

struct ProtectionItem {
  double cost = 1.0;
  Effectiveness effectiveness = Effectiveness::Constant(1.0);
};

// p(x, v) = v^(alpha x + 1).
struct GordonLoeb {
  double alpha = 1.0;
};

// p(x, v) = v / (a x + 1)^b.
struct Rational {
  double a = 1.0;
  double b = 1.0;
};

// Independent protections bought under a budget: p(x, v) = v * m(x, v)
// where m is the best achievable product of multipliers. With `relaxed`
// the 0/1 choice is relaxed to fractional purchases.
struct Portfolio {
  std::vector<ProtectionItem> items;
  bool relaxed = false;
};

using BreachModel = std::variant<GordonLoeb, Rational, Portfolio>;

// Throws InputError when parameters violate the family's invariants.
void Validate(const BreachModel& model);

double Eval(const BreachModel& model, double x, double v);

// dp/dx. Only defined for the analytic families; Portfolio throws
// UnsupportedOperation.
double EvalDx(const BreachModel& model, double x, double v);

struct KnapsackOptions {
  // Exhaustive subset search up to this many items.
  std::size_t exhaustive_limit = 20;
  // Above the limit: cost-discretized DP with grid step
  // `grid_fraction * budget`. Costs are rounded up, so the chosen subset
  // is always feasible but may be suboptimal by the rounding.
  double grid_fraction = 1e-3;
};

struct KnapsackResult {
  double value = 1.0;               // product of chosen multipliers
  std::vector<std::size_t> chosen;  // ascending item indices
  double cost = 0.0;                // total cost of `chosen`
};

// min prod_{j in J} s_j(v) s.t. sum_{j in J} cost_j <= budget. Ties go to
// the cheaper subset.
KnapsackResult KnapsackExact(std::span<const ProtectionItem> items,
                             double budget, double v,
                             const KnapsackOptions& options = {});

// The fractional relaxation exp(inf sum e_j log s_j(v)), e_j in [0, 1],
// solved greedily by decreasing -log s_j(v) / cost_j.
double KnapsackRelaxed(std::span<const ProtectionItem> items, double budget,
                       double v);

// One linear piece of the relaxed log-multiplier as a function of budget:
// on [start, end] it equals log_start - rate * (x - start).
struct RelaxedSegment {
  double start = 0.0;
  double end = 0.0;
  double rate = 0.0;
  double log_start = 0.0;
};

// Greedy pieces in budget order; rates are non-increasing, which is the
// log-convexity of the relaxed multiplier. Items with s_j(v) = 1 are
// skipped.
std::vector<RelaxedSegment> RelaxedProfile(
    std::span<const ProtectionItem> items, double v);

// All 2^k subsets of a small item list, indexed by bit mask.
struct SubsetTable {
  std::vector<double> cost;
  std::vector<double> product;
};
SubsetTable EnumerateSubsets(std::span<const ProtectionItem> items, double v);

}  // namespace secgame

#endif  // SECGAME_BREACH_MODELS_HPP_
