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

#include "secgame/breach_models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckDomain(double x, double v) {
  Require(std::isfinite(x) && x >= 0.0, "investment x must be >= 0");
  Require(v >= 0.0 && v <= 1.0, "vulnerability v must lie in [0, 1]");
}

double CheckedMultiplier(double s) {
  Require(s >= 0.0 && s <= 1.0,
          "protection multiplier s(v) outside [0, 1]: " + std::to_string(s));
  return s;
}

double ClampedLog(double s) {
  return s > 0.0 ? std::max(std::log(s), kLogFloor) : kLogFloor;
}

void CheckItems(std::span<const ProtectionItem> items) {
  for (const auto& item : items) {
    Require(std::isfinite(item.cost) && item.cost > 0.0,
            "protection cost must be positive");
  }
}

// Cost-grid DP for long item lists.
KnapsackResult KnapsackDp(std::span<const ProtectionItem> items, double budget,
                          double v, double grid_fraction) {
  KnapsackResult result;
  if (budget <= 0.0) return result;
  const double unit = grid_fraction * budget;
  const auto capacity = static_cast<std::size_t>(
      std::floor(budget / unit + 1e-9));
  const std::size_t k = items.size();
  std::vector<std::size_t> units(k);
  std::vector<double> gain(k);
  for (std::size_t j = 0; j < k; ++j) {
    units[j] = static_cast<std::size_t>(
        std::ceil(items[j].cost / unit - 1e-9));
    gain[j] = -ClampedLog(CheckedMultiplier(items[j].effectiveness(v)));
  }
  std::vector<double> best(capacity + 1, 0.0);
  std::vector<std::vector<bool>> take(k, std::vector<bool>(capacity + 1));
  for (std::size_t j = 0; j < k; ++j) {
    if (units[j] > capacity || gain[j] <= 0.0) continue;
    for (std::size_t c = capacity; c + 1 > units[j]; --c) {
      const double candidate = best[c - units[j]] + gain[j];
      if (candidate > best[c]) {
        best[c] = candidate;
        take[j][c] = true;
      }
    }
  }
  std::size_t c = capacity;
  for (std::size_t j = k; j-- > 0;) {
    if (take[j][c]) {
      result.chosen.push_back(j);
      c -= units[j];
    }
  }
  std::reverse(result.chosen.begin(), result.chosen.end());
  for (std::size_t j : result.chosen) {
    result.value *= items[j].effectiveness(v);
    result.cost += items[j].cost;
  }
  return result;
}

}  // namespace

Effectiveness Effectiveness::Constant(double s) {
  CheckedMultiplier(s);
  return Effectiveness([s](double) { return s; });
}

Effectiveness Effectiveness::Tabulated(std::vector<double> v_grid,
                                       std::vector<double> values) {
  Require(!v_grid.empty() && v_grid.size() == values.size(),
          "tabulated effectiveness needs matching, non-empty grids");
  for (std::size_t i = 1; i < v_grid.size(); ++i) {
    Require(v_grid[i] > v_grid[i - 1],
            "tabulated effectiveness v-grid must be strictly increasing");
  }
  for (double s : values) CheckedMultiplier(s);
  return Effectiveness([grid = std::move(v_grid),
                        vals = std::move(values)](double v) {
    if (v <= grid.front()) return vals.front();
    if (v >= grid.back()) return vals.back();
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(grid.begin(), grid.end(), v) - grid.begin());
    const std::size_t lo = hi - 1;
    const double t = (v - grid[lo]) / (grid[hi] - grid[lo]);
    return vals[lo] + t * (vals[hi] - vals[lo]);
  });
}

Effectiveness Effectiveness::Custom(std::function<double(double)> fn) {
  Require(static_cast<bool>(fn), "empty effectiveness function");
  return Effectiveness(std::move(fn));
}

double Effectiveness::operator()(double v) const {
  return CheckedMultiplier(fn_(v));
}

void Validate(const BreachModel& model) {
  std::visit(Overloaded{
                 [](const GordonLoeb& m) {
                   Require(std::isfinite(m.alpha) && m.alpha > 0.0,
                           "GordonLoeb alpha must be positive");
                 },
                 [](const Rational& m) {
                   Require(std::isfinite(m.a) && m.a > 0.0 &&
                               std::isfinite(m.b) && m.b > 0.0,
                           "Rational a and b must be positive");
                 },
                 [](const Portfolio& m) { CheckItems(m.items); },
             },
             model);
}

double Eval(const BreachModel& model, double x, double v) {
  CheckDomain(x, v);
  Validate(model);
  return std::visit(
      Overloaded{
          [&](const GordonLoeb& m) {
            if (x == 0.0) return v;
            return std::pow(v, m.alpha * x + 1.0);
          },
          [&](const Rational& m) { return v / std::pow(m.a * x + 1.0, m.b); },
          [&](const Portfolio& m) {
            const double multiplier =
                m.relaxed ? KnapsackRelaxed(m.items, x, v)
                          : KnapsackExact(m.items, x, v).value;
            return v * multiplier;
          },
      },
      model);
}

double EvalDx(const BreachModel& model, double x, double v) {
  CheckDomain(x, v);
  Validate(model);
  return std::visit(
      Overloaded{
          [&](const GordonLoeb& m) {
            // v^(ax+1) log v -> 0 as v -> 0.
            if (v == 0.0) return 0.0;
            return m.alpha * std::log(v) * std::pow(v, m.alpha * x + 1.0);
          },
          [&](const Rational& m) {
            return -v * m.a * m.b / std::pow(m.a * x + 1.0, m.b + 1.0);
          },
          [](const Portfolio&) -> double {
            throw UnsupportedOperation(
                "portfolio breach probability has no analytic derivative");
          },
      },
      model);
}

SubsetTable EnumerateSubsets(std::span<const ProtectionItem> items, double v) {
  const std::size_t k = items.size();
  Require(k < 31, "too many items for exhaustive enumeration");
  std::vector<double> s(k);
  for (std::size_t j = 0; j < k; ++j) {
    s[j] = CheckedMultiplier(items[j].effectiveness(v));
  }
  const std::size_t count = std::size_t{1} << k;
  SubsetTable table{std::vector<double>(count, 0.0),
                    std::vector<double>(count, 1.0)};
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    table.cost[mask] = table.cost[rest] + items[low].cost;
    table.product[mask] = table.product[rest] * s[low];
  }
  return table;
}

KnapsackResult KnapsackExact(std::span<const ProtectionItem> items,
                             double budget, double v,
                             const KnapsackOptions& options) {
  Require(std::isfinite(budget) && budget >= 0.0, "budget must be >= 0");
  Require(v >= 0.0 && v <= 1.0, "vulnerability v must lie in [0, 1]");
  CheckItems(items);
  if (items.size() > options.exhaustive_limit) {
    Require(options.grid_fraction > 0.0 && options.grid_fraction <= 1.0,
            "knapsack grid fraction must lie in (0, 1]");
    return KnapsackDp(items, budget, v, options.grid_fraction);
  }
  const SubsetTable table = EnumerateSubsets(items, v);
  std::size_t best = 0;
  for (std::size_t mask = 1; mask < table.cost.size(); ++mask) {
    if (table.cost[mask] > budget) continue;
    const double p = table.product[mask];
    if (p < table.product[best] ||
        (p == table.product[best] && table.cost[mask] < table.cost[best])) {
      best = mask;
    }
  }
  KnapsackResult result{table.product[best], {}, table.cost[best]};
  for (std::size_t j = 0; j < items.size(); ++j) {
    if (best >> j & 1U) result.chosen.push_back(j);
  }
  return result;
}

std::vector<RelaxedSegment> RelaxedProfile(
    std::span<const ProtectionItem> items, double v) {
  Require(v >= 0.0 && v <= 1.0, "vulnerability v must lie in [0, 1]");
  CheckItems(items);
  struct Entry {
    double cost;
    double gain;
    double rate;
  };
  std::vector<Entry> entries;
  for (const auto& item : items) {
    const double gain = -ClampedLog(item.effectiveness(v));
    if (gain <= 0.0) continue;
    entries.push_back({item.cost, gain, gain / item.cost});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& l, const Entry& r) { return l.rate > r.rate; });
  std::vector<RelaxedSegment> segments;
  double start = 0.0;
  double log_start = 0.0;
  for (const auto& e : entries) {
    segments.push_back({start, start + e.cost, e.rate, log_start});
    start += e.cost;
    log_start -= e.gain;
  }
  return segments;
}

double KnapsackRelaxed(std::span<const ProtectionItem> items, double budget,
                       double v) {
  Require(std::isfinite(budget) && budget >= 0.0, "budget must be >= 0");
  double log_value = 0.0;
  for (const auto& seg : RelaxedProfile(items, v)) {
    if (budget >= seg.end) {
      log_value = seg.log_start - seg.rate * (seg.end - seg.start);
      continue;
    }
    if (budget > seg.start) {
      log_value = seg.log_start - seg.rate * (budget - seg.start);
    }
    break;
  }
  return std::exp(log_value);
}

}  // namespace secgame
