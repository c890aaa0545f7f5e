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


// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "secgame/breach_models.hpp"
#include "secgame/epidemic.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/investment.hpp"
#include "secgame/numerics.hpp"
#include "secgame/simulate.hpp"

namespace {

using namespace secgame;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EpidemicModel Strong() { return {0.01, 0.0, 0.5, PoissonDegree{10.0}}; }
EpidemicModel Weak() { return {0.01, 0.1, 0.5, PoissonDegree{10.0}}; }

EpidemicModel RandomModel(oracle::Gen& gen) {
  const double q_plus = gen.Uniform(0.0, 1.0);
  return {gen.Uniform(0.0, 1.0), gen.Uniform(0.0, q_plus), q_plus,
          PoissonDegree{gen.Uniform(1.0, 20.0)}};
}

Verdict ClosedFormVsOracle() {
  const auto start = Clock::now();
  Verdict verdict;
  double worst = 0.0;
  for (const double alpha : {0.5, 1.0, 1.5}) {
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double v = 0.01 + 0.98 * i / 49.0;
        const double loss = 0.1 + 99.9 * j / 49.0;
        const auto lv = static_cast<oracle::Real>(v);
        const auto want = static_cast<double>(oracle::GoldenMin(
            [&](oracle::Real x) {
              return loss * std::pow(lv, alpha * x + 1.0L) + x;
            },
            0.0L, loss * lv));
        worst = std::max(worst, std::abs(SolveGordonLoeb(alpha, loss, v) - want));
      }
    }
  }
  const double seconds = Seconds(start);
  if (worst > 1e-6) verdict.Fail(Fmt("max |error| %.3g > 1e-6", worst));
  if (seconds >= 5.0) verdict.Fail(Fmt("took %.2f s", seconds));
  if (verdict.pass) {
    verdict.detail = Fmt("max |error| %.3g over 7500 points, %.2f s", worst,
                         seconds);
  }
  return verdict;
}

Verdict InvestmentShape() {
  Verdict verdict;
  const auto v_grid = GridRange{0.0, 1.0, 0.01}.Values();
  std::string patterns;
  for (const double alpha : {0.5, 1.0, 1.5}) {
    std::string pattern;
    for (const double v : v_grid) {
      const char c = Solve({GordonLoeb{alpha}, 10.0, v}).x_star > 0 ? '+' : '0';
      if (pattern.empty() || pattern.back() != c) pattern += c;
    }
    if (pattern != "0+0") {
      verdict.Fail("alpha " + Fmt("%g", alpha) + " gives pattern " + pattern);
    }
    patterns += (patterns.empty() ? "" : " ") + pattern;
  }
  if (verdict.pass) verdict.detail = "patterns " + patterns;
  return verdict;
}

Verdict OneOverERule() {
  const auto start = Clock::now();
  Verdict verdict;
  oracle::Gen gen(101);
  const double bound = std::exp(-1.0) + 1e-9;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const OneOverEResult r =
        CheckOneOverE({GordonLoeb{gen.LogUniform(0.01, 10.0)},
                       gen.LogUniform(0.1, 1000.0), gen.Uniform(0.0, 1.0)});
    worst = std::max(worst, r.ratio);
    if (!r.bound_holds || r.ratio > bound) verdict.Fail("Gordon-Loeb draw fails");
  }
  for (int trial = 0; trial < 1000; ++trial) {
    Portfolio model;
    model.relaxed = true;
    const int k = gen.Int(1, 8);
    for (int i = 0; i < k; ++i) {
      model.items.push_back({gen.Uniform(0.05, 5.0),
                             Effectiveness::Constant(gen.Uniform(0.0, 1.0))});
    }
    const OneOverEResult r = CheckOneOverE(
        {model, gen.LogUniform(0.1, 100.0), gen.Uniform(0.0, 1.0)});
    worst = std::max(worst, r.ratio);
    if (!r.bound_holds || r.ratio > bound) verdict.Fail("portfolio draw fails");
  }
  const double seconds = Seconds(start);
  if (seconds >= 30.0) verdict.Fail(Fmt("took %.2f s", seconds));
  if (verdict.pass) {
    verdict.detail = Fmt("max ratio %.6f over 11000 draws, %.2f s", worst,
                         seconds);
  }
  return verdict;
}

Verdict KnapsackExactness() {
  Verdict verdict;
  oracle::Gen gen(102);
  for (int trial = 0; trial < 500 && verdict.pass; ++trial) {
    const int k = gen.Int(0, 12);
    std::vector<double> cost, s;
    std::vector<ProtectionItem> items;
    for (int i = 0; i < k; ++i) {
      cost.push_back(gen.Uniform(0.1, 3.0));
      s.push_back(gen.Uniform(0.01, 1.0));
      items.push_back({cost.back(), Effectiveness::Constant(s.back())});
    }
    const double total = std::accumulate(cost.begin(), cost.end(), 0.0);
    const double budget = gen.Uniform(0.0, total + 0.5);
    const double exact = KnapsackExact(items, budget, 0.5).value;
    const auto brute = static_cast<double>(oracle::BestSubset(cost, s, budget));
    if (std::abs(exact - brute) > 1e-12) {
      verdict.Fail(Fmt("instance %g: exact %.17g vs enumeration %.17g", trial,
                       exact, brute));
    }
    if (KnapsackRelaxed(items, budget, 0.5) > exact * (1.0 + 1e-12)) {
      verdict.Fail(Fmt("instance %g: relaxed above exact", trial));
    }
    std::vector<double> budgets;
    for (int i = 0; i < 20; ++i) budgets.push_back(gen.Uniform(0.0, total + 0.5));
    for (const double b1 : budgets) {
      for (const double b2 : budgets) {
        const double mid = std::log(KnapsackRelaxed(items, 0.5 * (b1 + b2), 0.5));
        const double chord = 0.5 * (std::log(KnapsackRelaxed(items, b1, 0.5)) +
                                    std::log(KnapsackRelaxed(items, b2, 0.5)));
        if (mid > chord + 1e-9) {
          verdict.Fail(Fmt("instance %g: midpoint convexity fails", trial));
        }
      }
    }
  }
  if (verdict.pass) verdict.detail = "500 instances, 20 budgets each";
  return verdict;
}

Verdict FixedPointVsOracle() {
  Verdict verdict;
  oracle::Gen gen(103);
  const auto grid = DefaultGammaGrid();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const EpidemicModel m = RandomModel(gen);
    const double gamma = gen.Uniform(0.0, 1.0);
    const auto& poisson = std::get<PoissonDegree>(m.degree);
    const auto want = static_cast<double>(oracle::LossProbability(
        oracle::PoissonContagion(poisson.lambda, m.p, m.q, m.q_plus), gamma));
    const double error = std::abs(FixedPointY(m, gamma).y - want);
    worst = std::max(worst, error);
    if (error > 1e-10) verdict.Fail(Fmt("draw %g off by %.3g", trial, error));
    double previous = 2.0;
    for (const auto& pt : Curve(m, grid)) {
      if (pt.y > previous) {
        verdict.Fail(Fmt("draw %g: y rises at gamma %g", trial, pt.gamma));
      }
      previous = pt.y;
    }
  }
  if (verdict.pass) verdict.detail = Fmt("max |error| %.3g over 100 draws", worst);
  return verdict;
}

Verdict IncentiveShapes() {
  Verdict verdict;
  const auto grid = DefaultGammaGrid();
  const auto strong = Curve(Strong(), grid);
  for (std::size_t i = 1; i < strong.size(); ++i) {
    if (strong[i].h > strong[i - 1].h) {
      verdict.Fail(Fmt("strong: h rises at gamma %g", strong[i].gamma));
    }
  }
  const auto weak = Curve(Weak(), grid);
  int changes = 0;
  std::size_t prefix = 0;
  while (prefix + 1 < weak.size() && weak[prefix + 1].h > weak[prefix].h) ++prefix;
  for (std::size_t i = 2; i < weak.size(); ++i) {
    const double d1 = weak[i - 1].h - weak[i - 2].h;
    const double d2 = weak[i].h - weak[i - 1].h;
    changes += (d1 > 0) != (d2 > 0);
  }
  if (changes != 1) verdict.Fail(Fmt("weak: %g sign changes", changes));
  if (prefix == 0) verdict.Fail("weak: empty increasing prefix");
  if (verdict.pass) {
    verdict.detail = Fmt("strong non-increasing; weak peaks at gamma %g",
                         weak[prefix].gamma);
  }
  return verdict;
}

Verdict MeanFieldVsMonteCarlo() {
  const auto start = Clock::now();
  Verdict verdict;
  double worst_gap = 0.0;
  for (const double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    SimConfig config;
    config.n = 100000;
    config.graph = ErdosRenyiGraph{10.0};
    config.epidemic = Weak();
    config.gamma = gamma;
    config.replications = 20;
    config.seed = 20260101;
    const SimResult r = Run(config);
    const BreachProbabilities mf = BreachProbs(Weak(), gamma);
    // Estimators without any node in the state are missing by design.
    if (r.p0_hat) {
      const double gap = std::abs(*r.p0_hat - mf.p0);
      worst_gap = std::max(worst_gap, gap);
      if (gap > std::max(3 * r.stderr0, 0.01)) {
        verdict.Fail(Fmt("gamma %g: |p0_hat - p0| = %.4g", gamma, gap));
      }
    }
    if (r.p1_hat) {
      const double gap = std::abs(*r.p1_hat - mf.p1);
      worst_gap = std::max(worst_gap, gap);
      if (gap > std::max(3 * r.stderr1, 0.01)) {
        verdict.Fail(Fmt("gamma %g: |p1_hat - p1| = %.4g", gamma, gap));
      }
    }
  }
  const double seconds = Seconds(start);
  if (seconds >= 120.0) verdict.Fail(Fmt("took %.1f s", seconds));
  if (verdict.pass) {
    verdict.detail = Fmt("max gap %.4g, %.1f s", worst_gap, seconds);
  }
  return verdict;
}

int Interior(const EquilibriumReport& r) {
  return static_cast<int>(std::count_if(
      r.equilibria.begin(), r.equilibria.end(),
      [](const Equilibrium& e) { return e.kind == EquilibriumKind::kInterior; }));
}

Verdict CriticalMassStructure() {
  Verdict verdict;
  const GameSpec weak{Weak(), Homogeneous{1.0}, 0.1};
  if (!CriticalMass(weak).positive) verdict.Fail("weak: no critical mass");
  double lo = 2.0, hi = -1.0;
  for (int i = 1; i <= 200; ++i) {
    GameSpec spec = weak;
    spec.cost = 0.005 * i;
    const EquilibriumReport r = FindEquilibria(spec);
    const auto& eq = r.equilibria;
    if (eq.size() == 3 && eq[0].gamma_star == 0.0 &&
        eq[0].kind == EquilibriumKind::kZero && eq[0].stable &&
        eq[1].kind == EquilibriumKind::kInterior && !eq[1].stable &&
        eq[2].kind == EquilibriumKind::kInterior && eq[2].stable) {
      lo = std::min(lo, spec.cost);
      hi = std::max(hi, spec.cost);
    }
  }
  if (hi < lo) verdict.Fail("weak: no price with three equilibria");
  for (const TypeDistribution& types :
       {TypeDistribution{Homogeneous{1.0}}, TypeDistribution{Uniform01{}}}) {
    const GameSpec strong{Strong(), types, 0.1};
    if (CriticalMass(strong).positive) verdict.Fail("strong: critical mass");
    for (int i = 1; i <= 200; ++i) {
      GameSpec spec = strong;
      spec.cost = 0.005 * i;
      if (Interior(FindEquilibria(spec)) > 1) {
        verdict.Fail(Fmt("strong: several interior equilibria at c %g",
                         spec.cost));
      }
    }
  }
  if (verdict.pass) {
    verdict.detail = Fmt("three equilibria for c in [%g, %g]", lo, hi);
  }
  return verdict;
}

Verdict WelfareTheorem() {
  Verdict verdict;
  oracle::Gen gen(104);
  int interior = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GameSpec spec;
    const double q_plus = gen.Uniform(0.2, 0.9);
    spec.epidemic = {gen.Uniform(0.005, 0.2),
                     trial % 2 == 0 ? 0.0 : gen.Uniform(0.0, q_plus), q_plus,
                     PoissonDegree{gen.Uniform(2.0, 20.0)}};
    switch (trial % 3) {
      case 0:
        spec.types = Uniform01{};
        break;
      case 1:
        spec.types = PowerTypes{gen.LogUniform(0.3, 3.0)};
        break;
      default:
        spec.types = Homogeneous{gen.Uniform(0.5, 2.0)};
    }
    spec.cost = 1.0;
    const NetworkGame game(spec);
    double peak = 0.0;
    for (int i = 0; i <= 100; ++i) peak = std::max(peak, game.Willingness(i / 100.0));
    spec.cost = gen.Uniform(0.05, 1.1) * peak;
    const WelfareReport r = SocialOptimum(spec);
    if (r.gamma_social < r.gamma_market - 1e-6 || !r.welfare_theorem_holds) {
      verdict.Fail(Fmt("combo %g: social %g below market %g", trial,
                       r.gamma_social, r.gamma_market));
    }
    if (r.gamma_market > 0.0 && r.gamma_market < 1.0) {
      ++interior;
      if (!(r.gamma_social > r.gamma_market) || !(r.efficiency_loss > 0.0)) {
        verdict.Fail(Fmt("combo %g: no strict gap at market %g (loss %.3g)",
                         trial, r.gamma_market, r.efficiency_loss));
      }
    }
  }
  if (verdict.pass) {
    verdict.detail = Fmt("200 combinations, %g with interior market", interior);
  }
  return verdict;
}

Verdict ExternalityMonotone() {
  Verdict verdict;
  oracle::Gen gen(105);
  std::vector<EpidemicModel> corpus = {Strong(), Weak()};
  for (int i = 0; i < 100; ++i) corpus.push_back(RandomModel(gen));
  corpus.push_back({0.05, 0.02, 0.3, FixedDegree{4}});
  corpus.push_back({0.2, 0.1, 0.6, EmpiricalDegree{{{0, 0.1}, {3, 0.5}, {12, 0.4}}}});
  const auto grid = DefaultGammaGrid();
  for (std::size_t m = 0; m < corpus.size(); ++m) {
    const auto curve = Curve(corpus[m], grid);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i].g < curve[i - 1].g - 1e-12) {
        verdict.Fail(Fmt("model %g: g falls at gamma %g", m, curve[i].gamma));
      }
      if (curve[i].g + curve[i].h < curve[i - 1].g + curve[i - 1].h - 1e-12) {
        verdict.Fail(Fmt("model %g: g + h falls at gamma %g", m, curve[i].gamma));
      }
    }
  }
  if (verdict.pass) {
    verdict.detail = Fmt("%g models on 201-point grids", corpus.size());
  }
  return verdict;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

Verdict CliDeterminism() {
  namespace fs = std::filesystem;
  Verdict verdict;
  const fs::path dir = fs::temp_directory_path() / "secgame_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> configs = {
      R"({"command": "invest", "family": "gl", "alpha": 1, "loss": 10})",
      R"({"command": "invest", "family": "rational", "a": 1, "b": 2,
          "loss": 10, "check_1e": true})",
      R"({"command": "epidemic", "lambda": 10, "p": 0.01, "q": 0.1,
          "q_plus": 0.5})",
      R"({"command": "equilibrium", "lambda": 10, "p": 0.01, "q": 0.1,
          "q_plus": 0.5, "types": "homogeneous", "ell": 1,
          "sweep_c": "0.3:0.6:0.01"})",
      R"({"command": "welfare", "lambda": 10, "p": 0.01, "q": 0.1,
          "q_plus": 0.5, "sweep_c": "0.02:0.5:0.04"})",
      R"({"command": "simulate", "lambda": 10, "p": 0.01, "q": 0.1,
          "q_plus": 0.5, "n": 5000, "replications": 4,
          "gamma_grid": "0:1:0.25", "seed": 7})",
      R"({"command": "simulate", "lambda": 10, "p": 0.01, "q": 0.1,
          "q_plus": 0.5, "n": 5000, "replications": 4, "gamma": 0.5,
          "format": "json"})",
  };
  int checked = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const fs::path config = dir / ("config" + std::to_string(i) + ".json");
    std::ofstream(config) << configs[i];
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
#ifdef SECGAME_CLI_PATH
      const fs::path out = dir / ("out" + std::to_string(run));
      const std::string command = std::string("\"") + SECGAME_CLI_PATH +
                                  "\" --config \"" + config.string() +
                                  "\" > \"" + out.string() + "\"";
      if (std::system(command.c_str()) != 0) verdict.Fail("command failed");
      outputs[run] = ReadFile(out);
#else
      std::ostringstream out, err;
      if (cli::Run({"--config", config.string()}, out, err) != 0) {
        verdict.Fail("command failed: " + err.str());
      }
      outputs[run] = out.str();
#endif
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      verdict.Fail("config " + std::to_string(i) + " output differs");
    }
    ++checked;
  }
  fs::remove_all(dir);
  if (verdict.pass) {
    verdict.detail = Fmt("%g configs, two runs each, identical bytes", checked);
  }
  return verdict;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"closed-form investment vs golden-section oracle", ClosedFormVsOracle},
      {"investment rise-then-fall shape", InvestmentShape},
      {"1/e rule", OneOverERule},
      {"knapsack exactness and relaxation", KnapsackExactness},
      {"fixed point vs bisection oracle", FixedPointVsOracle},
      {"incentive curve shapes", IncentiveShapes},
      {"mean-field vs Monte-Carlo", MeanFieldVsMonteCarlo},
      {"critical mass", CriticalMassStructure},
      {"welfare theorem", WelfareTheorem},
      {"externality monotonicity", ExternalityMonotone},
      {"CLI determinism", CliDeterminism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict verdict;
    try {
      verdict = criteria[i].second();
    } catch (const std::exception& e) {
      verdict.Fail(std::string("exception: ") + e.what());
    }
    failed += !verdict.pass;
    std::printf("[%s] criterion %zu: %s (%s)\n", verdict.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first, verdict.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
