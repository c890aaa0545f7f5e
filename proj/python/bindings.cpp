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


#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secgame/breach_models.hpp"
#include "secgame/epidemic.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/errors.hpp"
#include "secgame/investment.hpp"
#include "secgame/numerics.hpp"
#include "secgame/simulate.hpp"

namespace py = pybind11;
using namespace secgame;

namespace {

py::object ToPython(const MonotonicityReport& report) {
  return py::module_::import("json").attr("loads")(ToJson(report).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Security investment and epidemic risk on random networks";
  m.attr("__version__") = SECGAME_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation",
                                               base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  // Breach models.
  py::class_<GordonLoeb>(m, "GordonLoeb")
      .def(py::init([](double alpha) { return GordonLoeb{alpha}; }),
           py::arg("alpha"))
      .def_readwrite("alpha", &GordonLoeb::alpha);
  py::class_<Rational>(m, "Rational")
      .def(py::init([](double a, double b) { return Rational{a, b}; }),
           py::arg("a"), py::arg("b"))
      .def_readwrite("a", &Rational::a)
      .def_readwrite("b", &Rational::b);
  py::class_<ProtectionItem>(m, "ProtectionItem")
      .def(py::init([](double cost, double s) {
             return ProtectionItem{cost, Effectiveness::Constant(s)};
           }),
           py::arg("cost"), py::arg("s"))
      .def(py::init([](double cost, std::vector<double> v_grid,
                       std::vector<double> values) {
             return ProtectionItem{
                 cost, Effectiveness::Tabulated(std::move(v_grid),
                                                std::move(values))};
           }),
           py::arg("cost"), py::arg("v_grid"), py::arg("values"))
      .def(py::init([](double cost, std::function<double(double)> fn) {
             return ProtectionItem{cost, Effectiveness::Custom(std::move(fn))};
           }),
           py::arg("cost"), py::arg("fn"))
      .def_readwrite("cost", &ProtectionItem::cost)
      .def("s", [](const ProtectionItem& item, double v) {
        return item.effectiveness(v);
      });
  py::class_<Portfolio>(m, "Portfolio")
      .def(py::init([](std::vector<ProtectionItem> items, bool relaxed) {
             return Portfolio{std::move(items), relaxed};
           }),
           py::arg("items"), py::arg("relaxed") = false)
      .def_readwrite("items", &Portfolio::items)
      .def_readwrite("relaxed", &Portfolio::relaxed);

  m.def("eval", py::overload_cast<const BreachModel&, double, double>(&Eval),
        py::arg("model"), py::arg("x"), py::arg("v"));
  m.def("eval_dx", &EvalDx, py::arg("model"), py::arg("x"), py::arg("v"));
  m.def(
      "knapsack_exact",
      [](const std::vector<ProtectionItem>& items, double budget, double v) {
        const KnapsackResult r = KnapsackExact(items, budget, v);
        return py::make_tuple(r.value, r.chosen);
      },
      py::arg("items"), py::arg("budget"), py::arg("v"));
  m.def(
      "knapsack_relaxed",
      [](const std::vector<ProtectionItem>& items, double budget, double v) {
        return KnapsackRelaxed(items, budget, v);
      },
      py::arg("items"), py::arg("budget"), py::arg("v"));

  // Investment.
  py::class_<InvestmentSolution>(m, "InvestmentSolution")
      .def_readonly("x_star", &InvestmentSolution::x_star)
      .def_readonly("objective", &InvestmentSolution::objective)
      .def_readonly("at_boundary", &InvestmentSolution::at_boundary)
      .def_readonly("fraction_of_expected_loss",
                    &InvestmentSolution::fraction_of_expected_loss)
      .def_readonly("singular", &InvestmentSolution::singular);
  m.def(
      "solve",
      [](const BreachModel& model, double loss, double v) {
        return Solve(AgentProblem{model, loss, v});
      },
      py::arg("model"), py::arg("loss"), py::arg("v"));
  m.def("solve_gl", &SolveGordonLoeb, py::arg("alpha"), py::arg("loss"),
        py::arg("v"));
  m.def(
      "check_one_over_e",
      [](const BreachModel& model, double loss, double v) {
        const OneOverEResult r = CheckOneOverE(AgentProblem{model, loss, v});
        return py::make_tuple(r.bound_holds, r.ratio);
      },
      py::arg("model"), py::arg("loss"), py::arg("v"));
  m.def(
      "check_submodular_conditions",
      [](const BreachModel& model, double x_lo, double x_hi, int nx,
         double v_lo, double v_hi, int nv) {
        return ToPython(CheckSubmodularConditions(
            model, GridSpec{x_lo, x_hi, nx, v_lo, v_hi, nv}));
      },
      py::arg("model"), py::arg("x_lo") = 0.0, py::arg("x_hi") = 5.0,
      py::arg("nx") = 26, py::arg("v_lo") = 0.05, py::arg("v_hi") = 0.95,
      py::arg("nv") = 19);
  m.def(
      "check_monotone_investment",
      [](const BreachModel& model, const std::vector<double>& v_grid,
         const std::vector<double>& l_grid) {
        return ToPython(CheckMonotoneInvestment(model, v_grid, l_grid));
      },
      py::arg("model"), py::arg("v_grid"), py::arg("l_grid"));

  // Epidemic.
  py::class_<PoissonDegree>(m, "PoissonDegree")
      .def(py::init([](double lambda) { return PoissonDegree{lambda}; }),
           py::arg("lam"))
      .def_readwrite("lam", &PoissonDegree::lambda);
  py::class_<FixedDegree>(m, "FixedDegree")
      .def(py::init([](int d) { return FixedDegree{d}; }), py::arg("d"))
      .def_readwrite("d", &FixedDegree::d);
  py::class_<EmpiricalDegree>(m, "EmpiricalDegree")
      .def(py::init([](std::vector<std::pair<int, double>> pmf) {
             return EmpiricalDegree{std::move(pmf)};
           }),
           py::arg("pmf"))
      .def_readwrite("pmf", &EmpiricalDegree::pmf);
  py::class_<EpidemicModel>(m, "EpidemicModel")
      .def(py::init([](double p, double q, double q_plus,
                       DegreeDistribution degree) {
             return EpidemicModel{p, q, q_plus, std::move(degree)};
           }),
           py::arg("p"), py::arg("q"), py::arg("q_plus"), py::arg("degree"))
      .def_readwrite("p", &EpidemicModel::p)
      .def_readwrite("q", &EpidemicModel::q)
      .def_readwrite("q_plus", &EpidemicModel::q_plus)
      .def_readwrite("degree", &EpidemicModel::degree);
  py::class_<FixedPointResult>(m, "FixedPointResult")
      .def_readonly("y", &FixedPointResult::y)
      .def_readonly("iterations", &FixedPointResult::iterations)
      .def_readonly("residual", &FixedPointResult::residual)
      .def_readonly("used_bisection", &FixedPointResult::used_bisection);

  m.def("psi", &Psi, py::arg("dist"), py::arg("s"));
  m.def(
      "fixed_point_y",
      [](const EpidemicModel& model, double gamma, double tol) {
        FixedPointOptions options;
        options.tol = tol;
        return FixedPointY(model, gamma, options);
      },
      py::arg("model"), py::arg("gamma"), py::arg("tol") = 1e-12);
  m.def(
      "breach_probs",
      [](const EpidemicModel& model, double gamma) {
        const BreachProbabilities b = BreachProbs(model, gamma);
        return py::make_tuple(b.p0, b.p1);
      },
      py::arg("model"), py::arg("gamma"));
  m.def(
      "h", [](const EpidemicModel& model, double gamma) {
        return Incentive(model, gamma);
      },
      py::arg("model"), py::arg("gamma"));
  m.def(
      "g", [](const EpidemicModel& model, double gamma) {
        return PublicExternality(model, gamma);
      },
      py::arg("model"), py::arg("gamma"));
  m.def(
      "curve",
      [](const EpidemicModel& model, const std::vector<double>& grid) {
        py::dict out;
        std::vector<double> cols[6];
        for (const auto& pt : Curve(model, grid)) {
          cols[0].push_back(pt.gamma);
          cols[1].push_back(pt.y);
          cols[2].push_back(pt.p0);
          cols[3].push_back(pt.p1);
          cols[4].push_back(pt.h);
          cols[5].push_back(pt.g);
        }
        const char* names[] = {"gamma", "y", "p0", "p1", "h", "g"};
        for (int i = 0; i < 6; ++i) out[names[i]] = cols[i];
        return out;
      },
      py::arg("model"), py::arg("gamma_grid"));
  m.def(
      "check_network_monotone",
      [](const EpidemicModel& model, const std::vector<double>& grid) {
        return ToPython(CheckNetworkMonotone(model, grid));
      },
      py::arg("model"), py::arg("gamma_grid"));

  // Equilibrium.
  py::class_<Uniform01>(m, "Uniform01").def(py::init<>());
  py::class_<PowerTypes>(m, "PowerTypes")
      .def(py::init([](double k) { return PowerTypes{k}; }), py::arg("k"))
      .def_readwrite("k", &PowerTypes::k);
  py::class_<PiecewiseLinearCdf>(m, "PiecewiseLinearCdf")
      .def(py::init([](std::vector<std::pair<double, double>> knots) {
             return PiecewiseLinearCdf{std::move(knots)};
           }),
           py::arg("knots"))
      .def_readwrite("knots", &PiecewiseLinearCdf::knots);
  py::class_<Homogeneous>(m, "Homogeneous")
      .def(py::init([](double ell) { return Homogeneous{ell}; }),
           py::arg("ell"))
      .def_readwrite("ell", &Homogeneous::ell);
  py::class_<GameSpec>(m, "GameSpec")
      .def(py::init([](EpidemicModel epidemic, TypeDistribution types,
                       double cost) {
             return GameSpec{std::move(epidemic), std::move(types), cost};
           }),
           py::arg("epidemic"), py::arg("types"), py::arg("cost"))
      .def_readwrite("epidemic", &GameSpec::epidemic)
      .def_readwrite("types", &GameSpec::types)
      .def_readwrite("cost", &GameSpec::cost);

  py::class_<Equilibrium>(m, "Equilibrium")
      .def_readonly("gamma_star", &Equilibrium::gamma_star)
      .def_readonly("stable", &Equilibrium::stable)
      .def_property_readonly("kind", [](const Equilibrium& e) {
        return std::string(ToString(e.kind));
      });
  py::class_<EquilibriumReport>(m, "EquilibriumReport")
      .def_readonly("equilibria", &EquilibriumReport::equilibria)
      .def_readonly("critical_mass", &EquilibriumReport::critical_mass)
      .def_readonly("gamma_peak", &EquilibriumReport::gamma_peak)
      .def_readonly("c_peak", &EquilibriumReport::c_peak)
      .def_readonly("w0", &EquilibriumReport::w0)
      .def_readonly("w1", &EquilibriumReport::w1)
      .def_readonly("single_peaked", &EquilibriumReport::single_peaked)
      .def_readonly("warnings", &EquilibriumReport::warnings);
  py::class_<CriticalMassReport>(m, "CriticalMassReport")
      .def_readonly("positive", &CriticalMassReport::positive)
      .def_readonly("w_slope0", &CriticalMassReport::w_slope0)
      .def_readonly("w0_zero", &CriticalMassReport::w0_zero)
      .def_readonly("h_slope0", &CriticalMassReport::h_slope0)
      .def_readonly("density_near_one", &CriticalMassReport::density_near_one)
      .def_readonly("single_peaked", &CriticalMassReport::single_peaked);
  py::class_<WelfareReport>(m, "WelfareReport")
      .def_readonly("gamma_social", &WelfareReport::gamma_social)
      .def_readonly("w_social", &WelfareReport::w_social)
      .def_readonly("gamma_market", &WelfareReport::gamma_market)
      .def_readonly("w_market", &WelfareReport::w_market)
      .def_readonly("efficiency_loss", &WelfareReport::efficiency_loss)
      .def_readonly("poa", &WelfareReport::poa)
      .def_readonly("welfare_theorem_holds",
                    &WelfareReport::welfare_theorem_holds);

  m.def("f_inv", &Quantile, py::arg("types"), py::arg("u"));
  m.def("cdf", &Cdf, py::arg("types"), py::arg("ell"));
  m.def("willingness",
        py::overload_cast<const GameSpec&, double>(&Willingness),
        py::arg("spec"), py::arg("gamma"));
  m.def("welfare", py::overload_cast<const GameSpec&, double>(&Welfare),
        py::arg("spec"), py::arg("gamma"));
  m.def("find_equilibria", &FindEquilibria, py::arg("spec"),
        py::arg("grid_n") = 201, py::arg("tol") = 1e-10);
  m.def("critical_mass", &CriticalMass, py::arg("spec"));
  m.def(
      "social_optimum",
      [](const GameSpec& spec, int grid_n, const std::string& market) {
        Require(market == "largest" || market == "smallest",
                "market must be 'largest' or 'smallest'");
        return SocialOptimum(spec, grid_n,
                             market == "largest"
                                 ? MarketSelection::kLargestStable
                                 : MarketSelection::kSmallestStable);
      },
      py::arg("spec"), py::arg("grid_n") = 401, py::arg("market") = "largest");

  // Simulation.
  py::class_<ErdosRenyiGraph>(m, "ErdosRenyiGraph")
      .def(py::init([](double lambda) { return ErdosRenyiGraph{lambda}; }),
           py::arg("lam"))
      .def_readwrite("lam", &ErdosRenyiGraph::lambda);
  py::class_<ConfigurationModelGraph>(m, "ConfigurationModelGraph")
      .def(py::init([](DegreeDistribution degree) {
             return ConfigurationModelGraph{std::move(degree)};
           }),
           py::arg("degree"))
      .def_readwrite("degree", &ConfigurationModelGraph::degree);
  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](std::uint32_t n, GraphSpec graph,
                       EpidemicModel epidemic, double gamma, int replications,
                       std::uint64_t seed, bool one_hop) {
             return SimConfig{n,     std::move(graph), std::move(epidemic),
                              gamma, replications,     seed,
                              one_hop};
           }),
           py::arg("n"), py::arg("graph"), py::arg("epidemic"),
           py::arg("gamma"), py::arg("replications") = 1,
           py::arg("seed") = 0, py::arg("one_hop") = false)
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("graph", &SimConfig::graph)
      .def_readwrite("epidemic", &SimConfig::epidemic)
      .def_readwrite("gamma", &SimConfig::gamma)
      .def_readwrite("replications", &SimConfig::replications)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("one_hop", &SimConfig::one_hop);
  py::class_<SimResult>(m, "SimResult")
      .def_readonly("p0_hat", &SimResult::p0_hat)
      .def_readonly("p1_hat", &SimResult::p1_hat)
      .def_readonly("stderr0", &SimResult::stderr0)
      .def_readonly("stderr1", &SimResult::stderr1)
      .def_readonly("loss_fraction", &SimResult::loss_fraction);
  m.def(
      "run",
      [](const SimConfig& config) {
        Validate(config);
        py::gil_scoped_release release;
        return Run(config);
      },
      py::arg("config"));
}
