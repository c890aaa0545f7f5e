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


#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>
#include <system_error>
#include <utility>

#include <CLI11.hpp>

#include "secgame/breach_models.hpp"
#include "secgame/epidemic.hpp"
#include "secgame/equilibrium.hpp"
#include "secgame/errors.hpp"
#include "secgame/investment.hpp"
#include "secgame/numerics.hpp"
#include "secgame/simulate.hpp"

namespace secgame::cli {
namespace {

using nlohmann::json;

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

enum class Kind { kNumber, kInteger, kUnsigned, kString, kBool, kGrid, kPairs };

struct Key {
  std::string name;
  Kind kind;
  std::string help;
};

using KeyList = std::vector<Key>;

KeyList Concat(std::initializer_list<KeyList> lists) {
  KeyList out;
  for (const auto& list : lists) out.insert(out.end(), list.begin(), list.end());
  return out;
}

const KeyList& ContagionKeys() {
  static const KeyList keys = {
      {"p", Kind::kNumber, "direct-loss probability of unprotected agents"},
      {"q", Kind::kNumber, "contagion probability onto protected agents"},
      {"q_plus", Kind::kNumber, "contagion probability onto unprotected agents"},
  };
  return keys;
}

const KeyList& DegreeKeys() {
  static const KeyList keys = {
      {"degree", Kind::kString, "degree law: poisson (default), fixed, empirical"},
      {"lambda", Kind::kNumber, "mean degree (poisson law, Erdos-Renyi graph)"},
      {"d", Kind::kInteger, "degree of the fixed law"},
      {"pmf", Kind::kPairs, "empirical law as degree:prob,degree:prob,..."},
  };
  return keys;
}

const KeyList& TypeKeys() {
  static const KeyList keys = {
      {"types", Kind::kString,
       "loss-size law: uniform (default), power, piecewise, homogeneous"},
      {"k", Kind::kNumber, "exponent of the power law F(l) = l^k"},
      {"ell", Kind::kNumber, "loss of every agent (homogeneous)"},
      {"knots", Kind::kPairs, "piecewise-linear CDF as l:F,l:F,..."},
      {"cost", Kind::kNumber, "price of the security option"},
      {"sweep_c", Kind::kGrid, "sweep the price over lo:hi:step"},
      {"grid_n", Kind::kInteger, "scan resolution on [0, 1]"},
      {"tol", Kind::kNumber, "fixed-point tolerance"},
  };
  return keys;
}

struct Command {
  std::string name;
  std::string description;
  KeyList keys;
};

const std::vector<Command>& Commands() {
  static const std::vector<Command> commands = {
      {"invest", "optimal single-agent investment over a vulnerability grid",
       {
           {"family", Kind::kString, "breach model: gl, rational, portfolio"},
           {"alpha", Kind::kNumber, "Gordon-Loeb exponent"},
           {"a", Kind::kNumber, "rational family scale"},
           {"b", Kind::kNumber, "rational family exponent"},
           {"loss", Kind::kNumber, "monetary loss on breach"},
           {"v_grid", Kind::kGrid, "vulnerabilities, lo:hi:step or v1,v2,..."},
           {"items", Kind::kString, "portfolio items CSV file"},
           {"relaxed", Kind::kBool, "fractional portfolio purchases"},
           {"check_1e", Kind::kBool, "append x*/(loss v) and the 1/e verdict"},
       }},
      {"epidemic", "mean-field breach probabilities over a gamma grid",
       Concat({ContagionKeys(), DegreeKeys(),
               {{"gamma_grid", Kind::kGrid, "secure fractions"},
                {"tol", Kind::kNumber, "fixed-point tolerance"}}})},
      {"equilibrium", "fulfilled-expectations equilibria, optionally swept over c",
       Concat({ContagionKeys(), DegreeKeys(), TypeKeys(),
               {{"curve", Kind::kBool, "emit gamma,h,w instead of equilibria"},
                {"gamma_grid", Kind::kGrid, "secure fractions for --curve"}}})},
      {"welfare", "social optimum against the market outcome",
       Concat({ContagionKeys(), DegreeKeys(), TypeKeys(),
               {{"market", Kind::kString,
                 "market outcome: largest (default) or smallest stable"}}})},
      {"simulate", "Monte-Carlo contagion on random graphs",
       Concat({ContagionKeys(), DegreeKeys(),
               {{"n", Kind::kUnsigned, "number of nodes"},
                {"graph", Kind::kString, "er (default) or config"},
                {"gamma", Kind::kNumber, "secure fraction"},
                {"gamma_grid", Kind::kGrid, "several secure fractions"},
                {"replications", Kind::kInteger, "independent replications"},
                {"seed", Kind::kUnsigned, "master seed"},
                {"one_hop", Kind::kBool, "only direct losses contaminate"},
                {"format", Kind::kString, "csv (default) or json"}}})},
  };
  return commands;
}

const Command& FindCommand(const std::string& name) {
  for (const auto& command : Commands()) {
    if (command.name == name) return command;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::string FlagName(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(Trim(part));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T ParseScalar(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("cannot parse '" + text + "' for " + what);
  }
  return value;
}

json FlagToJson(const Key& key, const std::string& text) {
  const std::string what = FlagName(key.name);
  switch (key.kind) {
    case Kind::kNumber:
      return ParseScalar<double>(text, what);
    case Kind::kInteger:
      return ParseScalar<long long>(text, what);
    case Kind::kUnsigned:
      return ParseScalar<std::uint64_t>(text, what);
    case Kind::kGrid:
      if (text.find(',') != std::string::npos) {
        json values = json::array();
        for (const auto& part : Split(text, ',')) {
          values.push_back(ParseScalar<double>(part, what));
        }
        return values;
      }
      return text;
    default:
      return text;
  }
}

bool IsNumberPair(const json& value) {
  return value.is_array() && value.size() == 2 && value[0].is_number() &&
         value[1].is_number();
}

void CheckType(const Key& key, const json& value) {
  bool ok = false;
  switch (key.kind) {
    case Kind::kNumber:
      ok = value.is_number();
      break;
    case Kind::kInteger:
      ok = value.is_number_integer();
      break;
    case Kind::kUnsigned:
      ok = value.is_number_unsigned() ||
           (value.is_number_integer() && value.get<long long>() >= 0);
      break;
    case Kind::kString:
      ok = value.is_string();
      break;
    case Kind::kBool:
      ok = value.is_boolean();
      break;
    case Kind::kGrid:
      ok = value.is_string() ||
           (value.is_array() &&
            std::all_of(value.begin(), value.end(),
                        [](const json& v) { return v.is_number(); }));
      break;
    case Kind::kPairs:
      ok = value.is_string() ||
           (value.is_array() &&
            std::all_of(value.begin(), value.end(), IsNumberPair));
      break;
  }
  if (!ok) throw ConfigError("key '" + key.name + "' has the wrong type");
}

// Typed, validated view of the effective config of one command.
class Config {
 public:
  Config(const Command& command, json doc)
      : command_(command), doc_(std::move(doc)) {
    for (const auto& [name, value] : doc_.items()) {
      if (name == "command" || name == "out") {
        if (!value.is_string()) {
          throw ConfigError("key '" + name + "' must be a string");
        }
        continue;
      }
      const Key* key = Find(name);
      if (key == nullptr) {
        throw ConfigError("unknown key '" + name + "' for command " +
                          command_.name);
      }
      CheckType(*key, value);
    }
  }

  const json& doc() const { return doc_; }
  bool Has(const std::string& name) const { return doc_.contains(name); }

  double Number(const std::string& name) const {
    return Required(name).get<double>();
  }
  double Number(const std::string& name, double fallback) const {
    return Has(name) ? Number(name) : fallback;
  }
  long long Integer(const std::string& name, long long fallback) const {
    return Has(name) ? doc_.at(name).get<long long>() : fallback;
  }
  std::uint64_t Unsigned(const std::string& name,
                         std::uint64_t fallback) const {
    return Has(name) ? doc_.at(name).get<std::uint64_t>() : fallback;
  }
  std::string String(const std::string& name) const {
    return Required(name).get<std::string>();
  }
  std::string String(const std::string& name,
                     const std::string& fallback) const {
    return Has(name) ? String(name) : fallback;
  }
  bool Bool(const std::string& name) const {
    return Has(name) && doc_.at(name).get<bool>();
  }

  std::vector<double> Grid(const std::string& name,
                           const std::string& fallback) const {
    const json value = Has(name) ? doc_.at(name) : json(fallback);
    if (value.is_array()) return value.get<std::vector<double>>();
    const auto parts = Split(value.get<std::string>(), ':');
    if (parts.size() != 3) {
      throw ConfigError("key '" + name + "' expects lo:hi:step");
    }
    const GridRange range{ParseScalar<double>(parts[0], name),
                          ParseScalar<double>(parts[1], name),
                          ParseScalar<double>(parts[2], name)};
    return range.Values();
  }

  std::vector<std::pair<double, double>> Pairs(const std::string& name) const {
    const json& value = Required(name);
    std::vector<std::pair<double, double>> out;
    if (value.is_array()) {
      for (const auto& pair : value) {
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      }
      return out;
    }
    for (const auto& part : Split(value.get<std::string>(), ',')) {
      const auto fields = Split(part, ':');
      if (fields.size() != 2) {
        throw ConfigError("key '" + name + "' expects a:b,c:d,...");
      }
      out.emplace_back(ParseScalar<double>(fields[0], name),
                       ParseScalar<double>(fields[1], name));
    }
    return out;
  }

 private:
  const Key* Find(const std::string& name) const {
    for (const auto& key : command_.keys) {
      if (key.name == name) return &key;
    }
    return nullptr;
  }

  const json& Required(const std::string& name) const {
    if (!Has(name)) {
      throw ConfigError("missing required key '" + name + "' (" +
                        FlagName(name) + ")");
    }
    return doc_.at(name);
  }

  const Command& command_;
  json doc_;
};

std::string Cell(const std::optional<double>& value) {
  return value ? FormatDouble(*value) : std::string();
}

const char* Cell(bool value) { return value ? "true" : "false"; }

void WriteHeader(std::ostream& out, const std::string& command,
                 const std::string& hash) {
  out << "# secgame " << command << ' ' << SECGAME_VERSION << ' ' << hash
      << '\n';
}

// ---------------------------------------------------------------------------
// Model construction from config keys.

DegreeDistribution DegreeFrom(const Config& config) {
  const std::string law = config.String("degree", "poisson");
  if (law == "poisson") return PoissonDegree{config.Number("lambda")};
  if (law == "fixed") {
    const long long d = config.Integer("d", -1);
    if (d < 0) {
      throw ConfigError("fixed degree law needs a non-negative --d");
    }
    return FixedDegree{static_cast<int>(d)};
  }
  if (law == "empirical") {
    EmpiricalDegree dist;
    for (const auto& [degree, prob] : config.Pairs("pmf")) {
      if (degree < 0 || degree != std::floor(degree)) {
        throw ConfigError("pmf degrees must be non-negative integers");
      }
      dist.pmf.emplace_back(static_cast<int>(degree), prob);
    }
    return dist;
  }
  throw ConfigError("unknown degree law '" + law + "'");
}

EpidemicModel EpidemicFrom(const Config& config) {
  EpidemicModel model;
  model.p = config.Number("p");
  model.q = config.Number("q");
  model.q_plus = config.Number("q_plus");
  model.degree = DegreeFrom(config);
  Validate(model);
  return model;
}

FixedPointOptions FixedPointFrom(const Config& config) {
  FixedPointOptions options;
  options.tol = config.Number("tol", options.tol);
  Require(options.tol > 0.0, "tol must be positive");
  return options;
}

TypeDistribution TypesFrom(const Config& config) {
  const std::string law = config.String("types", "uniform");
  TypeDistribution types;
  if (law == "uniform") {
    types = Uniform01{};
  } else if (law == "power") {
    types = PowerTypes{config.Number("k")};
  } else if (law == "piecewise") {
    types = PiecewiseLinearCdf{config.Pairs("knots")};
  } else if (law == "homogeneous") {
    types = Homogeneous{config.Number("ell")};
  } else {
    throw ConfigError("unknown type law '" + law + "'");
  }
  Validate(types);
  return types;
}

std::vector<double> CostsFrom(const Config& config) {
  if (config.Has("sweep_c")) return config.Grid("sweep_c", "");
  return {config.Number("cost")};
}

int GridN(const Config& config, int fallback) {
  const long long n = config.Integer("grid_n", fallback);
  Require(n > 0 && n <= 1'000'000, "grid_n out of range");
  return static_cast<int>(n);
}

// Items CSV. The header is either `cost,s` (one constant multiplier per
// item) or `cost,s_at_v0,...,s_at_vK` together with a row `v,v0,...,vK`
// giving the vulnerabilities at which the multipliers are tabulated.
std::vector<ProtectionItem> ReadItems(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open items file '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    rows.push_back(Split(trimmed, ','));
  }
  if (rows.empty() || rows.front().empty() || rows.front().front() != "cost") {
    throw ConfigError("items file must start with a 'cost,...' header");
  }
  const auto header = rows.front();
  const std::size_t width = header.size();
  if (width < 2) throw ConfigError("items header needs a multiplier column");
  const bool constant = width == 2 && header[1] == "s";

  std::vector<double> v_grid;
  std::vector<std::pair<double, std::vector<double>>> raw;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width) {
      throw ConfigError("items row " + std::to_string(r + 1) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(width));
    }
    std::vector<double> values;
    for (std::size_t i = 1; i < width; ++i) {
      values.push_back(ParseScalar<double>(row[i], "items file"));
    }
    if (row[0] == "v") {
      if (constant) throw ConfigError("a v row needs tabulated columns");
      v_grid = std::move(values);
    } else {
      raw.emplace_back(ParseScalar<double>(row[0], "items file"),
                       std::move(values));
    }
  }
  if (!constant && v_grid.empty()) {
    throw ConfigError("tabulated items need a 'v,...' grid row");
  }

  std::vector<ProtectionItem> items;
  for (auto& [cost, values] : raw) {
    ProtectionItem item;
    item.cost = cost;
    item.effectiveness = constant
                             ? Effectiveness::Constant(values.front())
                             : Effectiveness::Tabulated(v_grid, values);
    items.push_back(std::move(item));
  }
  return items;
}

// ---------------------------------------------------------------------------
// Commands.

int RunInvest(const Config& config, std::ostream& out, std::ostream&,
              const std::string& hash) {
  const std::string family = config.String("family");
  BreachModel model;
  if (family == "gl") {
    model = GordonLoeb{config.Number("alpha")};
  } else if (family == "rational") {
    model = Rational{config.Number("a"), config.Number("b")};
  } else if (family == "portfolio") {
    model = Portfolio{ReadItems(config.String("items")),
                      config.Bool("relaxed")};
  } else {
    throw ConfigError("unknown family '" + family + "'");
  }
  Validate(model);
  const double loss = config.Number("loss");
  Require(std::isfinite(loss) && loss > 0.0, "loss must be positive");
  const auto v_grid = config.Grid("v_grid", "0:1:0.01");
  const bool check = config.Bool("check_1e");

  WriteHeader(out, "invest", hash);
  out << (check ? "v,x_star,ratio,bound_holds\n" : "v,x_star\n");
  for (const double v : v_grid) {
    const AgentProblem problem{model, loss, v};
    const InvestmentSolution solution = Solve(problem);
    out << FormatDouble(v) << ',' << FormatDouble(solution.x_star);
    if (check) {
      const OneOverEResult bound = CheckOneOverE(problem);
      out << ',' << FormatDouble(bound.ratio) << ','
          << Cell(bound.bound_holds);
    }
    out << '\n';
  }
  return kExitOk;
}

int RunEpidemic(const Config& config, std::ostream& out, std::ostream&,
                const std::string& hash) {
  const EpidemicModel model = EpidemicFrom(config);
  const auto grid = config.Grid("gamma_grid", "0:1:0.005");
  const auto options = FixedPointFrom(config);

  WriteHeader(out, "epidemic", hash);
  out << "gamma,y,p0,p1,h,g\n";
  for (const auto& point : Curve(model, grid, options)) {
    out << FormatDouble(point.gamma) << ',' << FormatDouble(point.y) << ','
        << FormatDouble(point.p0) << ',' << FormatDouble(point.p1) << ','
        << FormatDouble(point.h) << ',' << FormatDouble(point.g) << '\n';
  }
  return kExitOk;
}

int RunEquilibrium(const Config& config, std::ostream& out, std::ostream& err,
                   const std::string& hash) {
  GameSpec spec;
  spec.epidemic = EpidemicFrom(config);
  spec.types = TypesFrom(config);
  const auto options = FixedPointFrom(config);

  if (config.Bool("curve")) {
    spec.cost = 1.0;
    const NetworkGame game(spec, options);
    WriteHeader(out, "equilibrium", hash);
    out << "gamma,h,w\n";
    for (const double gamma : config.Grid("gamma_grid", "0:1:0.005")) {
      out << FormatDouble(gamma) << ',' << FormatDouble(game.h(gamma)) << ','
          << FormatDouble(game.Willingness(gamma)) << '\n';
    }
    return kExitOk;
  }

  const auto costs = CostsFrom(config);
  const int grid_n = GridN(config, 201);
  WriteHeader(out, "equilibrium", hash);
  out << "c,gamma_star_low,gamma_star_mid,gamma_star_high,stable_flags,"
         "critical_mass\n";
  for (const double c : costs) {
    spec.cost = c;
    const EquilibriumReport report = FindEquilibria(spec, grid_n);
    for (const auto& warning : report.warnings) {
      err << "secgame: warning at c=" << FormatDouble(c) << ": " << warning
          << '\n';
    }
    const auto& eq = report.equilibria;
    std::string low, mid, high, flags;
    if (!eq.empty()) low = FormatDouble(eq.front().gamma_star);
    if (eq.size() >= 2) high = FormatDouble(eq.back().gamma_star);
    if (eq.size() >= 3) mid = FormatDouble(eq[1].gamma_star);
    if (eq.size() > 3) {
      err << "secgame: warning at c=" << FormatDouble(c) << ": "
          << eq.size() << " equilibria, middle column shows the second\n";
    }
    for (const auto& e : eq) flags += e.stable ? 'S' : 'U';
    out << FormatDouble(c) << ',' << low << ',' << mid << ',' << high << ','
        << flags << ',' << Cell(report.critical_mass) << '\n';
  }
  return kExitOk;
}

int RunWelfare(const Config& config, std::ostream& out, std::ostream& err,
               const std::string& hash) {
  GameSpec spec;
  spec.epidemic = EpidemicFrom(config);
  spec.types = TypesFrom(config);
  const std::string market = config.String("market", "largest");
  MarketSelection selection;
  if (market == "largest") {
    selection = MarketSelection::kLargestStable;
  } else if (market == "smallest") {
    selection = MarketSelection::kSmallestStable;
  } else {
    throw ConfigError("market must be 'largest' or 'smallest'");
  }
  const auto costs = CostsFrom(config);
  const int grid_n = GridN(config, 401);

  WriteHeader(out, "welfare", hash);
  out << "c,gamma_market,gamma_social,W_market,W_social,loss\n";
  for (const double c : costs) {
    spec.cost = c;
    const WelfareReport report = SocialOptimum(spec, grid_n, selection);
    out << FormatDouble(c) << ',' << FormatDouble(report.gamma_market) << ','
        << FormatDouble(report.gamma_social) << ','
        << FormatDouble(report.w_market) << ','
        << FormatDouble(report.w_social) << ','
        << FormatDouble(report.efficiency_loss) << '\n';
    if (!report.welfare_theorem_holds) {
      out.flush();
      err << "secgame: consistency violation at c=" << FormatDouble(c)
          << ": social optimum " << FormatDouble(report.gamma_social)
          << " below market outcome " << FormatDouble(report.gamma_market)
          << '\n';
      return kExitConsistency;
    }
  }
  return kExitOk;
}

int RunSimulate(const Config& config, std::ostream& out, std::ostream&,
                const std::string& hash) {
  SimConfig sim;
  const std::uint64_t n = config.Unsigned("n", 10000);
  Require(n >= 1 && n <= 0xffffffffULL, "n must lie in [1, 2^32)");
  sim.n = static_cast<std::uint32_t>(n);
  const long long replications = config.Integer("replications", 1);
  Require(replications >= 1 && replications <= 1'000'000,
          "replications must lie in [1, 10^6]");
  sim.replications = static_cast<int>(replications);
  sim.seed = config.Unsigned("seed", 0);
  sim.one_hop = config.Bool("one_hop");

  EpidemicModel mean_field;
  mean_field.p = config.Number("p");
  mean_field.q = config.Number("q");
  mean_field.q_plus = config.Number("q_plus");
  const std::string graph = config.String("graph", "er");
  if (graph == "er") {
    if (config.Has("degree") && config.String("degree") != "poisson") {
      throw ConfigError("Erdos-Renyi graphs take --lambda only");
    }
    const double lambda = config.Number("lambda");
    sim.graph = ErdosRenyiGraph{lambda};
    mean_field.degree = PoissonDegree{lambda};
  } else if (graph == "config") {
    mean_field.degree = DegreeFrom(config);
    sim.graph = ConfigurationModelGraph{mean_field.degree};
  } else {
    throw ConfigError("graph must be 'er' or 'config'");
  }
  sim.epidemic = mean_field;
  Validate(mean_field);

  const std::string format = config.String("format", "csv");
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be 'csv' or 'json'");
  }
  const std::vector<double> gammas =
      config.Has("gamma_grid") ? config.Grid("gamma_grid", "")
                               : std::vector<double>{config.Number("gamma", 0)};

  if (format == "csv") {
    WriteHeader(out, "simulate", hash);
    out << "gamma,p0_hat,p1_hat,stderr0,stderr1,loss_fraction,p0_mf,p1_mf\n";
  }
  for (const double gamma : gammas) {
    sim.gamma = gamma;
    Validate(sim);
    const SimResult result = Run(sim);
    const BreachProbabilities mf = BreachProbs(mean_field, gamma);
    if (format == "csv") {
      out << FormatDouble(gamma) << ',' << Cell(result.p0_hat) << ','
          << Cell(result.p1_hat) << ',' << FormatDouble(result.stderr0) << ','
          << FormatDouble(result.stderr1) << ','
          << FormatDouble(result.loss_fraction) << ',' << FormatDouble(mf.p0)
          << ',' << FormatDouble(mf.p1) << '\n';
    } else {
      json record;
      record["config_hash"] = hash;
      record["gamma"] = gamma;
      record["p0_hat"] = result.p0_hat ? json(*result.p0_hat) : json(nullptr);
      record["p1_hat"] = result.p1_hat ? json(*result.p1_hat) : json(nullptr);
      record["stderr0"] = result.stderr0;
      record["stderr1"] = result.stderr1;
      record["loss_fraction"] = result.loss_fraction;
      record["p0_mf"] = mf.p0;
      record["p1_mf"] = mf.p1;
      record["n"] = sim.n;
      record["replications"] = sim.replications;
      out << record.dump() << '\n';
    }
  }
  return kExitOk;
}

const char* PlotScript(const std::string& figure);

int Dispatch(const Command& command, const json& doc, std::ostream& out,
             std::ostream& err) {
  const Config config(command, doc);
  const std::string hash = ConfigHash(config.doc());
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.Has("out")) {
    file.open(config.String("out"), std::ios::binary);
    if (!file) {
      throw ConfigError("cannot open output file '" + config.String("out") +
                        "'");
    }
    sink = &file;
  }
  sink->imbue(std::locale::classic());
  int code = kExitOk;
  try {
    if (command.name == "invest") code = RunInvest(config, *sink, err, hash);
    if (command.name == "epidemic") code = RunEpidemic(config, *sink, err, hash);
    if (command.name == "equilibrium") {
      code = RunEquilibrium(config, *sink, err, hash);
    }
    if (command.name == "welfare") code = RunWelfare(config, *sink, err, hash);
    if (command.name == "simulate") code = RunSimulate(config, *sink, err, hash);
  } catch (...) {
    sink->flush();
    throw;
  }
  sink->flush();
  return code;
}

json LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold an object");
  return doc;
}

}  // namespace

std::string Fnv1aHex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

std::string ConfigHash(const json& config) {
  json copy = config;
  copy.erase("out");
  return Fnv1aHex(copy.dump());
}

std::string FormatDouble(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Security investment and epidemic risk on random networks",
               "secgame"};
  app.set_version_flag("--version", SECGAME_VERSION);
  app.require_subcommand(0, 1);
  std::string top_config;
  app.add_option("--config", top_config,
                 "JSON config whose 'command' key picks the subcommand");

  struct Bound {
    CLI::App* app = nullptr;
    std::string config;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Bound> bound;
  for (const auto& command : Commands()) {
    Bound& b = bound[command.name];
    b.app = app.add_subcommand(command.name, command.description);
    b.app->add_option("--config", b.config, "JSON config file");
    b.app->add_option("--out", b.text["out"], "write data to this file");
    b.options["out"] = b.app->get_option("--out");
    for (const auto& key : command.keys) {
      if (key.kind == Kind::kBool) {
        b.options[key.name] =
            b.app->add_flag(FlagName(key.name), b.flags[key.name], key.help);
      } else {
        b.options[key.name] =
            b.app->add_option(FlagName(key.name), b.text[key.name], key.help);
      }
    }
  }
  std::string figure;
  CLI::App* script =
      app.add_subcommand("script", "print a plotting script for a figure");
  script->add_option("--figure", figure, "investment, incentive, willingness, sweep, welfare, simulate")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (script->parsed()) {
      const char* text = PlotScript(figure);
      if (text == nullptr) throw ConfigError("unknown figure '" + figure + "'");
      out << text;
      return kExitOk;
    }
    for (const auto& command : Commands()) {
      Bound& b = bound.at(command.name);
      if (!b.app->parsed()) continue;
      json doc = b.config.empty() ? json::object() : LoadConfigFile(b.config);
      if (doc.contains("command") && doc["command"] != command.name) {
        throw ConfigError("config file is for command " +
                          doc["command"].dump() + ", not " + command.name);
      }
      doc["command"] = command.name;
      for (const auto& [name, option] : b.options) {
        if (option->count() == 0) continue;
        if (name == "out") {
          doc[name] = b.text[name];
          continue;
        }
        const auto key = std::find_if(
            command.keys.begin(), command.keys.end(),
            [&](const Key& k) { return k.name == name; });
        doc[name] = key->kind == Kind::kBool ? json(b.flags[name])
                                             : FlagToJson(*key, b.text[name]);
      }
      return Dispatch(command, doc, out, err);
    }
    if (top_config.empty()) {
      err << app.help();
      return kExitConfig;
    }
    json doc = LoadConfigFile(top_config);
    if (!doc.contains("command") || !doc["command"].is_string()) {
      throw ConfigError("config file needs a string 'command' key");
    }
    return Dispatch(FindCommand(doc["command"].get<std::string>()), doc, out,
                    err);
  } catch (const ConsistencyError& e) {
    out.flush();
    err << "secgame: consistency violation: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const NumericalError& e) {
    out.flush();
    err << "secgame: numerical failure: " << e.what()
        << " (best " << FormatDouble(e.best()) << ", residual "
        << FormatDouble(e.residual()) << ")\n";
    return kExitNumerical;
  } catch (const Error& e) {
    out.flush();
    err << "secgame: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    out.flush();
    err << "secgame: config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

namespace {

constexpr const char* kInvestment = R"py(# Optimal investment against vulnerability.
#   for a in 0.5 1 1.5; do
#     secgame invest --family gl --alpha $a --loss 10 --out invest_$a.csv
#   done
import csv
import sys

import matplotlib.pyplot as plt


def read(path):
    with open(path) as f:
        rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
    return rows


files = sys.argv[1:] or ["invest_0.5.csv", "invest_1.csv", "invest_1.5.csv"]
for path in files:
    rows = read(path)
    plt.plot([float(r["v"]) for r in rows], [float(r["x_star"]) for r in rows],
             label=path)
plt.xlabel("v")
plt.ylabel("x*")
plt.legend()
plt.savefig("investment.png", dpi=150)
)py";

constexpr const char* kIncentive = R"py(# h(gamma) from an epidemic curve.
#   secgame epidemic --lambda 10 --p 0.01 --q 0 --q-plus 0.5 --out strong.csv
#   secgame epidemic --lambda 10 --p 0.01 --q 0.1 --q-plus 0.5 --out weak.csv
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "weak.csv"
with open(path) as f:
    rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
plt.plot([float(r["gamma"]) for r in rows], [float(r["h"]) for r in rows])
plt.xlabel("gamma")
plt.ylabel("h(gamma)")
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
)py";

constexpr const char* kWillingness = R"py(# Willingness to pay w(gamma) against a price line.
#   secgame equilibrium --lambda 10 --p 0.01 --q 0.1 --q-plus 0.5 \
#       --types uniform --curve --out w.csv
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "w.csv"
price = float(sys.argv[2]) if len(sys.argv) > 2 else None
with open(path) as f:
    rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
plt.plot([float(r["gamma"]) for r in rows], [float(r["w"]) for r in rows])
if price is not None:
    plt.axhline(price, linestyle="--", color="gray")
plt.xlabel("gamma")
plt.ylabel("w(gamma)")
plt.savefig("willingness.png", dpi=150)
)py";

constexpr const char* kSweep = R"py(# Equilibrium correspondence over the price c.
#   secgame equilibrium --lambda 10 --p 0.01 --q 0.1 --q-plus 0.5 \
#       --types homogeneous --ell 1 --sweep-c 0.005:0.6:0.005 --out sweep.csv
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "sweep.csv"
with open(path) as f:
    rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
for column, style in (("gamma_star_low", "o"), ("gamma_star_mid", "x"),
                      ("gamma_star_high", "o")):
    pts = [(float(r["c"]), float(r[column])) for r in rows if r[column]]
    plt.plot([p[0] for p in pts], [p[1] for p in pts], style, markersize=3)
plt.xlabel("c")
plt.ylabel("gamma*")
plt.savefig("sweep.png", dpi=150)
)py";

constexpr const char* kWelfare = R"py(# Market outcome against the social optimum.
#   secgame welfare --lambda 10 --p 0.01 --q 0.1 --q-plus 0.5 \
#       --sweep-c 0.01:0.3:0.01 --out welfare.csv
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "welfare.csv"
with open(path) as f:
    rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
c = [float(r["c"]) for r in rows]
plt.plot(c, [float(r["gamma_market"]) for r in rows], label="market")
plt.plot(c, [float(r["gamma_social"]) for r in rows], label="social")
plt.xlabel("c")
plt.ylabel("gamma")
plt.legend()
plt.savefig("welfare.png", dpi=150)
)py";

constexpr const char* kSimulate = R"py(# Monte-Carlo estimates against the mean-field curve.
#   secgame simulate --lambda 10 --p 0.01 --q 0.1 --q-plus 0.5 --n 100000 \
#       --replications 20 --gamma-grid 0:1:0.25 --out sim.csv
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "sim.csv"
with open(path) as f:
    rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
g = [float(r["gamma"]) for r in rows]
for est, mf in (("p0_hat", "p0_mf"), ("p1_hat", "p1_mf")):
    se = "stderr" + est[1]
    pts = [(float(r["gamma"]), float(r[est]), float(r[se]))
           for r in rows if r[est]]
    plt.errorbar([p[0] for p in pts], [p[1] for p in pts],
                 yerr=[3 * p[2] for p in pts], fmt="o", label=est)
    plt.plot(g, [float(r[mf]) for r in rows], label=mf)
plt.xlabel("gamma")
plt.legend()
plt.savefig("simulate.png", dpi=150)
)py";

const char* PlotScript(const std::string& figure) {
  if (figure == "investment") return kInvestment;
  if (figure == "incentive") return kIncentive;
  if (figure == "willingness") return kWillingness;
  if (figure == "sweep") return kSweep;
  if (figure == "welfare") return kWelfare;
  if (figure == "simulate") return kSimulate;
  return nullptr;
}

}  // namespace
}  // namespace secgame::cli
