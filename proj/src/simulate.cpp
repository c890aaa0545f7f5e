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

#include "secgame/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stream tags under a replication key.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kStateStream = 2;
constexpr std::uint64_t kContagionStream = 3;
// Stream tags under the contagion key.
constexpr std::uint64_t kDirectLossStream = 1;
constexpr std::uint64_t kTransmissionStream = 2;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;

  void Add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double Mean() const { return sum / count; }
  double StdErr() const {
    if (count < 2) return 0.0;
    const double mean = Mean();
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1));
    return std::sqrt(var / count);
  }
};

}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveKey(std::uint64_t key, std::uint64_t tag) {
  return Mix64(Mix64(key) ^ (tag * kGolden + 0x632be59bd9b4e019ULL));
}

std::uint64_t CounterStream::Bits(std::uint64_t counter) const {
  return Mix64(key_ + (counter + 1) * kGolden);
}

std::uint64_t SplitMix64::operator()() {
  state_ += kGolden;
  return Mix64(state_);
}

std::uint64_t SplitMix64::Below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  const unsigned __int128 product =
      static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    unsigned __int128 m = product;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
  return static_cast<std::uint64_t>(product >> 64);
}

Graph Graph::FromEdges(
    std::uint32_t n,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  for (auto& [a, b] : edges) {
    Require(a < n && b < n, "edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n = n;
  g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b] : edges) {
    ++g.offsets[a + 1];
    ++g.offsets[b + 1];
  }
  for (std::uint32_t u = 0; u < n; ++u) g.offsets[u + 1] += g.offsets[u];
  g.neighbors.resize(edges.size() * 2);
  std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    g.neighbors[cursor[a]++] = b;
    g.neighbors[cursor[b]++] = a;
  }
  return g;
}

void Validate(const SimConfig& config) {
  Require(config.n >= 1, "simulation needs n >= 1");
  Require(config.replications >= 1, "simulation needs replications >= 1");
  Require(config.gamma >= 0.0 && config.gamma <= 1.0,
          "gamma must lie in [0, 1]");
  Validate(config.epidemic);
  if (const auto* er = std::get_if<ErdosRenyiGraph>(&config.graph)) {
    Require(std::isfinite(er->lambda) && er->lambda >= 0.0,
            "Erdos-Renyi lambda must be >= 0");
  } else {
    Validate(std::get<ConfigurationModelGraph>(config.graph).degree);
  }
}

Graph GenerateErdosRenyi(std::uint32_t n, double edge_prob, SplitMix64& rng) {
  Require(edge_prob >= 0.0, "edge probability must be >= 0");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  if (n < 2 || edge_prob <= 0.0) return Graph::FromEdges(n, std::move(edges));
  if (edge_prob >= 1.0) {
    for (std::uint32_t v = 1; v < n; ++v) {
      for (std::uint32_t w = 0; w < v; ++w) edges.emplace_back(w, v);
    }
    return Graph::FromEdges(n, std::move(edges));
  }
  // Batagelj-Brandes: walk the lower triangle with geometric gaps.
  const double log_q = std::log1p(-edge_prob);
  edges.reserve(static_cast<std::size_t>(edge_prob * n * (n - 1) / 2 * 1.1) + 16);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double gap = std::floor(std::log1p(-rng.Uniform()) / log_q);
    if (gap > static_cast<double>(nn) * static_cast<double>(nn)) break;
    w += 1 + static_cast<std::int64_t>(gap);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) {
      edges.emplace_back(static_cast<std::uint32_t>(w),
                         static_cast<std::uint32_t>(v));
    }
  }
  return Graph::FromEdges(n, std::move(edges));
}

int SampleDegree(const DegreeDistribution& degree, double u) {
  if (const auto* fixed = std::get_if<FixedDegree>(&degree)) return fixed->d;
  if (const auto* poisson = std::get_if<PoissonDegree>(&degree)) {
    const double lambda = poisson->lambda;
    const int cap = static_cast<int>(10.0 * lambda + 100.0);
    double pk = std::exp(-lambda);
    double cum = pk;
    int k = 0;
    while (u >= cum && k < cap) {
      ++k;
      pk *= lambda / k;
      cum += pk;
    }
    return k;
  }
  const auto& pmf = std::get<EmpiricalDegree>(degree).pmf;
  double cum = 0.0;
  for (const auto& [k, prob] : pmf) {
    cum += prob;
    if (u < cum) return k;
  }
  return pmf.back().first;
}

Graph GenerateConfigurationModel(std::uint32_t n,
                                 const DegreeDistribution& degree,
                                 SplitMix64& rng) {
  Validate(degree);
  std::vector<int> degrees(n);
  std::uint64_t total = 0;
  for (auto& d : degrees) {
    d = SampleDegree(degree, rng.Uniform());
    total += static_cast<std::uint64_t>(d);
  }
  for (int attempt = 0; total % 2 == 1 && attempt < 1000; ++attempt) {
    const auto u = static_cast<std::size_t>(rng.Below(n));
    total -= static_cast<std::uint64_t>(degrees[u]);
    degrees[u] = SampleDegree(degree, rng.Uniform());
    total += static_cast<std::uint64_t>(degrees[u]);
  }
  if (total % 2 == 1) {
    // e.g. every degree odd and n odd: no redraw can fix the parity.
    auto it = std::find_if(degrees.rbegin(), degrees.rend(),
                           [](int d) { return d > 0; });
    --*it;
    --total;
  }
  std::vector<std::uint32_t> stubs;
  stubs.reserve(total);
  for (std::uint32_t u = 0; u < n; ++u) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[u]), u);
  }
  for (std::size_t i = stubs.size(); i > 1; --i) {
    std::swap(stubs[i - 1], stubs[static_cast<std::size_t>(rng.Below(i))]);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    edges.emplace_back(stubs[i], stubs[i + 1]);
  }
  return Graph::FromEdges(n, std::move(edges));
}

Graph GenerateGraph(const SimConfig& config, SplitMix64& rng) {
  if (const auto* er = std::get_if<ErdosRenyiGraph>(&config.graph)) {
    return GenerateErdosRenyi(config.n, er->lambda / config.n, rng);
  }
  return GenerateConfigurationModel(
      config.n, std::get<ConfigurationModelGraph>(config.graph).degree, rng);
}

std::vector<std::uint8_t> Percolate(const Graph& graph,
                                    std::span<const NodeState> states,
                                    const EpidemicModel& epidemic,
                                    std::uint64_t key, bool one_hop) {
  Require(states.size() == graph.n, "one state per node required");
  const CounterStream direct(DeriveKey(key, kDirectLossStream));
  const CounterStream transmit(DeriveKey(key, kTransmissionStream));

  std::vector<std::uint8_t> lossy(graph.n, 0);
  std::vector<std::uint8_t> seed(graph.n, 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < graph.n; ++u) {
    if (states[u] == NodeState::kNotSecure && direct.Uniform(u) < epidemic.p) {
      lossy[u] = 1;
      seed[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    if (one_hop && !seed[u]) continue;
    for (std::uint64_t e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
      const std::uint32_t w = graph.neighbors[e];
      if (lossy[w]) continue;
      const double prob =
          states[w] == NodeState::kSecure ? epidemic.q : epidemic.q_plus;
      if (transmit.Uniform(e) < prob) {
        lossy[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return lossy;
}

double ReplicationStats::gamma_hat() const {
  return static_cast<double>(secure) / (secure + not_secure);
}

std::optional<double> ReplicationStats::p0() const {
  if (not_secure == 0) return std::nullopt;
  return static_cast<double>(not_secure_lossy) / not_secure;
}

std::optional<double> ReplicationStats::p1() const {
  if (secure == 0) return std::nullopt;
  return static_cast<double>(secure_lossy) / secure;
}

double ReplicationStats::loss_fraction() const {
  return static_cast<double>(secure_lossy + not_secure_lossy) /
         (secure + not_secure);
}

ReplicationStats RunReplication(const SimConfig& config, int replication) {
  Validate(config);
  const std::uint64_t key =
      DeriveKey(config.seed, static_cast<std::uint64_t>(replication));
  SplitMix64 graph_rng(DeriveKey(key, kGraphStream));
  const Graph graph = GenerateGraph(config, graph_rng);

  const CounterStream state_draws(DeriveKey(key, kStateStream));
  std::vector<NodeState> states(config.n);
  for (std::uint32_t u = 0; u < config.n; ++u) {
    states[u] = state_draws.Uniform(u) < config.gamma ? NodeState::kSecure
                                                      : NodeState::kNotSecure;
  }
  const std::vector<std::uint8_t> lossy =
      Percolate(graph, states, config.epidemic,
                DeriveKey(key, kContagionStream), config.one_hop);

  ReplicationStats stats;
  for (std::uint32_t u = 0; u < config.n; ++u) {
    if (states[u] == NodeState::kSecure) {
      ++stats.secure;
      stats.secure_lossy += lossy[u];
    } else {
      ++stats.not_secure;
      stats.not_secure_lossy += lossy[u];
    }
  }
  return stats;
}

SimResult Run(const SimConfig& config) {
  Validate(config);
  SimResult result;
  Moments p0;
  Moments p1;
  Moments loss;
  for (int r = 0; r < config.replications; ++r) {
    const ReplicationStats stats = RunReplication(config, r);
    if (auto v = stats.p0()) p0.Add(*v);
    if (auto v = stats.p1()) p1.Add(*v);
    loss.Add(stats.loss_fraction());
    result.replications.push_back(stats);
  }
  if (p0.count > 0) {
    result.p0_hat = p0.Mean();
    result.stderr0 = p0.StdErr();
  }
  if (p1.count > 0) {
    result.p1_hat = p1.Mean();
    result.stderr1 = p1.StdErr();
  }
  result.used0 = p0.count;
  result.used1 = p1.count;
  result.loss_fraction = loss.Mean();
  return result;
}

}  // namespace secgame
