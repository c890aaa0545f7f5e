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

// Monte-Carlo contagion on finite random graphs, used to check the
// mean-field breach probabilities.
//
// Randomness is SplitMix64 throughout. Each replication r of a run gets
// its own key derived from (seed, r); within a replication the graph is
// drawn from a sequential stream while node states, direct losses and
// per-edge transmissions are counter-indexed draws (node id, CSR slot).
// The result is reproducible bit-for-bit and independent of traversal
// order, and runs that differ only in gamma share every draw, so the
// secure set grows monotonically with gamma.

#ifndef SECGAME_SIMULATE_HPP_
#define SECGAME_SIMULATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "secgame/epidemic.hpp"

namespace secgame {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Child key for stream `tag` under `key`.
std::uint64_t DeriveKey(std::uint64_t key, std::uint64_t tag);

// Uniform in [0, 1) from the top 53 bits.
inline double ToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Random access into a SplitMix64 sequence: draw i is Mix64(key + (i+1) G).
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}
  std::uint64_t Bits(std::uint64_t counter) const;
  double Uniform(std::uint64_t counter) const { return ToUnit(Bits(counter)); }

 private:
  std::uint64_t key_;
};

// Sequential SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t key) : state_(key) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  double Uniform() { return ToUnit((*this)()); }
  // Uniform integer in [0, bound).
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Undirected simple graph in CSR form. Slot e in [offsets[u], offsets[u+1])
// is the directed half-edge u -> neighbors[e].
struct Graph {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> neighbors;

  std::uint64_t Degree(std::uint32_t u) const {
    return offsets[u + 1] - offsets[u];
  }
  std::uint64_t EdgeCount() const { return neighbors.size() / 2; }

  // Drops self-loops and duplicate edges.
  static Graph FromEdges(
      std::uint32_t n,
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
};

// G(n, lambda / n).
struct ErdosRenyiGraph {
  double lambda = 1.0;
};

// Erased configuration model with i.i.d. degrees.
struct ConfigurationModelGraph {
  DegreeDistribution degree = PoissonDegree{};
};

using GraphSpec = std::variant<ErdosRenyiGraph, ConfigurationModelGraph>;

struct SimConfig {
  std::uint32_t n = 1000;
  GraphSpec graph = ErdosRenyiGraph{};
  EpidemicModel epidemic;  // degree field unused here
  double gamma = 0.0;
  int replications = 1;
  std::uint64_t seed = 0;
  // Only agents with a direct loss contaminate their neighbours.
  bool one_hop = false;
};

void Validate(const SimConfig& config);

// Each pair present independently with probability `edge_prob`, sampled by
// geometric skips in O(n + edges).
Graph GenerateErdosRenyi(std::uint32_t n, double edge_prob, SplitMix64& rng);

// Degrees drawn i.i.d. from `degree`, stubs matched uniformly, then
// self-loops and multi-edges erased. An odd stub total is fixed by
// redrawing one node's degree (and, if that keeps failing, dropping a
// stub).
Graph GenerateConfigurationModel(std::uint32_t n,
                                 const DegreeDistribution& degree,
                                 SplitMix64& rng);

Graph GenerateGraph(const SimConfig& config, SplitMix64& rng);

// Draws a degree from `degree` given a uniform u in [0, 1).
int SampleDegree(const DegreeDistribution& degree, double u);

enum class NodeState : std::uint8_t { kNotSecure = 0, kSecure = 1 };

// Direct losses at N nodes (draw `node` of stream tag 1 under `key` below
// p), then breadth-first contagion: a lossy node tries each incident edge
// once (draw `slot` of stream tag 2 below q or q_plus depending on the
// receiver). Returns 1 for lossy nodes.
std::vector<std::uint8_t> Percolate(const Graph& graph,
                                    std::span<const NodeState> states,
                                    const EpidemicModel& epidemic,
                                    std::uint64_t key, bool one_hop = false);

struct ReplicationStats {
  std::uint32_t secure = 0;
  std::uint32_t secure_lossy = 0;
  std::uint32_t not_secure = 0;
  std::uint32_t not_secure_lossy = 0;

  double gamma_hat() const;
  std::optional<double> p0() const;
  std::optional<double> p1() const;
  double loss_fraction() const;
};

// One replication of `config` (graph, states and contagion).
ReplicationStats RunReplication(const SimConfig& config, int replication);

struct SimResult {
  // Missing when no replication had a node in the corresponding state.
  std::optional<double> p0_hat;
  std::optional<double> p1_hat;
  double stderr0 = 0.0;
  double stderr1 = 0.0;
  double loss_fraction = 0.0;
  int used0 = 0;  // replications contributing to p0_hat
  int used1 = 0;
  std::vector<ReplicationStats> replications;
};

SimResult Run(const SimConfig& config);

}  // namespace secgame

#endif  // SECGAME_SIMULATE_HPP_
