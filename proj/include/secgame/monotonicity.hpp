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

#ifndef SECGAME_MONOTONICITY_HPP_
#define SECGAME_MONOTONICITY_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace secgame {

// A grid cell (or consecutive pair) where a monotonicity or sign condition
// fails. Only the coordinates meaningful for the check are set.
struct Violation {
  std::optional<double> x;
  std::optional<double> v;
  std::optional<double> l;
  std::optional<double> gamma;
  std::string kind;
  double value = 0.0;  // offending derivative or difference
  bool lower_confidence = false;
};

struct MonotonicityReport {
  // Named axes of the evaluated grid, in evaluation order.
  std::vector<std::pair<std::string, std::vector<double>>> grid;
  std::vector<Violation> violations;
  bool pass = true;
  // Every tested relation held strictly (not just weakly).
  bool strict = false;
  // Every tested relation was an equality within tolerance.
  bool flat = false;
  // Cells evaluated with one-sided stencils.
  int lower_confidence_cells = 0;
  // For one-dimensional checks: last grid point of the longest initial run
  // on which the tested function strictly increases.
  std::optional<double> increasing_prefix_end;
};

// { grid, violations: [ {x?, v?, l?, gamma?, kind, ...} ], pass, ... }
nlohmann::json ToJson(const MonotonicityReport& report);

}  // namespace secgame

#endif  // SECGAME_MONOTONICITY_HPP_
