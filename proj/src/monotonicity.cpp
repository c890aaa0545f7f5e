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

#include "secgame/monotonicity.hpp"

namespace secgame {

nlohmann::json ToJson(const MonotonicityReport& report) {
  nlohmann::json grid = nlohmann::json::object();
  for (const auto& [name, values] : report.grid) grid[name] = values;

  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    nlohmann::json entry;
    if (v.x) entry["x"] = *v.x;
    if (v.v) entry["v"] = *v.v;
    if (v.l) entry["l"] = *v.l;
    if (v.gamma) entry["gamma"] = *v.gamma;
    entry["kind"] = v.kind;
    entry["value"] = v.value;
    if (v.lower_confidence) entry["lower_confidence"] = true;
    violations.push_back(std::move(entry));
  }

  nlohmann::json out;
  out["grid"] = std::move(grid);
  out["violations"] = std::move(violations);
  out["pass"] = report.pass;
  out["strict"] = report.strict;
  out["flat"] = report.flat;
  out["lower_confidence_cells"] = report.lower_confidence_cells;
  if (report.increasing_prefix_end) {
    out["increasing_prefix_end"] = *report.increasing_prefix_end;
  }
  return out;
}

}  // namespace secgame
