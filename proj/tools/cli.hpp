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


// Command-line front end. Every subcommand reads a JSON config (optional)
// and flags of the same names, then writes CSV (or JSON lines) to stdout
// or --out.

#ifndef SECGAME_TOOLS_CLI_HPP_
#define SECGAME_TOOLS_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace secgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitConsistency = 4;

// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string Fnv1aHex(const std::string& text);

// Hash of a config document: FNV-1a over its compact dump with sorted
// keys, ignoring the output path.
std::string ConfigHash(const nlohmann::json& config);

// Shortest round-trip decimal form, independent of the C locale.
std::string FormatDouble(double value);

// Runs the CLI on `args` (without the program name). Data goes to `out`
// unless the config names an output file; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace secgame::cli

#endif  // SECGAME_TOOLS_CLI_HPP_
