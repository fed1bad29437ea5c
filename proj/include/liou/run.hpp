// Copyright 2026 The liou Authors
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

#ifndef LIOU_RUN_HPP
#define LIOU_RUN_HPP

// Run configurations and the orchestration behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liou/constants_bridge.hpp"
#include "liou/number_tower.hpp"

namespace liou {

enum class RunMode { Trajectory, Witness, Verify, FullReport };
const char* to_string(RunMode m);

struct RunConfig {
  std::string preset;      // empty when the spec is given inline
  std::string spec_text;   // serialized QSequenceSpec
  std::vector<std::size_t> ks{1};
  RunMode mode = RunMode::Trajectory;
  Rational q_min = 10;
  Rational q_max = 10000;
  std::size_t q_points = 40;
  bool transitions = true;
  double tail_fraction = 0.5;
  std::uint64_t budget = 10'000'000;
  std::string out_dir = "liou-out";
  std::size_t witness_n_max = 5;
  std::size_t truncation_depth = 4;
  SuiteMode suite = SuiteMode::LiouvilleTarget;
  unsigned threads = 0;

  // key=value text; see docs/spec-format.md. Throws ValidationError.
  static RunConfig parse(std::string_view text);
  std::string serialize() const;
  QSequenceSpec spec() const;
  void validate() const;
};

// Named sequence specs: classic-L (base 10) and cantor-L (base 3), both with
// factorial exponents. Throws ValidationError for unknown names.
std::map<std::string, QSequenceSpec> presets();
QSequenceSpec preset(const std::string& name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitHardFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> artifacts;  // file names inside out_dir
  bool complete = true;
  std::string message;
};

// Executes the configured mode and writes artifacts plus a MANIFEST with
// SHA-256 hashes. Input errors return before anything is written.
RunOutcome run(const RunConfig& config);
RunOutcome run_text(std::string_view config_text);

std::string sha256_hex(std::string_view data);

}  // namespace liou

#endif  // LIOU_RUN_HPP
