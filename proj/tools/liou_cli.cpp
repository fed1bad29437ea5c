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

// Command-line front end. Flags are folded into a key=value configuration
// that is handed to the library's C interface.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "liou/liou.h"

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Later keys override earlier ones; malformed lines are passed through so
// the library reports them.
void merge_file(const std::string& path, std::map<std::string, std::string>& keys,
                std::string& passthrough) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      passthrough += t + "\n";
      continue;
    }
    keys[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive minima, witness certificates and inequality checks for "
               "divisibility-chain Liouville numbers."};
  std::string preset, spec_file, config_file, k_list, mode, q_min, q_max, out_dir, suite;
  std::string tail_fraction;
  long long q_points = -1, budget = -1, witness_n_max = -1, truncation_depth = -1, threads = -1;
  bool no_transitions = false;

  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--preset", preset, "named sequence: classic-L or cantor-L");
  app.add_option("--spec-file", spec_file, "sequence spec in key=value form");
  app.add_option("--k", k_list, "dimension or comma-separated list, e.g. 1,2,3");
  app.add_option("--mode", mode, "trajectory, witness, verify or full-report");
  app.add_option("--q-min", q_min, "smallest Q (integer, p/q or decimal)");
  app.add_option("--q-max", q_max, "largest Q");
  app.add_option("--q-points", q_points, "log-uniform grid points");
  app.add_flag("--no-transitions", no_transitions, "skip extra samples at q_l^{1/2}, q_l, q_l^{3/2}");
  app.add_option("--tail-fraction", tail_fraction, "fraction of the grid used for extremes");
  app.add_option("--budget", budget, "maximum x values scanned per exact sample");
  app.add_option("--out-dir", out_dir, "artifact directory");
  app.add_option("--witness-n-max", witness_n_max, "largest witness family index");
  app.add_option("--truncation-depth", truncation_depth, "number of series terms kept");
  app.add_option("--suite", suite, "generic or liouville-target");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");
  CLI11_PARSE(app, argc, argv);

  std::map<std::string, std::string> keys;
  std::string passthrough;
  try {
    if (!config_file.empty()) merge_file(config_file, keys, passthrough);
    if (!spec_file.empty()) {
      keys.erase("preset");
      merge_file(spec_file, keys, passthrough);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) keys[key] = value;
  };
  auto set_num = [&](const char* key, long long value) {
    if (value >= 0) keys[key] = std::to_string(value);
  };
  if (!preset.empty()) {
    for (const char* spec_key : {"kind", "base", "exponent_rule", "terms"}) keys.erase(spec_key);
  }
  set("preset", preset);
  set("k", k_list);
  set("mode", mode);
  set("q_min", q_min);
  set("q_max", q_max);
  set_num("q_points", q_points);
  if (no_transitions) keys["transitions"] = "false";
  set("tail_fraction", tail_fraction);
  set_num("budget", budget);
  set("out_dir", out_dir);
  set_num("witness_n_max", witness_n_max);
  set_num("truncation_depth", truncation_depth);
  set("suite", suite);
  set_num("threads", threads);
  if (!keys.count("preset") && !keys.count("kind")) keys["preset"] = "classic-L";

  std::ostringstream text;
  for (const auto& [key, value] : keys) text << key << "=" << value << "\n";
  text << passthrough;

  int exit_code = 0;
  liou_status status = liou_run(text.str().c_str(), &exit_code);
  if (status != LIOU_OK) {
    std::cerr << "error: " << liou_last_error() << "\n";
    return status == LIOU_ERR_RESOURCE ? 3 : 1;
  }
  if (exit_code != 0) std::cerr << "liou: " << liou_last_error() << " (exit " << exit_code << ")\n";
  return exit_code;
}
