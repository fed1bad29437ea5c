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

#include "liou/run.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "liou/error.hpp"
#include "liou/keyvalue.hpp"
#include "liou/minima_engine.hpp"
#include "liou/witness_lab.hpp"

namespace liou {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Trajectory: return "trajectory";
    case RunMode::Witness: return "witness";
    case RunMode::Verify: return "verify";
    case RunMode::FullReport: return "full-report";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ValidationError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto v = parse_u64("k", item);
    if (v == 0 || v > 16) throw ValidationError("k: values must lie in 1..16");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RunMode parse_mode(const std::string& text) {
  for (RunMode m : {RunMode::Trajectory, RunMode::Witness, RunMode::Verify, RunMode::FullReport}) {
    if (text == to_string(m)) return m;
  }
  throw ValidationError("mode: expected trajectory, witness, verify or full-report, got '" + text + "'");
}

const char* suite_name(SuiteMode m) {
  return m == SuiteMode::Generic ? "generic" : "liouville-target";
}

bool is_spec_key(const std::string& key) {
  return key == "kind" || key == "base" || key == "exponent_rule" || key == "terms";
}

// log10 of a rational, snapped to an integer when it is one.
double log10_of(const Rational& q) {
  double v = log_ratio(q, Rational(10));
  double r = std::round(v);
  if (std::fabs(v - r) < 1e-12) return r;
  return v;
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  const auto doc = KeyValueDoc::parse(text);
  RunConfig c;
  KeyValueDoc spec_fields;
  bool have_spec = false;
  for (const auto& [key, value] : doc.entries()) {
    if (is_spec_key(key)) {
      spec_fields.set(key, value);
      have_spec = true;
    } else if (key == "preset") {
      c.preset = value;
    } else if (key == "k") {
      c.ks = parse_k_list(value);
    } else if (key == "mode") {
      c.mode = parse_mode(value);
    } else if (key == "q_min") {
      c.q_min = parse_rational(value);
    } else if (key == "q_max") {
      c.q_max = parse_rational(value);
    } else if (key == "q_points") {
      c.q_points = parse_u64(key, value);
    } else if (key == "transitions") {
      c.transitions = parse_bool(key, value);
    } else if (key == "tail_fraction") {
      c.tail_fraction = parse_double(key, value);
    } else if (key == "budget") {
      c.budget = parse_u64(key, value);
    } else if (key == "out_dir") {
      c.out_dir = value;
    } else if (key == "witness_n_max") {
      c.witness_n_max = parse_u64(key, value);
    } else if (key == "truncation_depth") {
      c.truncation_depth = parse_u64(key, value);
    } else if (key == "suite") {
      if (value == "generic") {
        c.suite = SuiteMode::Generic;
      } else if (value == "liouville-target") {
        c.suite = SuiteMode::LiouvilleTarget;
      } else {
        throw ValidationError("suite: expected generic or liouville-target");
      }
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(parse_u64(key, value));
    } else {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  if (have_spec) {
    if (!c.preset.empty()) throw ValidationError("config: give either a preset or spec keys, not both");
    c.spec_text = QSequenceSpec::from_fields(spec_fields).serialize();
  }
  c.validate();
  return c;
}

std::string RunConfig::serialize() const {
  KeyValueDoc doc;
  if (!preset.empty()) {
    doc.set("preset", preset);
  } else {
    for (const auto& [key, value] : KeyValueDoc::parse(spec_text).entries()) doc.set(key, value);
  }
  std::string klist;
  for (std::size_t i = 0; i < ks.size(); ++i) klist += (i ? "," : "") + std::to_string(ks[i]);
  doc.set("k", klist);
  doc.set("mode", to_string(mode));
  doc.set("q_min", to_string(q_min));
  doc.set("q_max", to_string(q_max));
  doc.set("q_points", std::to_string(q_points));
  doc.set("transitions", transitions ? "true" : "false");
  doc.set("tail_fraction", fmt(tail_fraction));
  doc.set("budget", std::to_string(budget));
  doc.set("out_dir", out_dir);
  doc.set("witness_n_max", std::to_string(witness_n_max));
  doc.set("truncation_depth", std::to_string(truncation_depth));
  doc.set("suite", suite_name(suite));
  return doc.serialize();
}

QSequenceSpec RunConfig::spec() const {
  if (!preset.empty()) return liou::preset(preset);
  if (spec_text.empty()) throw ValidationError("config: a preset or a spec is required");
  return QSequenceSpec::parse(spec_text);
}

void RunConfig::validate() const {
  (void)spec();
  if (ks.empty()) throw ValidationError("k: at least one value is required");
  if (budget == 0) throw ValidationError("budget must be positive");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw ValidationError("tail_fraction must lie in (0, 1]");
  }
  if (out_dir.empty()) throw ValidationError("out_dir must not be empty");
  const bool needs_grid = mode != RunMode::Witness;
  if (needs_grid) {
    if (q_min <= 1) throw ValidationError("q_min must exceed 1");
    if (q_max < q_min) throw ValidationError("q_max must be at least q_min");
    if (q_points == 0) throw ValidationError("q_points must be positive");
    if (truncation_depth == 0) throw ValidationError("truncation_depth must be positive");
    auto avail = spec().available();
    if (avail && *avail < truncation_depth) {
      throw ValidationError("truncation_depth exceeds the number of spec terms");
    }
  }
  if (mode == RunMode::Witness || mode == RunMode::FullReport) {
    if (witness_n_max == 0) throw ValidationError("witness_n_max must be positive");
  }
}

std::map<std::string, QSequenceSpec> presets() {
  std::map<std::string, QSequenceSpec> out;
  out.emplace("classic-L", QSequenceSpec::factorial(10));
  // Digits 0/2 in base 3 would double the sum; a rational factor leaves all
  // constants unchanged, so the base-3 chain itself is used.
  out.emplace("cantor-L", QSequenceSpec::factorial(3));
  return out;
}

QSequenceSpec preset(const std::string& name) {
  auto all = presets();
  auto it = all.find(name);
  if (it == all.end()) throw ValidationError("unknown preset '" + name + "'");
  return it->second;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw ResourceError("cannot write " + (dir_ / name).string());
    hashes_[name] = sha256_hex(content);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, hash] : hashes_) out.push_back(name);
    return out;
  }

  void manifest(bool complete, const std::string& note) {
    std::string text = "complete=" + std::string(complete ? "true" : "false") + "\n";
    if (!note.empty()) text += "note=" + note + "\n";
    for (const auto& [name, hash] : hashes_) text += hash + "  " + name + "\n";
    std::ofstream out(dir_ / "MANIFEST", std::ios::binary | std::ios::trunc);
    out << text;
  }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> hashes_;
};

struct KRun {
  std::size_t k = 0;
  std::optional<Trajectory> trajectory;
  std::optional<SpectrumEstimates> estimates;
  std::vector<WitnessFamily> families;
  std::vector<Certificate> certificates;
};

struct Orchestrator {
  const RunConfig& cfg;
  QSequenceSpec spec;
  ArtifactWriter& out;
  std::map<std::size_t, KRun> runs;
  bool hard_failure = false;
  bool missing_samples = false;
  std::vector<std::string> notes;

  void trajectories(bool write) {
    const auto t = truncate(spec, cfg.truncation_depth);
    auto grid = log_uniform_grid(log10_of(cfg.q_min), log10_of(cfg.q_max), cfg.q_points);
    const auto lo = QValue::of(cfg.q_min);
    const auto hi = QValue::of(cfg.q_max);
    if (cfg.transitions) grid = merge_grids(std::move(grid), transition_samples(spec, lo, hi));
    for (std::size_t k : cfg.ks) {
      auto target = ApproxTarget::from_truncation(t, k);
      TrajectoryOptions opt;
      opt.budget = cfg.budget;
      opt.tail_fraction = cfg.tail_fraction;
      opt.threads = cfg.threads;
      opt.witness_candidates = chain_candidates(spec, t, k);
      auto traj = psi_trajectory(target, grid, opt);
      for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        if (!traj.samples[i].result) {
          missing_samples = true;
          notes.push_back("k=" + std::to_string(k) + " sample " + std::to_string(i) + ": " +
                          traj.samples[i].error);
        }
      }
      auto& r = runs[k];
      r.k = k;
      if (traj.has_extremes()) r.estimates = linear_form_constants(SpectrumEstimates::from_trajectory(traj));
      if (write) {
        out.write("trajectory_k" + std::to_string(k) + ".csv", traj.to_csv());
        out.write("witnesses_k" + std::to_string(k) + ".txt", traj.witness_dump());
      }
      r.trajectory = std::move(traj);
    }
  }

  void witnesses() {
    for (std::size_t k : cfg.ks) {
      auto& r = runs[k];
      r.k = k;
      std::string summary;
      std::string eta_csv = "n,j,eta,target,independent\n";
      for (std::size_t n = 1; n <= cfg.witness_n_max; ++n) {
        if (!admissible(spec, k, n)) continue;
        auto f = build_family(spec, k, n);
        auto c = certify(f, spec, 1);
        bool rounded = std::all_of(c.errors.begin(), c.errors.end(),
                                   [](const ErrorEntry& e) { return e.nearest; });
        if (!rounded || !c.triangular) {
          hard_failure = true;
          notes.push_back("k=" + std::to_string(k) + " n=" + std::to_string(n) +
                          ": nearest-integer or triangularity check failed");
        }
        const std::string stem = "certificate_k" + std::to_string(k) + "_n" + std::to_string(n);
        out.write(stem + ".txt", certificate_text(f, c, false));
        summary += certificate_text(f, c, true) + "\n";
        for (std::size_t j = 1; j <= k + 1; ++j) {
          eta_csv += std::to_string(n) + "," + std::to_string(j) + "," + fmt(c.eta[j - 1]) + "," +
                     fmt(c.eta_target[j - 1]) + "," + (c.independent() ? "true" : "false") + "\n";
        }
        r.families.push_back(std::move(f));
        r.certificates.push_back(std::move(c));
      }
      out.write("certificates_k" + std::to_string(k) + ".summary.txt", summary);
      out.write("eta_k" + std::to_string(k) + ".csv", eta_csv);
    }
  }

  CheckReport checks() {
    std::map<std::size_t, SpectrumEstimates> est;
    CheckReport psi;
    for (std::size_t k : cfg.ks) {
      const auto& r = runs[k];
      if (r.estimates) est.emplace(k, *r.estimates);
      if (r.trajectory && r.trajectory->has_extremes()) psi.append(psi_level_suite(*r.trajectory));
    }
    CheckReport report = check_inequality_suite(est, cfg.ks, cfg.suite);
    report.append(psi);
    for (const auto& e : report.entries) {
      if (e.hard && e.status == CheckStatus::Fail) hard_failure = true;
    }
    out.write("checks.txt", report.to_text());
    out.write("checks.kv", report.to_keyvalue());
    return report;
  }

  void summary(const CheckReport& report) {
    std::string md = "# liou report\n\n";
    md += "Sequence: `" + spec.id() + "`, truncation depth " + std::to_string(cfg.truncation_depth) +
          ", Q from " + to_string(cfg.q_min) + " to " + to_string(cfg.q_max) + ", tail window " +
          fmt(cfg.tail_fraction) + ".\n\n";
    md += "Predicted values for a Liouville number: lambda_{k,1} = inf, lambda_hat_{k,1} = 1/k, "
          "lambda_hat_{k,j} = 0 and 1/k <= lambda_{k,j} <= 1/(j-1) for j >= 2.\n\n";
    for (std::size_t k : cfg.ks) {
      const auto& r = runs[k];
      md += "## k = " + std::to_string(k) + "\n\n";
      if (r.estimates) {
        const auto& e = *r.estimates;
        const double inv_k = 1.0 / static_cast<double>(k);
        md += "| j | psi_lower | psi_upper | lambda | predicted lambda | lambda_hat | predicted "
              "lambda_hat | w | w_hat |\n";
        md += "|---|---|---|---|---|---|---|---|---|\n";
        for (std::size_t j = 1; j <= k + 1; ++j) {
          std::string pl = j == 1 ? "inf" : "[" + fmt(inv_k) + ", " + fmt(1.0 / static_cast<double>(j - 1)) + "]";
          std::string ph = j == 1 ? fmt(inv_k) : "0";
          md += "| " + std::to_string(j) + " | " + fmt(e.psi_lower[j - 1]) + " | " +
                fmt(e.psi_upper[j - 1]) + " | " + fmt(e.lambda[j - 1]) + " | " + pl + " | " +
                fmt(e.lambda_hat[j - 1]) + " | " + ph + " | " + fmt(e.w[j - 1]) + " | " +
                fmt(e.w_hat[j - 1]) + " |\n";
        }
        md += "\n";
      } else {
        md += "No exact-mode samples in the tail window.\n\n";
      }
      if (!r.families.empty()) {
        md += "| n | C achieved | det conclusive | independent | max error ratio |";
        for (std::size_t j = 1; j <= k + 1; ++j) md += " eta_" + std::to_string(j) + " |";
        md += "\n|---|---|---|---|---|";
        for (std::size_t j = 1; j <= k + 1; ++j) md += "---|";
        md += "\n";
        for (std::size_t i = 0; i < r.families.size(); ++i) {
          const auto& f = r.families[i];
          const auto& c = r.certificates[i];
          md += "| " + std::to_string(f.n) + " | " + fmt(f.c_achieved) + " | " +
                (c.conclusive ? "yes" : "no") + " | " + (c.independent() ? "yes" : "no") + " | " +
                fmt(c.max_ratio) + " |";
          for (double v : c.eta) md += " " + fmt(v) + " |";
          md += "\n";
        }
        md += "\neta_j targets: 1/(j-1), inf for j = 1.\n\n";
      }
    }
    md += "## Checks\n\n";
    md += std::to_string(report.count(CheckStatus::Pass)) + " pass, " +
          std::to_string(report.count(CheckStatus::Warn)) + " warn, " +
          std::to_string(report.count(CheckStatus::Fail)) + " fail, " +
          std::to_string(report.count(CheckStatus::NotApplicable)) + " not applicable. Hard failures: " +
          (hard_failure ? "yes" : "none") + ".\n";
    out.write("summary.md", md);
  }
};

}  // namespace

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  QSequenceSpec spec = QSequenceSpec::factorial(10);
  try {
    config.validate();
    spec = config.spec();
  } catch (const Error& e) {
    outcome.exit_code = kExitInput;
    outcome.complete = false;
    outcome.message = e.what();
    return outcome;
  }
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    outcome.exit_code = kExitInput;
    outcome.complete = false;
    outcome.message = "cannot create output directory: " + ec.message();
    return outcome;
  }
  ArtifactWriter writer(config.out_dir);
  Orchestrator orch{config, spec, writer, {}, false, false, {}};
  try {
    writer.write("config.txt", config.serialize());
    switch (config.mode) {
      case RunMode::Trajectory:
        orch.trajectories(true);
        break;
      case RunMode::Witness:
        orch.witnesses();
        break;
      case RunMode::Verify:
        orch.trajectories(false);
        orch.checks();
        break;
      case RunMode::FullReport: {
        orch.trajectories(true);
        orch.witnesses();
        auto report = orch.checks();
        orch.summary(report);
        break;
      }
    }
    if (orch.missing_samples) {
      outcome.exit_code = kExitResource;
      outcome.complete = false;
      outcome.message = "some samples are missing";
    } else if (orch.hard_failure) {
      outcome.exit_code = kExitHardFailure;
      outcome.message = "a hard rule failed";
    }
  } catch (const ResourceError& e) {
    outcome.exit_code = kExitResource;
    outcome.complete = false;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitHardFailure;
    outcome.complete = false;
    outcome.message = e.what();
  }
  std::string note = outcome.message;
  for (const auto& n : orch.notes) note += (note.empty() ? "" : "; ") + n;
  writer.manifest(outcome.complete, note);
  outcome.artifacts = writer.names();
  outcome.artifacts.push_back("MANIFEST");
  return outcome;
}

RunOutcome run_text(std::string_view config_text) {
  try {
    return run(RunConfig::parse(config_text));
  } catch (const Error& e) {
    RunOutcome outcome;
    outcome.exit_code = kExitInput;
    outcome.complete = false;
    outcome.message = e.what();
    return outcome;
  }
}

}  // namespace liou
