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

#ifndef LIOU_CONSTANTS_BRIDGE_HPP
#define LIOU_CONSTANTS_BRIDGE_HPP

// Approximation constants from psi extremes, the classical bound tables, and
// the inequality suites that every estimate must respect.
//
// Extended reals are plain doubles: +inf is a legitimate value and the
// conventions 1/0 = inf, 1/inf = 0 are applied by reciprocal().

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liou/bigmath.hpp"
#include "liou/minima_engine.hpp"
#include "liou/number_tower.hpp"

namespace liou {

double reciprocal(double x);

// (1 + lambda)(1 + psi) = (k+1)/k. psi = -1 maps to +inf.
double lambda_from_psi(double psi, std::size_t k);
double psi_from_lambda(double lambda, std::size_t k);

struct SpectrumEstimates {
  std::size_t k = 0;
  std::vector<double> lambda;      // from psi lower extremes
  std::vector<double> lambda_hat;  // from psi upper extremes
  std::vector<double> w;           // linear-form constants, filled by linear_form_constants
  std::vector<double> w_hat;
  std::vector<double> psi_lower;
  std::vector<double> psi_upper;
  std::string source;  // trajectory id and window

  static SpectrumEstimates from_extremes(std::size_t k, std::vector<double> psi_lower,
                                         std::vector<double> psi_upper, std::string source = {});
  static SpectrumEstimates from_trajectory(const Trajectory& t);
};

// w_{k,j} = 1/lambda_hat_{k,k+2-j},  w_hat_{k,j} = 1/lambda_{k,k+2-j}.
SpectrumEstimates linear_form_constants(SpectrumEstimates est);

// Exact extended rational: nullopt means +inf.
using ExtRational = std::optional<Rational>;
double to_double(const ExtRational& v);
std::string to_string(const ExtRational& v);

struct SpectrumBounds {
  std::size_t k = 0;
  std::vector<ExtRational> chi;           // lower bounds for lambda_{k,j}
  std::vector<ExtRational> phi;           // lower bounds for lambda_hat_{k,j}
  std::vector<ExtRational> lambda_upper;  // 1/(j-1)
  std::vector<ExtRational> lambda_hat_upper;  // 1/j for j <= k, 1/k for j = k+1
  Rational uniform_cap;                   // ceil(k/2)^{-1}
};

SpectrumBounds bounds_table(std::size_t k);

enum class CheckStatus { Pass, Warn, Fail, NotApplicable };
const char* to_string(CheckStatus s);

struct CheckEntry {
  std::string id;
  CheckStatus status = CheckStatus::NotApplicable;
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  bool hard = false;  // failures of hard rules are never softened to warnings
  std::string note;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool passed() const;   // no Fail entries
  std::size_t count(CheckStatus s) const;
  const CheckEntry* find(const std::string& id) const;
  // `id status lhs rhs` per line.
  std::string to_text() const;
  // key=value document, keys `<id>.status`, `<id>.lhs`, ...
  std::string to_keyvalue() const;
  void append(const CheckReport& other);
};

enum class SuiteMode { Generic, LiouvilleTarget };

inline constexpr double kSuiteTolerance = 1e-9;
inline constexpr double kPsiTolerance = 1e-6;
inline constexpr double kWarnSlack = 0.05;

// Evaluates the classical inequalities between the lambda constants for every
// k in `ks`. Estimates for ks not present produce NotApplicable entries.
CheckReport check_inequality_suite(const std::map<std::size_t, SpectrumEstimates>& estimates,
                                   const std::vector<std::size_t>& ks, SuiteMode mode);

// psi-level inequalities on (psi_lower, psi_upper) extremes for dimension k.
CheckReport psi_level_suite(std::size_t k, const std::vector<double>& psi_lower,
                            const std::vector<double>& psi_upper);
CheckReport psi_level_suite(const Trajectory& t);

// Irrationality exponent estimate from the continued fraction of zeta_N.
struct IrrationalityEstimate {
  // 2 + max_n ln a_{n+1} / ln q_n over the reliable convergents p_n/q_n.
  double estimate = 0;
  // ln(1/|zeta_N - p/q|) / ln q at the best convergent.
  double gap_exponent = 0;
  Integer best_p;
  Integer best_q;
  std::size_t convergents_used = 0;
};

IrrationalityEstimate irrationality_exponent(const RationalTruncation& t, std::size_t depth);

}  // namespace liou

#endif  // LIOU_CONSTANTS_BRIDGE_HPP
