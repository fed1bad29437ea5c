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

#ifndef LIOU_WITNESS_LAB_HPP
#define LIOU_WITNESS_LAB_HPP

// Explicit approximation vectors for divisibility-chain targets.
//
// With U = q_n, V = q_{n+1} and A = q_n * sum_{l<=n} 1/q_l, row j of E is the
// integer vector nearest to U^k V^{j-1} (1, zeta, ..., zeta^k):
//
//   E_{j,m} = sum_{i=0}^{min(m-1,j-1)} C(m-1,i) U^{k-(m-1-i)} A^{m-1-i} V^{j-1-i}.
//
// Modulo V the matrix is upper triangular with diagonal U^k, so
// det E = U^{k(k+1)} (mod V), which certifies independence whenever
// U^{k(k+1)} < V.

#include <cstddef>
#include <string>
#include <vector>

#include "liou/bigmath.hpp"
#include "liou/minima_engine.hpp"
#include "liou/number_tower.hpp"

namespace liou {

struct WitnessFamily {
  std::string spec_id;
  std::size_t k = 0;
  std::size_t n = 0;
  Integer U, V, A;
  std::vector<std::vector<Integer>> E;  // (k+1) x (k+1), row-major, 0-based
  double c_achieved = 0;                // ln V / ln U
};

// ln q_{n+2} > (k+1) ln q_{n+1}, decided exactly.
bool admissible(const QSequenceSpec& spec, std::size_t k, std::size_t n);

WitnessFamily build_family(const QSequenceSpec& spec, std::size_t k, std::size_t n);

// Truncation depth used for a family: n + 1 + n_extra.
std::size_t witness_depth(const WitnessFamily& f, std::size_t n_extra);

// Per entry: E_{j,m} is the nearest integer to U^k V^{j-1} zeta^{m-1}, with
// the truncation tail accounted for. Throws PrecisionError when the tail
// makes the answer ambiguous.
std::vector<std::vector<bool>> verify_round(const WitnessFamily& f, const QSequenceSpec& spec,
                                            std::size_t n_extra = 1);

struct ErrorEntry {
  std::size_t j = 0;  // 1-based row
  std::size_t m = 0;  // 1-based column
  Rational error;     // |E_{j,m} - U^k V^{j-1} zeta_N^{m-1}|
  double ratio = 0;   // error / (U^k / V)
  bool nearest = false;
};

struct Certificate {
  // Determinant part.
  Integer residue;   // det E mod V
  Integer expected;  // U^{k(k+1)} mod V
  bool conclusive = false;  // 0 < U^{k(k+1)} < V
  bool residue_matches = false;
  bool triangular = false;  // E mod V upper triangular with diagonal U^k
  Integer det_exact;
  bool has_determinant = false;

  // Error part.
  std::size_t depth = 0;
  std::vector<ErrorEntry> errors;
  double max_ratio = 0;
  std::vector<double> eta;         // per row j
  std::vector<double> eta_target;  // 1/(j-1), +inf for j = 1
  bool has_errors = false;

  bool independent() const;
};

Certificate det_certificate(const WitnessFamily& f);
Certificate error_and_exponents(const WitnessFamily& f, const QSequenceSpec& spec,
                                std::size_t n_extra = 1);
// Both parts; the depth is raised (up to 4 extra levels) while rounding is
// ambiguous.
Certificate certify(const WitnessFamily& f, const QSequenceSpec& spec, std::size_t n_extra = 1);

// Full text prints exact integers; compact prints digit counts instead.
std::string certificate_text(const WitnessFamily& f, const Certificate& c, bool compact);

// Candidate vectors for witness-mode minima: (x, round(x zeta_N^j)) for
// x = q_l^e (l < depth, 1 <= e <= k) and the rows of every family whose
// entries the truncation resolves.
std::vector<IntVector> chain_candidates(const QSequenceSpec& spec, const RationalTruncation& t,
                                        std::size_t k);

struct EtaSequence {
  std::size_t j = 0;
  double target = 0;
  std::vector<std::size_t> n;
  std::vector<double> eta;
  std::vector<std::string> rejected;  // families without independent rows
  bool non_decreasing = true;
  bool below_target = true;
};

// eta_j across families sharing a spec and k. Families whose rows are not
// shown to be independent are listed in `rejected`.
EtaSequence lambda_lower_bounds(const std::vector<WitnessFamily>& families,
                                const std::vector<Certificate>& certificates, std::size_t j);

}  // namespace liou

#endif  // LIOU_WITNESS_LAB_HPP
