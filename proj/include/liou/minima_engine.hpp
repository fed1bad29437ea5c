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

#ifndef LIOU_MINIMA_ENGINE_HPP
#define LIOU_MINIMA_ENGINE_HPP

// Successive-minima exponents psi_{k,j}(Q) of the parametric box
//
//   |x| <= Q^{1+nu},   max_j |zeta_j x - y_j| <= Q^{-1/k+nu}
//
// for zeta_j = zeta^j, computed by exhaustive enumeration (exact) or from a
// supplied list of candidate vectors (upper bounds).
//
// Ordering is exact. For Q = R^{1/s} with R rational, the least admissible nu
// of a vector v satisfies nu(v) = ln K(v) / (k ln R) with the rational key
//
//   K(v) = max( |x|^{ks} / R^k,  R * e(v)^{ks} ),  e(v) = max_j |zeta_j x - y_j|,
//
// so comparisons between vectors never touch a logarithm. Reported exponents
// come from validated MPFR enclosures.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liou/bigmath.hpp"
#include "liou/number_tower.hpp"

namespace liou {

// Q = radicand^(1/root), radicand > 1 rational.
class QValue {
 public:
  QValue() = default;
  static QValue of(const Rational& q);
  // base^exponent for rational base > 1 and rational exponent > 0.
  static QValue power(const Rational& base, const Rational& exponent);

  const Rational& radicand() const { return radicand_; }
  unsigned long root() const { return root_; }
  double log() const;     // validated ln Q
  std::string str() const;

  // Exact comparison.
  int compare(const QValue& other) const;
  bool operator==(const QValue& o) const { return compare(o) == 0; }
  bool operator<(const QValue& o) const { return compare(o) < 0; }

 private:
  Rational radicand_ = 2;
  unsigned long root_ = 1;
};

struct ApproxTarget {
  PowerVector zeta_powers;
  std::string id;

  std::size_t k() const { return zeta_powers.k(); }
  static ApproxTarget from_truncation(const RationalTruncation& t, std::size_t k);
  // Exact rational zeta (tail bounds zero).
  static ApproxTarget from_rational(const Rational& zeta, std::size_t k);
};

using IntVector = std::vector<Integer>;

struct LatticePoint {
  Integer x;
  IntVector y;
  double nu = 0;
  Rational key;  // K(v); equal keys <=> equal nu

  IntVector coordinates() const;
};

enum class MinimaMode { ExactEnumeration, WitnessUpperBound };
const char* to_string(MinimaMode m);

struct MinimaResult {
  QValue q;
  std::vector<double> psi;             // k+1 values, non-decreasing; +inf if unbounded
  std::vector<LatticePoint> witnesses;  // one per finite psi value
  MinimaMode mode = MinimaMode::ExactEnumeration;
};

// Exact ordering key K(v). Throws DomainError for v = 0.
Rational exponent_key(const ApproxTarget& target, const QValue& q, std::span<const Integer> v);
// nu from a key, correct to 1e-12.
double exponent_from_key(const Rational& key, const QValue& q, std::size_t k);
// nu(v): least nu for which v satisfies the box system, correct to 1e-12.
double point_exponent(const ApproxTarget& target, const QValue& q, std::span<const Integer> v);

// Same as point_exponent, but every |zeta_j x - y_j| is inflated by
// |x| * tail_j so the result bounds nu(v) for the untruncated zeta as well.
double certified_point_exponent(const ApproxTarget& target, const QValue& q,
                                std::span<const Integer> v);

// Number of x values, floor(Q^{1+1/k}) + 1, an exact enumeration would scan.
Integer enumeration_size(const ApproxTarget& target, const QValue& q);

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;
};

// Exact psi_{k,j}(Q). Scans x = 0..floor(Q^{1+1/k}) with
// y_j in {floor(zeta_j x) - 1, ..., ceil(zeta_j x) + 1}; that box holds every
// vector with nu <= 1/k, and psi_{k,k+1}(Q) <= 1/k always. The minimum
// weight independent set is maintained online (matroid exchange), and the
// scan stops once |x| alone forces nu above the current (k+1)-th minimum.
// Ties are broken by (|x|, y) lexicographically. Throws ResourceError when
// the scan would exceed the budget.
MinimaResult successive_minima_enumerate(const ApproxTarget& target, const QValue& q,
                                         const EnumerationOptions& options = {});

// Upper bounds psi_{k,j}(Q) <= value from the greedy independent selection
// among `candidates` (+inf when fewer than j are independent).
MinimaResult psi_upper_bounds_from_witnesses(const ApproxTarget& target, const QValue& q,
                                             const std::vector<IntVector>& candidates);

// Unit vectors and the nearest-integer vector at x = 1; always admissible.
std::vector<IntVector> default_witness_candidates(const ApproxTarget& target);

struct TrajectorySample {
  QValue q;
  double log_q = 0;
  std::optional<MinimaResult> result;
  std::string error;  // set when the sample is missing
};

struct TrajectoryOptions {
  std::uint64_t budget = 10'000'000;
  double tail_fraction = 0.5;
  // Extra candidates for samples that exceed the enumeration budget.
  std::vector<IntVector> witness_candidates;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct Trajectory {
  std::string target_id;
  std::size_t k = 0;
  std::vector<TrajectorySample> samples;
  // Extremes over the exact-mode samples in [tail_start, end).
  double tail_fraction = 0.5;
  std::size_t tail_start = 0;
  std::vector<double> psi_lower;  // per j: min over window
  std::vector<double> psi_upper;  // per j: max over window

  // Header `logQ,psi_1,...,psi_{k+1},mode`, 12 significant digits.
  std::string to_csv() const;
  // One witness vector per line: `sample j x,y_1,...,y_k`.
  std::string witness_dump() const;
  // Recomputes the extremes for a new window fraction in (0, 1].
  void set_tail_window(double fraction);
  bool has_extremes() const { return !psi_lower.empty(); }
  double min_psi(std::size_t j) const;  // over all samples, 1-based j
};

Trajectory psi_trajectory(const ApproxTarget& target, const std::vector<QValue>& grid,
                          const TrajectoryOptions& options = {});

// Grid helpers. Log-uniform points carry 12 significant digits (exact when
// the decimal exponent is an integer).
std::vector<QValue> log_uniform_grid(double log10_min, double log10_max, std::size_t points);
// q_l^alpha for alpha in {1/2, 1, 3/2} inside [lo, hi].
std::vector<QValue> transition_samples(const QSequenceSpec& spec, const QValue& lo,
                                       const QValue& hi);
// Sorted union without duplicates.
std::vector<QValue> merge_grids(std::vector<QValue> a, const std::vector<QValue>& b);

}  // namespace liou

#endif  // LIOU_MINIMA_ENGINE_HPP
