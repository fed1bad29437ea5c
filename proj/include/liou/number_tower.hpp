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

#ifndef LIOU_NUMBER_TOWER_HPP
#define LIOU_NUMBER_TOWER_HPP

// Denominator chains q_1 | q_2 | ... and exact rational truncations of
// zeta = sum_l 1/q_l together with its powers.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liou/bigmath.hpp"
#include "liou/keyvalue.hpp"

namespace liou {

enum class SequenceKind { ExplicitList, BasePower };

// Exponent rules for q_l = b^{a_l}.
enum class ExponentRule {
  Factorial,  // a_l = l!
  Geometric,  // a_l = r^l
  List,       // user-supplied strictly increasing exponents
};

// Generator of a denominator chain. Explicit lists are validated when
// constructed; base-power chains are materialized lazily per prefix.
class QSequenceSpec {
 public:
  static QSequenceSpec explicit_list(std::vector<Integer> terms);
  static QSequenceSpec factorial(unsigned long base);
  static QSequenceSpec geometric(unsigned long base, unsigned long ratio);
  static QSequenceSpec exponent_list(unsigned long base, std::vector<Integer> exponents);

  // Text form, see docs/spec-format.md.
  static QSequenceSpec parse(std::string_view text);
  static QSequenceSpec from_fields(const KeyValueDoc& doc);
  std::string serialize() const;
  // Short stable identifier, e.g. "base-power:10:factorial".
  std::string id() const;

  SequenceKind kind() const { return kind_; }
  unsigned long base() const { return base_; }
  ExponentRule rule() const { return rule_; }

  // Number of available terms, or nullopt when unbounded.
  std::optional<std::size_t> available() const;

  // a_l for base-power kinds (1-based).
  Integer exponent(std::size_t l) const;
  // q_l (1-based). Throws ResourceError when q_l would exceed the
  // materialization limit, ValidationError when l is past a finite list.
  Integer term(std::size_t l) const;

  // ln q_l, exact-arithmetic free for base-power kinds.
  double log_term(std::size_t l) const;

 private:
  QSequenceSpec() = default;
  void validate_list() const;

  SequenceKind kind_ = SequenceKind::BasePower;
  unsigned long base_ = 10;
  ExponentRule rule_ = ExponentRule::Factorial;
  unsigned long ratio_ = 2;
  std::vector<Integer> values_;  // terms (explicit) or exponents (List rule)
};

// Largest q_l (in bits) that term() will materialize.
inline constexpr double kMaxTermBits = 64.0 * 1024 * 1024;

std::vector<Integer> q_terms(const QSequenceSpec& spec, std::size_t count);

// zeta_N = sum_{l <= N} 1/q_l with a certified bound on |zeta - zeta_N|.
struct RationalTruncation {
  Rational value;
  std::size_t depth = 0;
  Rational tail_bound;
  // Largest convergent denominator that the truncation tail cannot distort
  // (q_{N-1} for chain-derived truncations; 1 when N = 1).
  Integer reliable_denominator = 1;
  std::string source;

  // Arbitrary exact rational with a caller-supplied tail bound.
  static RationalTruncation from_rational(Rational value, Rational tail_bound,
                                          Integer reliable_denominator,
                                          std::string source = "rational");
};

RationalTruncation truncate(const QSequenceSpec& spec, std::size_t depth);

// (zeta_N, zeta_N^2, ..., zeta_N^k) with per-entry tail bounds.
struct PowerVector {
  std::vector<Rational> entries;
  std::vector<Rational> tail_bounds;
  std::size_t k() const { return entries.size(); }
};

PowerVector powers(const RationalTruncation& t, std::size_t k);

// Index n with ln q_{n+1}/ln q_n > C and ln q_{n+2}/ln q_{n+1} > k+1.
struct GrowthWitness {
  std::size_t n = 0;
  double ratio1 = 0;
  double ratio2 = 0;
  // Exact ratios a_{n+1}/a_n, a_{n+2}/a_{n+1} for base-power kinds.
  std::optional<Rational> exact_ratio1;
  std::optional<Rational> exact_ratio2;
};

std::optional<GrowthWitness> check_growth(const QSequenceSpec& spec, std::size_t k,
                                          const Rational& C, std::size_t n_max);

}  // namespace liou

#endif  // LIOU_NUMBER_TOWER_HPP
