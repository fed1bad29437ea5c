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

#ifndef LIOU_BIGMATH_HPP
#define LIOU_BIGMATH_HPP

// Exact integer/rational helpers on top of GMP, and validated logarithms on
// top of MPFR.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace liou {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);
Integer binomial(unsigned long n, unsigned long k);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Nearest integer, halves rounded up.
Integer round(const Rational& q);
Rational abs(const Rational& q);

std::size_t decimal_digits(const Integer& z);
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

// Parses "p", "p/q", or a decimal such as "3.25" / "1e4" into an exact
// rational. Throws ValidationError.
Rational parse_rational(const std::string& text);

// Natural logarithm in double precision; fine for screening, never for
// reported values. Argument must be positive.
double approx_log(const Integer& z);
double approx_log(const Rational& q);

// ln(a) / ln(b) for rationals a > 0, b > 1, evaluated with outward-rounded
// MPFR intervals whose precision is doubled until the enclosure is narrower
// than `tolerance` (relative once the ratio exceeds 1 in magnitude). Returns
// the midpoint.
double log_ratio(const Rational& a, const Rational& b, double tolerance = 1e-13);

// Enclosure [lo, hi] of ln(a) / ln(b) at the final precision.
struct Enclosure {
  double lo = 0;
  double hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};
Enclosure log_ratio_enclosure(const Rational& a, const Rational& b,
                              double tolerance = 1e-13);

// ln(q) with the same refinement policy.
double validated_log(const Rational& q, double tolerance = 1e-13);

// Fraction-free row echelon basis over the integers for exact rank tests.
class IntegerBasis {
 public:
  explicit IntegerBasis(std::size_t dimension) : dim_(dimension) {}

  // True iff v lies in the rational span of the rows added so far.
  bool spans(std::span<const Integer> v) const;
  // Adds v if independent; returns whether it was added.
  bool add(std::span<const Integer> v);

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dim_; }

 private:
  std::vector<Integer> reduce(std::span<const Integer> v) const;

  std::size_t dim_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

// Exact determinant by Bareiss elimination. `m` is row-major n×n.
Integer determinant(const std::vector<std::vector<Integer>>& m);

}  // namespace liou

#endif  // LIOU_BIGMATH_HPP
