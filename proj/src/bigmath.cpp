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

#include "liou/bigmath.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "liou/error.hpp"

namespace liou {

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round(const Rational& q) { return floor(q + Rational(1, 2)); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::size_t decimal_digits(const Integer& z) {
  if (z == 0) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t n = mpz_sizeinbase(z.get_mpz_t(), 10);
  Integer t = pow(Integer(10), static_cast<unsigned long>(n - 1));
  Integer a = z < 0 ? Integer(-z) : z;
  return a < t ? n - 1 : n;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty number");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Integer p(text.substr(0, slash), 10);
      Integer d(text.substr(slash + 1), 10);
      if (d == 0) throw ValidationError("zero denominator in '" + text + "'");
      Rational r(p, d);
      r.canonicalize();
      return r;
    }
    std::string mant = text;
    long exp10 = 0;
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
      mant = text.substr(0, e);
      exp10 = std::stol(text.substr(e + 1));
    }
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw ValidationError("bad number '" + text + "'");
    if (mant[0] == '+') mant.erase(0, 1);
    Rational r{Integer(mant, 10)};
    Integer scale = pow(Integer(10), static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0) {
      r *= scale;
    } else {
      r /= scale;
    }
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationError("bad number '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ValidationError("number out of range '" + text + "'");
  }
}

double approx_log(const Integer& z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

double approx_log(const Rational& q) {
  return approx_log(Integer(q.get_num())) - approx_log(Integer(q.get_den()));
}

namespace {

// RAII wrapper for mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Outward enclosure of ln(q) at precision `prec`.
void log_bounds(const Rational& q, mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  Mpfr n_lo(prec), n_hi(prec), d_lo(prec), d_hi(prec);
  mpfr_set_z(n_lo.get(), q.get_num_mpz_t(), MPFR_RNDD);
  mpfr_set_z(n_hi.get(), q.get_num_mpz_t(), MPFR_RNDU);
  mpfr_set_z(d_lo.get(), q.get_den_mpz_t(), MPFR_RNDD);
  mpfr_set_z(d_hi.get(), q.get_den_mpz_t(), MPFR_RNDU);
  mpfr_log(n_lo.get(), n_lo.get(), MPFR_RNDD);
  mpfr_log(n_hi.get(), n_hi.get(), MPFR_RNDU);
  mpfr_log(d_lo.get(), d_lo.get(), MPFR_RNDD);
  mpfr_log(d_hi.get(), d_hi.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), n_lo.get(), d_hi.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), n_hi.get(), d_lo.get(), MPFR_RNDU);
}

constexpr mpfr_prec_t kStartPrecision = 96;
constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

}  // namespace

Enclosure log_ratio_enclosure(const Rational& a, const Rational& b, double tolerance) {
  if (a <= 0) throw DomainError("log_ratio: numerator argument must be positive");
  if (b <= 1) throw DomainError("log_ratio: base argument must exceed 1");
  if (a == 1) return {0.0, 0.0};
  if (a == b) return {1.0, 1.0};
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Mpfr a_lo(prec), a_hi(prec), b_lo(prec), b_hi(prec), r_lo(prec), r_hi(prec);
    log_bounds(a, prec, a_lo, a_hi);
    log_bounds(b, prec, b_lo, b_hi);
    if (mpfr_sgn(b_lo.get()) <= 0) continue;
    if (mpfr_sgn(a_lo.get()) >= 0) {
      mpfr_div(r_lo.get(), a_lo.get(), b_hi.get(), MPFR_RNDD);
      mpfr_div(r_hi.get(), a_hi.get(), b_lo.get(), MPFR_RNDU);
    } else if (mpfr_sgn(a_hi.get()) <= 0) {
      mpfr_div(r_lo.get(), a_lo.get(), b_lo.get(), MPFR_RNDD);
      mpfr_div(r_hi.get(), a_hi.get(), b_hi.get(), MPFR_RNDU);
    } else {
      mpfr_div(r_lo.get(), a_lo.get(), b_lo.get(), MPFR_RNDD);
      mpfr_div(r_hi.get(), a_hi.get(), b_lo.get(), MPFR_RNDU);
    }
    Enclosure e{mpfr_get_d(r_lo.get(), MPFR_RNDD), mpfr_get_d(r_hi.get(), MPFR_RNDU)};
    if (e.width() < tolerance * std::max(1.0, std::fabs(e.lo))) return e;
  }
  throw PrecisionError("log_ratio: enclosure did not tighten");
}

double log_ratio(const Rational& a, const Rational& b, double tolerance) {
  return log_ratio_enclosure(a, b, tolerance).mid();
}

double validated_log(const Rational& q, double tolerance) {
  if (q <= 0) throw DomainError("validated_log: argument must be positive");
  if (q == 1) return 0.0;
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Mpfr lo(prec), hi(prec);
    log_bounds(q, prec, lo, hi);
    double l = mpfr_get_d(lo.get(), MPFR_RNDD);
    double h = mpfr_get_d(hi.get(), MPFR_RNDU);
    if (h - l < tolerance * std::max(1.0, std::fabs(l))) return 0.5 * (l + h);
  }
  throw PrecisionError("validated_log: enclosure did not tighten");
}

std::vector<Integer> IntegerBasis::reduce(std::span<const Integer> v) const {
  if (v.size() != dim_) throw InternalError("IntegerBasis: dimension mismatch");
  std::vector<Integer> w(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::size_t p = pivots_[r];
    if (w[p] == 0) continue;
    Integer a = rows_[r][p];
    Integer b = w[p];
    Integer g = gcd(a, b);
    a /= g;
    b /= g;
    Integer content = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      w[i] = a * w[i] - b * rows_[r][i];
      content = gcd(content, w[i]);
    }
    if (content > 1) {
      for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    }
  }
  return w;
}

bool IntegerBasis::spans(std::span<const Integer> v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](const Integer& x) { return x == 0; });
}

bool IntegerBasis::add(std::span<const Integer> v) {
  auto w = reduce(v);
  auto it = std::find_if(w.begin(), w.end(), [](const Integer& x) { return x != 0; });
  if (it == w.end()) return false;
  pivots_.push_back(static_cast<std::size_t>(it - w.begin()));
  rows_.push_back(std::move(w));
  return true;
}

Integer determinant(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m) {
    if (row.size() != n) throw InternalError("determinant: matrix is not square");
  }
  auto a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace liou
