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

#include <doctest.h>

#include <cmath>
#include <set>

#include "liou/constants_bridge.hpp"
#include "liou/error.hpp"

using namespace liou;

namespace {

SpectrumEstimates from_lambdas(std::size_t k, std::vector<double> lam, std::vector<double> hat) {
  SpectrumEstimates e;
  e.k = k;
  e.lambda = std::move(lam);
  e.lambda_hat = std::move(hat);
  return linear_form_constants(e);
}

// Estimates equal to the lower-bound tables chi (ordinary) and phi (uniform).
SpectrumEstimates table_estimates(std::size_t k) {
  auto b = bounds_table(k);
  std::vector<double> lam, hat;
  for (std::size_t j = 0; j <= k; ++j) {
    lam.push_back(to_double(b.chi[j]));
    hat.push_back(to_double(b.phi[j]));
  }
  return from_lambdas(k, lam, hat);
}

void check_unique_ids(const CheckReport& r) {
  std::set<std::string> ids;
  for (const auto& e : r.entries) CHECK(ids.insert(e.id).second);
}

}  // namespace

TEST_CASE("lambda_from_psi hand values") {
  CHECK(std::isinf(lambda_from_psi(-1.0, 2)));
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(lambda_from_psi(0.0, k) == doctest::Approx(1.0 / static_cast<double>(k)).epsilon(1e-15));
    CHECK(std::fabs(lambda_from_psi(1.0 / static_cast<double>(k), k)) < 1e-15);
  }
  CHECK_THROWS_AS(lambda_from_psi(-1.5, 1), DomainError);
  CHECK_THROWS_AS(lambda_from_psi(0.0, 0), DomainError);
}

TEST_CASE("psi_from_lambda hand values and round trip") {
  CHECK(psi_from_lambda(kInfinity, 3) == -1.0);
  CHECK(std::fabs(psi_from_lambda(0.5, 2)) < 1e-15);
  CHECK(std::fabs(psi_from_lambda(1.0, 1)) < 1e-15);
  CHECK_THROWS_AS(psi_from_lambda(-0.1, 1), DomainError);
  for (std::size_t k = 1; k <= 4; ++k) {
    const double top = 1.0 / static_cast<double>(k);
    double prev = kInfinity;
    for (int i = 0; i <= 200; ++i) {
      double psi = -1.0 + 1e-6 + (top + 1.0 - 1e-6) * i / 200.0;
      double lam = lambda_from_psi(psi, k);
      CHECK(std::fabs(psi_from_lambda(lam, k) - psi) < 1e-12);
      CHECK(lam < prev);
      prev = lam;
    }
  }
}

TEST_CASE("linear-form duality") {
  auto e = from_lambdas(2, {kInfinity, 0.8, 0.5}, {0.5, 0.3, 0.0});
  CHECK(e.w[2] == doctest::Approx(2.0));      // 1 / lambda_hat_{2,1}
  CHECK(e.w_hat[0] == doctest::Approx(2.0));  // 1 / lambda_{2,3}
  CHECK(e.w_hat[2] == 0.0);                   // 1 / inf
  CHECK(std::isinf(e.w[0]));                  // 1 / 0
  // Applying the identities twice returns the original values.
  SpectrumEstimates back;
  back.k = 2;
  back.lambda.resize(3);
  back.lambda_hat.resize(3);
  for (std::size_t j = 1; j <= 3; ++j) {
    back.lambda[3 - j] = reciprocal(e.w_hat[j - 1]);
    back.lambda_hat[3 - j] = reciprocal(e.w[j - 1]);
  }
  CHECK(back.lambda == e.lambda);
  CHECK(back.lambda_hat == e.lambda_hat);
}

TEST_CASE("bounds_table values") {
  auto b3 = bounds_table(3);
  CHECK(b3.chi == std::vector<ExtRational>{Rational(1, 3), Rational(1, 3), Rational(0), Rational(0)});
  CHECK(b3.phi == std::vector<ExtRational>{Rational(1, 3), Rational(0), Rational(0), Rational(0)});
  CHECK(b3.uniform_cap == Rational(1, 2));
  auto b1 = bounds_table(1);
  CHECK(b1.chi == std::vector<ExtRational>{Rational(1), Rational(1)});
  CHECK(b1.uniform_cap == 1);
  auto b2 = bounds_table(2);
  CHECK_FALSE(b2.lambda_upper[0].has_value());
  CHECK(b2.lambda_upper[1] == Rational(1));
  CHECK(b2.lambda_upper[2] == Rational(1, 2));
  CHECK(b2.lambda_hat_upper == std::vector<ExtRational>{Rational(1), Rational(1, 2), Rational(1, 2)});
  CHECK(to_string(b2.lambda_upper[0]) == "inf");
}

TEST_CASE("inequality suite on the bound tables") {
  std::map<std::size_t, SpectrumEstimates> est;
  for (std::size_t k = 1; k <= 3; ++k) est.emplace(k, table_estimates(k));
  auto r = check_inequality_suite(est, {1, 2, 3}, SuiteMode::Generic);
  check_unique_ids(r);
  CHECK(r.count(CheckStatus::Fail) == 0);
  CHECK(r.count(CheckStatus::Warn) == 0);
  CHECK(r.count(CheckStatus::Pass) > 20);
  CHECK(r.passed());
}

TEST_CASE("Schmidt-Summerer rule with lambda_hat = 0.7") {
  std::map<std::size_t, SpectrumEstimates> est;
  est.emplace(2, from_lambdas(2, {1.0, 0.5, 0.3}, {0.7, 0.3, 0.2}));
  auto r = check_inequality_suite(est, {2}, SuiteMode::Generic);
  const auto* e = r.find("lambda-from-uniform.k2");
  REQUIRE(e != nullptr);
  CHECK(e->status == CheckStatus::Fail);
  CHECK(e->lhs == doctest::Approx(0.49 / 0.3));
  CHECK(r.find("uniform-cap.k2")->status == CheckStatus::Pass);
  est[2] = from_lambdas(2, {1.7, 0.5, 0.3}, {0.7, 0.3, 0.2});
  CHECK(check_inequality_suite(est, {2}, SuiteMode::Generic).find("lambda-from-uniform.k2")->status == CheckStatus::Pass);
}

TEST_CASE("Liouville targets and missing k") {
  const std::size_t k = 2;
  std::vector<double> lo{-1.0, 0.0, 0.25}, hi{0.0, 0.5, 0.5};
  auto est = linear_form_constants(SpectrumEstimates::from_extremes(k, lo, hi));
  CHECK(est.lambda_hat[1] == doctest::Approx(0.0));
  std::map<std::size_t, SpectrumEstimates> m{{k, est}};
  auto r = check_inequality_suite(m, {1, 2, 3}, SuiteMode::LiouvilleTarget);
  check_unique_ids(r);
  CHECK(r.find("liouville-hatj.k2")->status == CheckStatus::Pass);
  CHECK(r.find("liouville-hat1.k2")->status == CheckStatus::Pass);
  CHECK(r.find("liouville-infinite.k2")->status == CheckStatus::Pass);
  for (const char* id : {"lambda-chain.k1", "lambda-range.k3", "k1-uniform-cap.k2", "degree-multiple.m2.n1", "liouville-box.k3"}) {
    REQUIRE(r.find(id) != nullptr);
    CHECK(r.find(id)->status == CheckStatus::NotApplicable);
  }
}

TEST_CASE("infinite estimates") {
  std::map<std::size_t, SpectrumEstimates> m;
  m.emplace(1, from_lambdas(1, {kInfinity, 1.0}, {1.0, 0.0}));
  m.emplace(2, from_lambdas(2, {kInfinity, 0.9, 0.5}, {0.5, 0.0, 0.0}));
  auto g = check_inequality_suite(m, {1, 2}, SuiteMode::Generic);
  CHECK(g.find("lambda-chain.k2")->status == CheckStatus::Pass);
  CHECK(g.find("lambda-monotone-in-k.j1")->status == CheckStatus::Pass);  // inf <= inf
  CHECK(g.find("degree-multiple.m2.n1")->status == CheckStatus::NotApplicable);
  CHECK(g.find("lambda-range.k2")->status == CheckStatus::Pass);
  auto l = check_inequality_suite(m, {1, 2}, SuiteMode::LiouvilleTarget);
  CHECK(l.find("k1-transfer-equality.k2")->status == CheckStatus::Pass);
  CHECK(l.find("liouville-infinite.k1")->status == CheckStatus::Pass);
}

TEST_CASE("hard rules never soften") {
  std::map<std::size_t, SpectrumEstimates> m;
  m.emplace(1, from_lambdas(1, {1.0, 1.01}, {1.0, 0.0}));
  auto r = check_inequality_suite(m, {1}, SuiteMode::Generic);
  const auto* e = r.find("lambda-chain.k1");
  CHECK(e->hard);
  CHECK(e->status == CheckStatus::Fail);
  CHECK_FALSE(r.passed());
}

TEST_CASE("psi-level suite") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const double top = 1.0 / static_cast<double>(k);
    std::vector<double> lo(k + 1, top), hi(k + 1, top);
    lo[0] = -1.0;
    hi[0] = 0.0;
    auto r = psi_level_suite(k, lo, hi);
    check_unique_ids(r);
    auto* e23 = r.find("psi-sum.k" + std::to_string(k));
    CHECK(e23->status == CheckStatus::Pass);
    CHECK(std::fabs(e23->rhs) < 1e-12);

    std::vector<double> zl(k + 1, 0.0), zh(k + 1, 0.0);
    auto z = psi_level_suite(k, zl, zh);
    CHECK(z.count(CheckStatus::Pass) == z.entries.size());
    CHECK(std::fabs(z.find("psi-first-last.k" + std::to_string(k))->rhs) < 1e-15);
  }
  auto w = psi_level_suite(1, {-0.23, 0.17}, {-0.1, 0.2});
  CHECK(w.find("psi-sum.k1")->status == CheckStatus::Warn);
  auto f = psi_level_suite(1, {-0.3, 0.1}, {0.05, 0.2});
  CHECK(f.find("psi1-nonpositive.k1")->status == CheckStatus::Fail);
  CHECK(f.find("psi1-nonpositive.k1")->hard);
  CHECK_THROWS_AS(psi_level_suite(2, {0.0}, {0.0}), DomainError);
}

TEST_CASE("report serialization") {
  auto r = psi_level_suite(1, {0.0, 0.0}, {0.0, 0.0});
  auto text = r.to_text();
  CHECK(text.find("psi1-nonpositive.k1 pass 0 0") != std::string::npos);
  CHECK(text.find("verdict pass") != std::string::npos);
  auto kv = r.to_keyvalue();
  CHECK(kv.find("psi1-nonpositive.k1.status=pass\n") != std::string::npos);
  CHECK(kv.find("psi1-nonpositive.k1.hard=true\n") != std::string::npos);
}

TEST_CASE("irrationality exponent") {
  auto l = truncate(QSequenceSpec::factorial(10), 4);
  auto est = irrationality_exponent(l, 64);
  CHECK(std::fabs(est.estimate - 4.0) < 1e-6);
  CHECK(est.best_p == 110001);
  CHECK(est.best_q == 1000000);
  CHECK(std::fabs(est.gap_exponent - 4.0) < 1e-6);

  // Ratio of consecutive Fibonacci numbers: every partial quotient is 1.
  Integer f0 = 1, f1 = 1;
  for (int i = 0; i < 40; ++i) {
    Integer f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  auto golden = RationalTruncation::from_rational(Rational(f1, f0), Rational(Integer(1), f0 * f1), f0 / 2);
  auto g = irrationality_exponent(golden, 20);
  CHECK(std::fabs(g.estimate - 2.0) < 0.05);

  CHECK_THROWS_AS(irrationality_exponent(RationalTruncation::from_rational(Rational(1, 2), Rational(0), 1), 10),
                  DomainError);
  CHECK_THROWS_AS(irrationality_exponent(RationalTruncation::from_rational(Rational(3), Rational(0), 1), 10),
                  DomainError);
  CHECK_THROWS_AS(irrationality_exponent(l, 0), DomainError);
}
