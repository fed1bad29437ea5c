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
#include <random>

#include "liou/error.hpp"
#include "liou/minima_engine.hpp"
#include "minima_oracle.hpp"

using namespace liou;

namespace {

Integer from_i128(oracle::i128 v) {
  std::string s;
  bool neg = v < 0;
  if (neg) v = -v;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  } while (v > 0);
  return Integer((neg ? "-" : "") + s);
}

ApproxTarget liouville(std::size_t depth, std::size_t k) {
  return ApproxTarget::from_truncation(truncate(QSequenceSpec::factorial(10), depth), k);
}

double log_fact(std::size_t n) {
  double s = 0;
  for (std::size_t i = 2; i <= n; ++i) s += std::log(static_cast<double>(i));
  return s;
}

void check_minkowski(const MinimaResult& r, std::size_t k) {
  REQUIRE(r.psi.size() == k + 1);
  CHECK(r.psi[0] >= -1.0 - 1e-12);
  CHECK(r.psi[0] <= 1e-12);
  double sum = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    if (j) CHECK(r.psi[j - 1] <= r.psi[j] + 1e-12);
    sum += r.psi[j];
  }
  CHECK(r.psi[k] <= 1.0 / static_cast<double>(k) + 1e-12);
  CHECK(sum <= 1e-12);
  CHECK(sum >= -log_fact(k + 1) / r.q.log() - 1e-12);
}

}  // namespace

TEST_CASE("point_exponent hand values") {
  auto t = ApproxTarget::from_rational(Rational(110001, 1000000), 1);
  std::vector<Integer> v{100, 11};
  auto q = QValue::power(Rational(10), Rational(8, 3));
  CHECK(std::fabs(point_exponent(t, q, v) - (-0.25)) < 1e-12);

  auto third = ApproxTarget::from_rational(Rational(1, 3), 1);
  std::vector<Integer> w{3, 1};
  CHECK(std::fabs(point_exponent(third, QValue::of(Rational(3)), w)) < 1e-12);

  for (std::size_t k = 1; k <= 3; ++k) {
    auto tk = ApproxTarget::from_rational(Rational(4, 9), k);
    std::vector<Integer> u(k + 1, Integer(0));
    u[1] = 1;
    CHECK(std::fabs(point_exponent(tk, QValue::of(Rational(10)), u) - 1.0 / static_cast<double>(k)) < 1e-12);
  }
  std::vector<Integer> zero{0, 0};
  CHECK_THROWS_AS(point_exponent(third, QValue::of(Rational(3)), zero), DomainError);
}

TEST_CASE("point_exponent follows the closed form across Q") {
  auto t = ApproxTarget::from_rational(Rational(31, 97), 2);
  std::vector<Integer> v{97, 31, 10};
  const double err = std::fabs(97.0 * 961.0 / 9409.0 - 10.0);
  for (long qv : {3L, 10L, 57L, 400L, 12345L}) {
    auto q = QValue::of(Rational(qv));
    double lq = std::log(static_cast<double>(qv));
    double expected = std::max(std::log(97.0) / lq - 1.0, std::log(err) / lq + 0.5);
    CHECK(std::fabs(point_exponent(t, q, v) - expected) < 1e-12);
  }
}

TEST_CASE("enumeration on small examples") {
  auto third = ApproxTarget::from_rational(Rational(1, 3), 1);
  auto r = successive_minima_enumerate(third, QValue::of(Rational(3)));
  CHECK(r.mode == MinimaMode::ExactEnumeration);
  CHECK(r.psi[0] == 0.0);
  CHECK(r.psi[1] == 0.0);
  REQUIRE(r.witnesses.size() == 2);
  CHECK(r.witnesses[0].coordinates() == IntVector{1, 0});
  // (2,1) ties with (3,1) at nu = 0 and precedes it in (|x|, y) order.
  CHECK(r.witnesses[1].coordinates() == IntVector{2, 1});
  std::vector<Integer> w31{3, 1};
  CHECK(point_exponent(third, QValue::of(Rational(3)), w31) == doctest::Approx(0.0));

  auto l = ApproxTarget::from_rational(Rational(110001, 1000000), 1);
  auto q100 = QValue::of(Rational(100));
  auto rl = successive_minima_enumerate(l, q100);
  CHECK(rl.psi[0] < 0.0);
  CHECK(rl.psi[1] >= 0.0);
  double prod = std::pow(100.0, rl.psi[0] + rl.psi[1]);
  CHECK(prod >= 0.5 - 1e-12);
  CHECK(prod <= 1.0 + 1e-12);

  auto nine = ApproxTarget::from_rational(Rational(4, 9), 2);
  auto r9 = successive_minima_enumerate(nine, QValue::of(Rational(10)));
  CHECK(r9.psi[0] <= 0.0);
  CHECK(r9.psi[2] >= 0.0);
  CHECK(r9.psi[2] <= 0.5 + 1e-12);
  IntegerBasis basis(3);
  for (const auto& w : r9.witnesses) CHECK(basis.add(w.coordinates()));
  CHECK(basis.rank() == 3);
}

TEST_CASE("enumeration respects the budget") {
  auto t = liouville(4, 1);
  CHECK(enumeration_size(t, QValue::of(Rational(1000))) == 1000001);
  CHECK_THROWS_AS(successive_minima_enumerate(t, QValue::of(Rational(1000)), {1000}), ResourceError);
}

TEST_CASE("greedy enumeration agrees with the brute-force oracle") {
  std::mt19937_64 rng(20260115);
  for (int trial = 0; trial < 24; ++trial) {
    unsigned k = 1 + static_cast<unsigned>(trial % 2);
    std::int64_t d = std::uniform_int_distribution<std::int64_t>(2, k == 1 ? 1000 : 200)(rng);
    std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, d - 1)(rng);
    for (std::int64_t qv : {10, 50}) {
      oracle::Problem pr{p, d, k, qv};
      auto keys = oracle::minima_keys(pr);
      auto target = ApproxTarget::from_rational(Rational(p, d), k);
      auto res = successive_minima_enumerate(target, QValue::of(Rational(qv)));
      REQUIRE(res.witnesses.size() == k + 1);
      Integer scale = pow(Integer(qv), k) * pow(pow(Integer(d), k), k);
      for (unsigned j = 0; j <= k; ++j) {
        Rational scaled = res.witnesses[j].key * Rational(scale);
        CHECK(scaled == Rational(from_i128(keys[j])));
      }
    }
  }
}

TEST_CASE("the threshold oracle matches an all-subsets search") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    unsigned k = 1 + static_cast<unsigned>(trial % 2);
    std::int64_t d = std::uniform_int_distribution<std::int64_t>(2, 40)(rng);
    std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, d - 1)(rng);
    oracle::Problem pr{p, d, k, k == 1 ? 5 : 3};
    CHECK(oracle::minima_keys(pr) == oracle::minima_keys_subsets(pr));
  }
}

TEST_CASE("witness upper bounds") {
  auto t = liouville(4, 1);
  auto q12 = QValue::of(Rational(pow(Integer(10), 12)));
  std::vector<IntVector> cands;
  const auto& z = t.zeta_powers.entries[0];
  for (unsigned long e : {1UL, 2UL, 6UL, 24UL}) {
    Integer x = pow(Integer(10), e);
    cands.push_back({x, round(Rational(x) * z)});
  }
  auto r = psi_upper_bounds_from_witnesses(t, q12, cands);
  CHECK(r.mode == MinimaMode::WitnessUpperBound);
  CHECK(r.psi[0] <= -0.5 + 1e-12);

  auto t2 = ApproxTarget::from_rational(Rational(4, 9), 2);
  auto single = psi_upper_bounds_from_witnesses(t2, QValue::of(Rational(10)),
                                                {{Integer(1), Integer(0), Integer(0)}});
  std::vector<Integer> v{1, 0, 0};
  CHECK(single.psi[0] == doctest::Approx(point_exponent(t2, QValue::of(Rational(10)), v)).epsilon(1e-12));
  CHECK(std::isinf(single.psi[1]));
  CHECK(std::isinf(single.psi[2]));

  // Witness bounds never undercut exact values.
  auto third = ApproxTarget::from_rational(Rational(5, 13), 2);
  for (long qv : {5L, 20L, 60L}) {
    auto q = QValue::of(Rational(qv));
    auto exact = successive_minima_enumerate(third, q);
    auto bound = psi_upper_bounds_from_witnesses(third, q, default_witness_candidates(third));
    for (std::size_t j = 0; j < 3; ++j) CHECK(bound.psi[j] >= exact.psi[j] - 1e-12);
  }
}

TEST_CASE("trajectories") {
  auto third = ApproxTarget::from_rational(Rational(1, 3), 1);
  std::vector<QValue> grid{QValue::of(Rational(3)), QValue::of(Rational(9)), QValue::of(Rational(27))};
  auto tr = psi_trajectory(third, grid);
  REQUIRE(tr.samples.size() == 3);
  CHECK(tr.samples[0].result->psi[0] == doctest::Approx(0.0));
  CHECK(tr.samples[1].result->psi[0] == doctest::Approx(-0.5));
  CHECK(tr.samples[2].result->psi[0] == doctest::Approx(-2.0 / 3.0));

  auto empty = psi_trajectory(third, {});
  CHECK(empty.samples.empty());
  CHECK_FALSE(empty.has_extremes());

  CHECK_THROWS_AS(psi_trajectory(third, {grid[1], grid[0]}), DomainError);

  auto l2 = liouville(4, 2);
  auto traj = psi_trajectory(l2, log_uniform_grid(1.0, 4.0, 31));
  CHECK(traj.min_psi(1) <= -0.4);
  for (const auto& s : traj.samples) {
    REQUIRE(s.result.has_value());
    CHECK(s.result->mode == MinimaMode::ExactEnumeration);
    check_minkowski(*s.result, 2);
  }
  // Extremes bracket the window.
  for (std::size_t i = traj.tail_start; i < traj.samples.size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(traj.psi_lower[j] <= traj.samples[i].result->psi[j]);
      CHECK(traj.psi_upper[j] >= traj.samples[i].result->psi[j]);
    }
  }
  // Thread count does not change the output.
  TrajectoryOptions one;
  one.threads = 1;
  TrajectoryOptions four;
  four.threads = 4;
  auto g = log_uniform_grid(1.0, 3.0, 9);
  CHECK(psi_trajectory(l2, g, one).to_csv() == psi_trajectory(l2, g, four).to_csv());
}

TEST_CASE("CSV layout") {
  auto third = ApproxTarget::from_rational(Rational(1, 3), 1);
  auto tr = psi_trajectory(third, {QValue::of(Rational(9))});
  auto csv = tr.to_csv();
  CHECK(csv.rfind("logQ,psi_1,psi_2,mode\n", 0) == 0);
  CHECK(csv.find("2.19722457734,-0.5,") != std::string::npos);
  CHECK(csv.find("exact-enumeration") != std::string::npos);
}

TEST_CASE("grids") {
  auto g = log_uniform_grid(1.0, 4.0, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == QValue::of(Rational(10)));
  CHECK(g[3] == QValue::of(Rational(10000)));
  auto tr = transition_samples(QSequenceSpec::factorial(10), QValue::of(Rational(10)),
                               QValue::of(Rational(10000)));
  // 10, 10^{3/2}, 10^2, 10^3, 10^{9/2} is outside, 10^{6/2}.
  bool has_sqrt_10_cubed = false;
  for (const auto& q : tr) {
    if (q == QValue::power(Rational(10), Rational(3, 2))) has_sqrt_10_cubed = true;
  }
  CHECK(has_sqrt_10_cubed);
  auto merged = merge_grids(g, tr);
  for (std::size_t i = 1; i < merged.size(); ++i) CHECK(merged[i - 1] < merged[i]);
}

TEST_CASE("Minkowski checks on random rational targets") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    long d = std::uniform_int_distribution<long>(2, 500)(rng);
    long p = std::uniform_int_distribution<long>(1, d - 1)(rng);
    auto t = ApproxTarget::from_rational(Rational(p, d), k);
    for (long qv : {4L, 30L, 200L}) {
      auto r = successive_minima_enumerate(t, QValue::of(Rational(qv)));
      check_minkowski(r, k);
    }
  }
}
