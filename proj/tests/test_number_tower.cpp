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

#include "liou/error.hpp"
#include "liou/number_tower.hpp"

using namespace liou;

namespace {

Integer ten_to(unsigned long e) { return pow(Integer(10), e); }

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("q_terms for factorial chains") {
  CHECK(q_terms(QSequenceSpec::factorial(10), 3) == std::vector<Integer>{10, 100, 1000000});
  CHECK(q_terms(QSequenceSpec::factorial(3), 2) == std::vector<Integer>{3, 9});
  auto q = q_terms(QSequenceSpec::factorial(10), 5);
  CHECK(q[4] == ten_to(120));
  for (std::size_t i = 1; i < q.size(); ++i) {
    CHECK(q[i] > q[i - 1]);
    CHECK(mpz_divisible_p(q[i].get_mpz_t(), q[i - 1].get_mpz_t()) != 0);
  }
}

TEST_CASE("explicit lists are validated eagerly") {
  try {
    QSequenceSpec::explicit_list(ints({10, 25}));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("term 2") != std::string::npos);
  }
  CHECK_THROWS_AS(QSequenceSpec::explicit_list(ints({1, 2, 4})), ValidationError);
  CHECK_THROWS_AS(QSequenceSpec::explicit_list(ints({4, 4})), ValidationError);
  CHECK_THROWS_AS(QSequenceSpec::explicit_list({}), ValidationError);
  auto s = QSequenceSpec::explicit_list(ints({2, 4, 8, 16}));
  CHECK(s.available() == 4);
  CHECK(s.term(4) == 16);
  CHECK_THROWS_AS(s.term(5), ValidationError);
}

TEST_CASE("base-power exponent rules") {
  CHECK(QSequenceSpec::geometric(2, 3).term(2) == 512);
  CHECK_THROWS_AS(QSequenceSpec::factorial(1), ValidationError);
  auto lst = QSequenceSpec::exponent_list(10, ints({1, 3, 7}));
  CHECK(lst.term(3) == ten_to(7));
  CHECK(lst.available() == 3);
  CHECK_THROWS_AS(QSequenceSpec::exponent_list(10, ints({1, 1})), ValidationError);
}

TEST_CASE("spec text round trip") {
  const char* texts[] = {
      "kind=base-power\nbase=10\nexponent_rule=factorial\n",
      "kind=base-power\nbase=3\nexponent_rule=geometric:2\n",
      "kind=base-power\nbase=7\nexponent_rule=list:1,2,5\n",
      "kind=explicit-list\nterms=2,6,30\n",
  };
  for (const char* t : texts) {
    auto s = QSequenceSpec::parse(t);
    CHECK(s.serialize() == t);
    CHECK(QSequenceSpec::parse(s.serialize()).id() == s.id());
  }
  CHECK(QSequenceSpec::factorial(10).id() == "base-power:10:factorial");
  CHECK_THROWS_AS(QSequenceSpec::parse("kind=base-power\nbase=10\n"), ValidationError);
  CHECK_THROWS_AS(QSequenceSpec::parse("kind=explicit-list\nterms=10,25\n"), ValidationError);
  CHECK_THROWS_AS(QSequenceSpec::parse("kind=other\n"), ValidationError);
  CHECK_THROWS_AS(QSequenceSpec::parse("kind=base-power\nbase=10\nexponent_rule=factorial\ncolor=red\n"),
                  ValidationError);
}

TEST_CASE("truncations") {
  auto t3 = truncate(QSequenceSpec::factorial(10), 3);
  CHECK(t3.value == Rational(110001, 1000000));
  CHECK(t3.tail_bound == Rational(Integer(1), ten_to(24) / 2));
  CHECK(truncate(QSequenceSpec::factorial(10), 1).value == Rational(1, 10));
  CHECK(truncate(QSequenceSpec::factorial(3), 2).value == Rational(4, 9));
  CHECK(t3.reliable_denominator == 100);
}

TEST_CASE("truncation properties on several chains") {
  const QSequenceSpec specs[] = {QSequenceSpec::factorial(10), QSequenceSpec::factorial(3),
                                 QSequenceSpec::geometric(2, 2),
                                 QSequenceSpec::explicit_list(ints({2, 6, 30, 210, 2310, 30030, 510510}))};
  for (const auto& spec : specs) {
    auto avail = spec.available();
    std::size_t max_n = avail ? *avail - 1 : 5;
    for (std::size_t n = 1; n <= max_n; ++n) {
      auto a = truncate(spec, n);
      auto b = truncate(spec, n + 1);
      CHECK(b.value - a.value == Rational(Integer(1), spec.term(n + 1)));
      CHECK(a.value > 0);
      CHECK(a.value < 1);
      // Denominator divides q_N.
      CHECK(mpz_divisible_p(spec.term(n).get_mpz_t(), a.value.get_den_mpz_t()) != 0);
      std::size_t top = avail ? std::min(*avail, n + 5) : n + 5;
      if (spec.kind() == SequenceKind::BasePower && spec.base() == 10) top = std::min<std::size_t>(top, 6);
      for (std::size_t m = n + 1; m <= top; ++m) {
        CHECK(abs(truncate(spec, m).value - a.value) <= a.tail_bound);
      }
    }
  }
}

TEST_CASE("powers") {
  auto t = truncate(QSequenceSpec::factorial(10), 3);
  auto p = powers(t, 2);
  Rational square(Integer(12100220001), ten_to(12));
  square.canonicalize();
  CHECK(p.entries[1] == square);
  CHECK(p.entries[1] == p.entries[0] * p.entries[0]);
  auto p1 = powers(truncate(QSequenceSpec::factorial(10), 1), 1);
  CHECK(p1.entries == std::vector<Rational>{Rational(1, 10)});
  auto p3 = powers(truncate(QSequenceSpec::factorial(3), 2), 3);
  CHECK(p3.entries == std::vector<Rational>{Rational(4, 9), Rational(16, 81), Rational(64, 729)});
  // Tail bound for the square is 2 (zeta_N + tail) tail.
  CHECK(p.tail_bounds[1] == 2 * (t.value + t.tail_bound) * t.tail_bound);
  // Soundness against a deeper truncation.
  auto deep = powers(truncate(QSequenceSpec::factorial(10), 5), 3);
  auto shallow = powers(truncate(QSequenceSpec::factorial(10), 3), 3);
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(abs(deep.entries[m] - shallow.entries[m]) <= shallow.tail_bounds[m]);
  }
}

TEST_CASE("check_growth") {
  auto g = check_growth(QSequenceSpec::factorial(10), 2, Rational(5), 20);
  REQUIRE(g.has_value());
  CHECK(g->n == 5);
  CHECK(*g->exact_ratio1 == 6);
  CHECK(*g->exact_ratio2 == 7);
  auto g1 = check_growth(QSequenceSpec::factorial(10), 1, Rational(1), 20);
  REQUIRE(g1.has_value());
  CHECK(g1->n == 1);
  CHECK(g1->ratio1 == doctest::Approx(2.0));
  CHECK(g1->ratio2 == doctest::Approx(3.0));
  CHECK_FALSE(check_growth(QSequenceSpec::explicit_list(ints({2, 4, 8, 16})), 1, Rational(10), 10));
  for (std::size_t k = 1; k <= 4; ++k) {
    for (long c : {1, 3, 10, 25}) {
      CHECK(check_growth(QSequenceSpec::factorial(10), k, Rational(c), 40).has_value());
    }
  }
}
