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

// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "liou/liou.h"

namespace {

template <typename F>
std::string fetch(F call) {
  size_t needed = 0;
  CHECK(call(nullptr, 0, &needed) == LIOU_ERR_BUFFER);
  std::vector<char> buf(needed + 1);
  REQUIRE(call(buf.data(), buf.size(), &needed) == LIOU_OK);
  return std::string(buf.data(), needed);
}

}  // namespace

TEST_CASE("spec handles") {
  CHECK(std::string(liou_version()).size() > 0);
  liou_spec* spec = nullptr;
  REQUIRE(liou_spec_preset("classic-L", &spec) == LIOU_OK);
  auto text = fetch([&](char* b, size_t c, size_t* n) { return liou_spec_serialize(spec, b, c, n); });
  auto term = fetch([&](char* b, size_t c, size_t* n) { return liou_spec_term(spec, 3, b, c, n); });
  CHECK(term == "1000000");

  liou_spec* again = nullptr;
  REQUIRE(liou_spec_parse(text.c_str(), &again) == LIOU_OK);
  auto text2 = fetch([&](char* b, size_t c, size_t* n) { return liou_spec_serialize(again, b, c, n); });
  CHECK(text == text2);
  liou_spec_free(again);

  size_t needed = 0;
  char small[2];
  CHECK(liou_spec_term(spec, 0, small, sizeof small, &needed) == LIOU_ERR_DOMAIN);
  CHECK(liou_spec_preset("missing", &again) == LIOU_ERR_INVALID);
  CHECK(again == nullptr);
  CHECK(std::string(liou_last_error()).size() > 0);
  CHECK(liou_spec_parse(nullptr, &again) == LIOU_ERR_NULL);
  liou_spec_free(spec);
  liou_spec_free(nullptr);
}

TEST_CASE("truncation, minima and trajectories") {
  liou_spec* spec = nullptr;
  REQUIRE(liou_spec_preset("classic-L", &spec) == LIOU_OK);
  liou_truncation* t = nullptr;
  REQUIRE(liou_truncate(spec, 3, &t) == LIOU_OK);
  auto value = fetch([&](char* b, size_t c, size_t* n) { return liou_truncation_value(t, b, c, n); });
  CHECK(value == "110001/1000000");

  double psi[2] = {0, 0};
  REQUIRE(liou_psi_enumerate(t, 1, "100", 1000000, psi) == LIOU_OK);
  CHECK(psi[0] <= 0.0);
  CHECK(psi[0] + psi[1] == doctest::Approx(0.0).epsilon(0.35));
  CHECK(liou_psi_enumerate(t, 0, "100", 1000000, psi) == LIOU_ERR_DOMAIN);
  CHECK(liou_psi_enumerate(t, 1, "1/2", 1000000, psi) != LIOU_OK);

  liou_truncation* t4 = nullptr;
  REQUIRE(liou_truncate(spec, 4, &t4) == LIOU_OK);
  double mu = 0;
  REQUIRE(liou_irrationality_exponent(t4, 64, &mu) == LIOU_OK);
  CHECK(mu == doctest::Approx(4.0));

  liou_trajectory* traj = nullptr;
  REQUIRE(liou_trajectory_compute(t4, 2, "10", "10000", 10, 10000000, &traj) == LIOU_OK);
  auto csv = fetch([&](char* b, size_t c, size_t* n) { return liou_trajectory_csv(traj, b, c, n); });
  CHECK(csv.rfind("logQ,psi_1,psi_2,psi_3,mode", 0) == 0);
  double lo[3], hi[3];
  REQUIRE(liou_trajectory_extremes(traj, lo, hi) == LIOU_OK);
  CHECK(lo[0] < 0.0);
  CHECK(csv.find("-0.4586") != std::string::npos);
  for (int i = 0; i < 3; ++i) CHECK(lo[i] <= hi[i]);
  CHECK(liou_trajectory_compute(t4, 2, "10", "5", 10, 100, &traj) == LIOU_ERR_DOMAIN);
  liou_trajectory_free(traj);
  liou_truncation_free(t);
  liou_truncation_free(t4);
  liou_spec_free(spec);
}

TEST_CASE("families and certificates") {
  liou_spec* spec = nullptr;
  REQUIRE(liou_spec_preset("classic-L", &spec) == LIOU_OK);
  liou_family* f = nullptr;
  REQUIRE(liou_family_build(spec, 1, 2, &f) == LIOU_OK);
  auto e22 = fetch([&](char* b, size_t c, size_t* n) { return liou_family_entry(f, 2, 2, b, c, n); });
  CHECK(e22 == "11000100");
  int conclusive = -1, independent = -1;
  REQUIRE(liou_family_det_certificate(f, &conclusive, &independent) == LIOU_OK);
  CHECK(conclusive == 1);
  CHECK(independent == 1);
  auto cert = fetch([&](char* b, size_t c, size_t* n) {
    return liou_family_certificate_text(f, 0, b, c, n);
  });
  CHECK(cert.find("det_exact=10000") != std::string::npos);
  size_t needed = 0;
  char buf[8];
  CHECK(liou_family_entry(f, 3, 1, buf, sizeof buf, &needed) == LIOU_ERR_DOMAIN);
  liou_family_free(f);

  CHECK(liou_family_build(spec, 1, 0, &f) == LIOU_ERR_DOMAIN);
  CHECK(f == nullptr);
  liou_spec_free(spec);
}

TEST_CASE("exponent conversions and runs") {
  double lambda = 0, psi = 0;
  REQUIRE(liou_lambda_from_psi(-0.5, 1, &lambda) == LIOU_OK);
  CHECK(lambda == doctest::Approx(3.0));
  REQUIRE(liou_psi_from_lambda(lambda, 1, &psi) == LIOU_OK);
  CHECK(psi == doctest::Approx(-0.5));
  CHECK(liou_lambda_from_psi(-1.5, 1, &lambda) == LIOU_ERR_DOMAIN);

  int code = -1;
  REQUIRE(liou_run("preset=nowhere\n", &code) == LIOU_OK);
  CHECK(code == 2);
  CHECK(std::string(liou_last_error()).find("nowhere") != std::string::npos);
}
