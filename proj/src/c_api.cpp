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

#include "liou/liou.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "liou/constants_bridge.hpp"
#include "liou/error.hpp"
#include "liou/minima_engine.hpp"
#include "liou/number_tower.hpp"
#include "liou/run.hpp"
#include "liou/witness_lab.hpp"

struct liou_spec {
  liou::QSequenceSpec spec;
};

struct liou_truncation {
  liou::RationalTruncation t;
};

struct liou_family {
  liou::WitnessFamily family;
  std::optional<liou::Certificate> certificate;
};

struct liou_trajectory {
  liou::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

liou_status fail(liou_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
liou_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return LIOU_OK;
  } catch (const liou::Error& e) {
    liou_status s = LIOU_ERR_INTERNAL;
    switch (e.kind()) {
      case liou::ErrorKind::Validation: s = LIOU_ERR_INVALID; break;
      case liou::ErrorKind::Domain: s = LIOU_ERR_DOMAIN; break;
      case liou::ErrorKind::Resource: s = LIOU_ERR_RESOURCE; break;
      case liou::ErrorKind::Precision: s = LIOU_ERR_PRECISION; break;
      case liou::ErrorKind::Internal: s = LIOU_ERR_INTERNAL; break;
    }
    return fail(s, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LIOU_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(LIOU_ERR_INTERNAL, e.what());
  }
}

liou_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (!needed) return fail(LIOU_ERR_NULL, "needed must not be null");
  *needed = text.size();
  if (!buf || cap <= text.size()) {
    if (buf && cap > 0) buf[0] = '\0';
    return fail(LIOU_ERR_BUFFER, "buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return LIOU_OK;
}

}  // namespace

#define LIOU_REQUIRE(ptr) \
  do {                    \
    if (!(ptr)) return fail(LIOU_ERR_NULL, #ptr " must not be null"); \
  } while (0)

extern "C" {

const char* liou_last_error(void) { return g_last_error.c_str(); }

const char* liou_version(void) { return "0.1.0"; }

liou_status liou_spec_parse(const char* text, liou_spec** out) {
  LIOU_REQUIRE(text);
  LIOU_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new liou_spec{liou::QSequenceSpec::parse(text)}; });
}

liou_status liou_spec_preset(const char* name, liou_spec** out) {
  LIOU_REQUIRE(name);
  LIOU_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new liou_spec{liou::preset(name)}; });
}

void liou_spec_free(liou_spec* spec) { delete spec; }

liou_status liou_spec_serialize(const liou_spec* spec, char* buf, size_t cap, size_t* needed) {
  LIOU_REQUIRE(spec);
  std::string text;
  liou_status s = guarded([&] { text = spec->spec.serialize(); });
  return s == LIOU_OK ? copy_out(text, buf, cap, needed) : s;
}

liou_status liou_spec_term(const liou_spec* spec, size_t l, char* buf, size_t cap,
                           size_t* needed) {
  LIOU_REQUIRE(spec);
  if (l == 0) return fail(LIOU_ERR_DOMAIN, "terms are 1-based");
  std::string text;
  liou_status s = guarded([&] { text = spec->spec.term(l).get_str(); });
  return s == LIOU_OK ? copy_out(text, buf, cap, needed) : s;
}

liou_status liou_truncate(const liou_spec* spec, size_t depth, liou_truncation** out) {
  LIOU_REQUIRE(spec);
  LIOU_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new liou_truncation{liou::truncate(spec->spec, depth)}; });
}

void liou_truncation_free(liou_truncation* t) { delete t; }

liou_status liou_truncation_value(const liou_truncation* t, char* buf, size_t cap,
                                  size_t* needed) {
  LIOU_REQUIRE(t);
  return copy_out(t->t.value.get_str(), buf, cap, needed);
}

liou_status liou_irrationality_exponent(const liou_truncation* t, size_t depth,
                                        double* estimate) {
  LIOU_REQUIRE(t);
  LIOU_REQUIRE(estimate);
  return guarded([&] { *estimate = liou::irrationality_exponent(t->t, depth).estimate; });
}

liou_status liou_psi_enumerate(const liou_truncation* t, size_t k, const char* q,
                               unsigned long long budget, double* psi_out) {
  LIOU_REQUIRE(t);
  LIOU_REQUIRE(q);
  LIOU_REQUIRE(psi_out);
  return guarded([&] {
    if (k == 0) throw liou::DomainError("k must be positive");
    auto target = liou::ApproxTarget::from_truncation(t->t, k);
    auto result = liou::successive_minima_enumerate(
        target, liou::QValue::of(liou::parse_rational(q)), {budget});
    std::copy(result.psi.begin(), result.psi.end(), psi_out);
  });
}

liou_status liou_trajectory_compute(const liou_truncation* t, size_t k, const char* q_min,
                                    const char* q_max, size_t points,
                                    unsigned long long budget, liou_trajectory** out) {
  LIOU_REQUIRE(t);
  LIOU_REQUIRE(q_min);
  LIOU_REQUIRE(q_max);
  LIOU_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (k == 0) throw liou::DomainError("k must be positive");
    auto lo = liou::parse_rational(q_min);
    auto hi = liou::parse_rational(q_max);
    if (lo <= 1 || hi < lo) throw liou::DomainError("need 1 < q_min <= q_max");
    auto grid = liou::log_uniform_grid(liou::log_ratio(lo, liou::Rational(10)),
                                       liou::log_ratio(hi, liou::Rational(10)), points);
    auto target = liou::ApproxTarget::from_truncation(t->t, k);
    liou::TrajectoryOptions opt;
    opt.budget = budget;
    *out = new liou_trajectory{liou::psi_trajectory(target, grid, opt)};
  });
}

void liou_trajectory_free(liou_trajectory* traj) { delete traj; }

liou_status liou_trajectory_csv(const liou_trajectory* traj, char* buf, size_t cap,
                                size_t* needed) {
  LIOU_REQUIRE(traj);
  return copy_out(traj->traj.to_csv(), buf, cap, needed);
}

liou_status liou_trajectory_extremes(const liou_trajectory* traj, double* lower, double* upper) {
  LIOU_REQUIRE(traj);
  LIOU_REQUIRE(lower);
  LIOU_REQUIRE(upper);
  if (!traj->traj.has_extremes()) return fail(LIOU_ERR_DOMAIN, "trajectory has no exact samples");
  std::copy(traj->traj.psi_lower.begin(), traj->traj.psi_lower.end(), lower);
  std::copy(traj->traj.psi_upper.begin(), traj->traj.psi_upper.end(), upper);
  return LIOU_OK;
}

liou_status liou_family_build(const liou_spec* spec, size_t k, size_t n, liou_family** out) {
  LIOU_REQUIRE(spec);
  LIOU_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto f = liou::build_family(spec->spec, k, n);
    std::optional<liou::Certificate> cert;
    cert = liou::certify(f, spec->spec, 1);
    *out = new liou_family{std::move(f), std::move(cert)};
  });
}

void liou_family_free(liou_family* f) { delete f; }

liou_status liou_family_entry(const liou_family* f, size_t j, size_t m, char* buf, size_t cap,
                              size_t* needed) {
  LIOU_REQUIRE(f);
  const size_t size = f->family.k + 1;
  if (j == 0 || m == 0 || j > size || m > size) return fail(LIOU_ERR_DOMAIN, "index out of range");
  return copy_out(f->family.E[j - 1][m - 1].get_str(), buf, cap, needed);
}

liou_status liou_family_det_certificate(const liou_family* f, int* conclusive, int* independent) {
  LIOU_REQUIRE(f);
  LIOU_REQUIRE(conclusive);
  LIOU_REQUIRE(independent);
  *conclusive = f->certificate->conclusive ? 1 : 0;
  *independent = f->certificate->independent() ? 1 : 0;
  return LIOU_OK;
}

liou_status liou_family_certificate_text(const liou_family* f, int compact, char* buf, size_t cap,
                                         size_t* needed) {
  LIOU_REQUIRE(f);
  std::string text;
  liou_status s = guarded([&] { text = liou::certificate_text(f->family, *f->certificate, compact != 0); });
  return s == LIOU_OK ? copy_out(text, buf, cap, needed) : s;
}

liou_status liou_lambda_from_psi(double psi, size_t k, double* lambda) {
  LIOU_REQUIRE(lambda);
  return guarded([&] { *lambda = liou::lambda_from_psi(psi, k); });
}

liou_status liou_psi_from_lambda(double lambda, size_t k, double* psi) {
  LIOU_REQUIRE(psi);
  return guarded([&] { *psi = liou::psi_from_lambda(lambda, k); });
}

liou_status liou_run(const char* config_text, int* exit_code) {
  LIOU_REQUIRE(config_text);
  LIOU_REQUIRE(exit_code);
  return guarded([&] {
    auto outcome = liou::run_text(config_text);
    *exit_code = outcome.exit_code;
    if (outcome.exit_code != liou::kExitOk) g_last_error = outcome.message;
  });
}

}  // extern "C"
