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

#ifndef LIOU_LIOU_H
#define LIOU_LIOU_H

/* C interface to the liou library. Every function returns a liou_status;
 * on failure liou_last_error() describes the problem for the calling thread.
 * String outputs use (buf, cap, needed): the full length is always stored in
 * *needed (excluding the terminator) and the text is copied when it fits. */

#include <stddef.h>

#if defined(LIOU_BUILDING_LIBRARY)
#define LIOU_API __attribute__((visibility("default")))
#else
#define LIOU_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum liou_status {
  LIOU_OK = 0,
  LIOU_ERR_NULL = -1,
  LIOU_ERR_INVALID = -2,
  LIOU_ERR_DOMAIN = -3,
  LIOU_ERR_RESOURCE = -4,
  LIOU_ERR_PRECISION = -5,
  LIOU_ERR_INTERNAL = -6,
  LIOU_ERR_BUFFER = -7
} liou_status;

typedef struct liou_spec liou_spec;
typedef struct liou_truncation liou_truncation;
typedef struct liou_family liou_family;
typedef struct liou_trajectory liou_trajectory;

LIOU_API const char* liou_last_error(void);
LIOU_API const char* liou_version(void);

/* Sequence specs. */
LIOU_API liou_status liou_spec_parse(const char* text, liou_spec** out);
LIOU_API liou_status liou_spec_preset(const char* name, liou_spec** out);
LIOU_API void liou_spec_free(liou_spec* spec);
LIOU_API liou_status liou_spec_serialize(const liou_spec* spec, char* buf, size_t cap,
                                         size_t* needed);
/* Decimal q_l (1-based). */
LIOU_API liou_status liou_spec_term(const liou_spec* spec, size_t l, char* buf, size_t cap,
                                    size_t* needed);

/* Truncations zeta_N. */
LIOU_API liou_status liou_truncate(const liou_spec* spec, size_t depth, liou_truncation** out);
LIOU_API void liou_truncation_free(liou_truncation* t);
/* "p/q" form of zeta_N. */
LIOU_API liou_status liou_truncation_value(const liou_truncation* t, char* buf, size_t cap,
                                           size_t* needed);
LIOU_API liou_status liou_irrationality_exponent(const liou_truncation* t, size_t depth,
                                                 double* estimate);

/* Exact psi_{k,j}(Q) for Q given as a decimal or p/q string; psi_out holds
 * k+1 values. */
LIOU_API liou_status liou_psi_enumerate(const liou_truncation* t, size_t k, const char* q,
                                        unsigned long long budget, double* psi_out);

/* Trajectory over a log-uniform grid between q_min and q_max. */
LIOU_API liou_status liou_trajectory_compute(const liou_truncation* t, size_t k,
                                             const char* q_min, const char* q_max,
                                             size_t points, unsigned long long budget,
                                             liou_trajectory** out);
LIOU_API void liou_trajectory_free(liou_trajectory* traj);
LIOU_API liou_status liou_trajectory_csv(const liou_trajectory* traj, char* buf, size_t cap,
                                         size_t* needed);
/* Tail-window extremes, k+1 values each. */
LIOU_API liou_status liou_trajectory_extremes(const liou_trajectory* traj, double* lower,
                                              double* upper);

/* Witness families. */
LIOU_API liou_status liou_family_build(const liou_spec* spec, size_t k, size_t n,
                                       liou_family** out);
LIOU_API void liou_family_free(liou_family* f);
/* Decimal E_{j,m}, 1-based. */
LIOU_API liou_status liou_family_entry(const liou_family* f, size_t j, size_t m, char* buf,
                                       size_t cap, size_t* needed);
/* *conclusive and *independent receive 0 or 1. */
LIOU_API liou_status liou_family_det_certificate(const liou_family* f, int* conclusive,
                                                 int* independent);
LIOU_API liou_status liou_family_certificate_text(const liou_family* f, int compact, char* buf,
                                                  size_t cap, size_t* needed);

/* (1 + lambda)(1 + psi) = (k+1)/k; psi = -1 gives +inf. */
LIOU_API liou_status liou_lambda_from_psi(double psi, size_t k, double* lambda);
LIOU_API liou_status liou_psi_from_lambda(double lambda, size_t k, double* psi);

/* Runs a key=value configuration; *exit_code receives the process exit code
 * (0 ok, 1 hard failure, 2 input error, 3 resource). */
LIOU_API liou_status liou_run(const char* config_text, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* LIOU_LIOU_H */
