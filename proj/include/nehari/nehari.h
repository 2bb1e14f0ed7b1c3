// Copyright 2026 The nehari Authors.
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

/* C interface to the nehari solver library.
 *
 * Every call returns an nh_status; on failure nh_last_error() holds a
 * message for the calling thread. Handles are opaque. A problem handle may
 * be shared by several threads once nh_compute_eigen has returned; solution
 * handles are immutable. */

#ifndef NEHARI_NEHARI_H
#define NEHARI_NEHARI_H

#include <stddef.h>
#include <stdint.h>

#if defined(NH_BUILDING_LIBRARY)
#define NH_API __attribute__((visibility("default")))
#else
#define NH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nh_status {
  NH_OK = 0,
  NH_ERR_INTERNAL = 1,
  NH_ERR_INVALID_ARGUMENT = 2,
  NH_ERR_BRANCH_EMPTY = 3,
  NH_ERR_NOT_CONVERGED = 4,
  NH_ERR_ORACLE_FAILED = 5,
  NH_ERR_NO_CRITICAL_POINT = 6,
  NH_ERR_NO_WITNESS = 7
} nh_status;

typedef enum nh_branch { NH_BRANCH_NONE = 0, NH_BRANCH_PLUS = 1, NH_BRANCH_MINUS = 2 } nh_branch;

typedef enum nh_witness_seed {
  NH_SEED_AUTO = 0,
  NH_SEED_PHI1 = 1,
  NH_SEED_SUBDOMAIN = 2
} nh_witness_seed;

typedef struct nh_problem nh_problem;
typedef struct nh_solution nh_solution;

typedef struct nh_problem_desc {
  int n_interior;
  double p;
  double alpha;
  double theta;
  double beta;
  /* "pos-core", "neg-core" or "cosine". */
  const char* b_preset;
  const double* b_params;
  size_t b_param_count;
} nh_problem_desc;

typedef struct nh_eigen_info {
  double lambda1;
  int iterations;
  double residual;
  /* integral of b phi1^beta and its sign (-1, 0, 1). */
  double b_phi1_integral;
  int b_phi1_sign;
} nh_eigen_info;

typedef struct nh_energy_info {
  double seminorm_p;
  double lp_p;
  double b_term;
  double e_lambda;
  double j_lambda;
} nh_energy_info;

typedef struct nh_solve_options {
  int nonneg;
  int max_iter;
  double grad_tol;
  int allow_near_lambda1;
  double near_lambda1_cap;
  double two_branch_cap;
  double bound_factor;
} nh_solve_options;

typedef struct nh_solution_info {
  nh_branch branch;
  double lambda;
  double j_value;
  double b_integral;
  double nehari_residual;
  double grad_residual;
  double stationarity;
  double seminorm_p;
  double lp_p;
  double angle_to_phi1;
  double min_node_value;
  int iterations;
  int converged;
} nh_solution_info;

typedef struct nh_fiber_info {
  int case_id; /* 1..4, 0 when E or B is inside the dead band */
  int e_sign;
  int b_sign;
  int has_t_star;
  double t_star;
  nh_branch target_branch;
} nh_fiber_info;

typedef struct nh_fiber_sample {
  double t;
  double value;
  double d1;
  double d2;
} nh_fiber_sample;

typedef struct nh_witness_point {
  double param;
  double e_value;
  double b_value;
  double t;
  double j_value;
} nh_witness_point;

typedef struct nh_check_report {
  char name[64];
  double max_rel_error;
  int samples;
  double tolerance;
  int passed;
} nh_check_report;

NH_API const char* nh_last_error(void);
NH_API const char* nh_status_name(nh_status status);

NH_API nh_status nh_problem_create(const nh_problem_desc* desc, nh_problem** out);
NH_API void nh_problem_destroy(nh_problem* problem);
NH_API size_t nh_problem_size(const nh_problem* problem);
NH_API nh_status nh_problem_nodes(const nh_problem* problem, double* out, size_t len);

/* Principal eigenpair. Computed once and cached in the handle. */
NH_API nh_status nh_compute_eigen(nh_problem* problem, nh_eigen_info* out);
NH_API nh_status nh_phi1(nh_problem* problem, double* out, size_t len);
/* Principal eigenvalue restricted to {b > 0}. */
NH_API nh_status nh_subdomain_eigen(nh_problem* problem, double* lambda_b);
/* Smallest eigenvalue of the dense p = 2 forms (N <= 6 only). */
NH_API nh_status nh_dense_eigen(nh_problem* problem, double* lambda1);

/* J at t(phi1) phi1; *defined is 0 when phi1 has no critical scaling. */
NH_API nh_status nh_closed_form_reference(nh_problem* problem, double lambda, double* out,
                                          int* defined);

NH_API nh_status nh_energy(nh_problem* problem, double lambda, const double* u, size_t len,
                           nh_energy_info* out);

NH_API void nh_solve_options_default(nh_solve_options* opts);
/* opts may be NULL for the defaults. */
NH_API nh_status nh_solve_branch(nh_problem* problem, double lambda, nh_branch branch,
                                 const nh_solve_options* opts, nh_solution** out);
NH_API nh_status nh_solve_two_branches(nh_problem* problem, double lambda,
                                       const nh_solve_options* opts, nh_solution** plus,
                                       nh_solution** minus);
NH_API nh_status nh_solution_info_get(const nh_solution* solution, nh_solution_info* out);
NH_API nh_status nh_solution_values(const nh_solution* solution, double* out, size_t len);
NH_API void nh_solution_destroy(nh_solution* solution);

NH_API nh_status nh_fiber_classify(nh_problem* problem, double lambda, const double* u, size_t len,
                                   nh_fiber_info* out);
/* phi_u and its first two derivatives at `points` geometric t in [t_lo, t_hi]. */
NH_API nh_status nh_fiber_dump(nh_problem* problem, double lambda, const double* u, size_t len,
                               double t_lo, double t_hi, size_t points, nh_fiber_sample* out);

/* Witness sequences. Up to `cap` points are written; *count receives the
 * number produced (which may exceed cap). */
NH_API nh_status nh_unbounded_witness(nh_problem* problem, double lambda, nh_witness_seed seed,
                                      int points, nh_witness_point* out, size_t cap,
                                      size_t* count, int* strictly_decreasing);
NH_API nh_status nh_vanishing_witness(nh_problem* problem, double lambda, double target,
                                      nh_witness_point* out, size_t cap, size_t* count,
                                      int* strictly_decreasing);

/* Runs the oracle suite. Returns NH_ERR_ORACLE_FAILED when any check fails;
 * the reports are written either way. */
NH_API nh_status nh_run_checks(uint64_t seed, nh_check_report* out, size_t cap, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* NEHARI_NEHARI_H */
