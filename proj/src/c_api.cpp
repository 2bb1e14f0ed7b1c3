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

#include "nehari/nehari.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <mutex>
#include <new>
#include <optional>
#include <string>

#include "nehari/branch.hpp"
#include "nehari/eigen.hpp"
#include "nehari/energy.hpp"
#include "nehari/error.hpp"
#include "nehari/fiber.hpp"
#include "nehari/oracle.hpp"
#include "nehari/witness.hpp"

using namespace nehari;

struct nh_problem {
  GridPtr grid;
  KernelSpec kernel;
  double beta = 0.0;
  WeightTablePtr w;
  std::optional<BWeight> b;

  std::mutex mu;
  std::optional<EigenResult> eig;
  BCalibration cal;
  std::optional<double> lambda_b;
};

struct nh_solution {
  BranchSolution sol;
  double lambda = 0.0;
  double angle = 0.0;
};

namespace {

thread_local std::string last_error;

nh_status fail(nh_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
nh_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    return fail(static_cast<nh_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NH_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

const EigenResult& ensure_eigen(nh_problem& pr) {
  std::lock_guard lock(pr.mu);
  if (!pr.eig) {
    EigenResult e = principal_eigenpair(*pr.w);
    pr.cal = calibrate_b(*pr.b, e.phi1, pr.beta);
    pr.eig = std::move(e);
  }
  return *pr.eig;
}

ProblemParams params_at(const nh_problem& pr, double lambda) {
  return ProblemParams::make(pr.kernel, pr.beta, lambda);
}

GridFunction wrap(const nh_problem& pr, const double* u, size_t len) {
  require(u != nullptr, "null array");
  require(len == static_cast<size_t>(pr.grid->n_interior()), "array length differs from the grid size");
  return GridFunction(pr.grid, std::vector<double>(u, u + len));
}

SolveOptions convert(const nh_solve_options* o) {
  SolveOptions so;
  if (!o) return so;
  so.nonneg = o->nonneg != 0;
  so.max_iter = o->max_iter;
  so.grad_tol = o->grad_tol;
  so.allow_near_lambda1 = o->allow_near_lambda1 != 0;
  so.near_lambda1_cap = o->near_lambda1_cap;
  so.two_branch_cap = o->two_branch_cap;
  so.bound_factor = o->bound_factor;
  return so;
}

nh_solution* box(const nh_problem& pr, BranchSolution s, double lambda) {
  const double angle = angle_to(s.u, pr.eig->phi1, pr.kernel.p);
  return new nh_solution{std::move(s), lambda, angle};
}

int sign_of(Sign s) { return static_cast<int>(s); }

nh_status copy_witness(const WitnessSequence& seq, nh_witness_point* out, size_t cap, size_t* count,
                       int* strictly_decreasing) {
  require(count != nullptr, "null count");
  require(out != nullptr || cap == 0, "null output array");
  *count = seq.points.size();
  if (strictly_decreasing) *strictly_decreasing = seq.strictly_decreasing ? 1 : 0;
  for (size_t i = 0; i < std::min(cap, seq.points.size()); ++i) {
    const WitnessPoint& p = seq.points[i];
    out[i] = nh_witness_point{p.param, p.e_value, p.b_value, p.t, p.j_value};
  }
  return NH_OK;
}

}  // namespace

extern "C" {

const char* nh_last_error(void) { return last_error.c_str(); }

const char* nh_status_name(nh_status status) {
  switch (status) {
    case NH_OK: return "ok";
    case NH_ERR_INTERNAL: return "internal";
    case NH_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NH_ERR_BRANCH_EMPTY: return "branch_empty";
    case NH_ERR_NOT_CONVERGED: return "not_converged";
    case NH_ERR_ORACLE_FAILED: return "oracle_failed";
    case NH_ERR_NO_CRITICAL_POINT: return "no_critical_point";
    case NH_ERR_NO_WITNESS: return "no_witness";
  }
  return "unknown";
}

nh_status nh_problem_create(const nh_problem_desc* desc, nh_problem** out) {
  return guarded([&] {
    require(desc != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    require(desc->n_interior >= 1, "n_interior must be >= 1");
    require(desc->b_preset != nullptr, "b_preset is required");
    require(desc->b_params != nullptr || desc->b_param_count == 0, "null b_params");
    auto pr = std::make_unique<nh_problem>();
    pr->kernel = KernelSpec{desc->p, desc->alpha, desc->theta};
    ProblemParams::make(pr->kernel, desc->beta, 1.0);  // validation only
    pr->beta = desc->beta;
    pr->grid = make_grid(desc->n_interior);
    pr->b = BWeight::preset(pr->grid, desc->b_preset,
                            std::span<const double>(desc->b_params, desc->b_param_count));
    pr->w = assemble_weights(pr->grid, pr->kernel);
    *out = pr.release();
    return NH_OK;
  });
}

void nh_problem_destroy(nh_problem* problem) { delete problem; }

size_t nh_problem_size(const nh_problem* problem) {
  return problem ? static_cast<size_t>(problem->grid->n_interior()) : 0;
}

nh_status nh_problem_nodes(const nh_problem* problem, double* out, size_t len) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const auto& nodes = problem->grid->nodes();
    require(len == nodes.size(), "array length differs from the grid size");
    std::copy(nodes.begin(), nodes.end(), out);
    return NH_OK;
  });
}

nh_status nh_compute_eigen(nh_problem* problem, nh_eigen_info* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const EigenResult& e = ensure_eigen(*problem);
    *out = nh_eigen_info{e.lambda1, e.iterations, e.residual, problem->cal.b_phi_integral,
                         problem->cal.sign};
    return NH_OK;
  });
}

nh_status nh_phi1(nh_problem* problem, double* out, size_t len) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const EigenResult& e = ensure_eigen(*problem);
    require(len == e.phi1.size(), "array length differs from the grid size");
    std::copy(e.phi1.values().begin(), e.phi1.values().end(), out);
    return NH_OK;
  });
}

nh_status nh_subdomain_eigen(nh_problem* problem, double* lambda_b) {
  return guarded([&] {
    require(problem != nullptr && lambda_b != nullptr, "null argument");
    std::lock_guard lock(problem->mu);
    if (!problem->lambda_b) problem->lambda_b = subdomain_eigen(*problem->w, *problem->b).lambda1;
    *lambda_b = *problem->lambda_b;
    return NH_OK;
  });
}

nh_status nh_dense_eigen(nh_problem* problem, double* lambda1) {
  return guarded([&] {
    require(problem != nullptr && lambda1 != nullptr, "null argument");
    *lambda1 = dense_eigen_p2(*problem->w);
    return NH_OK;
  });
}

nh_status nh_closed_form_reference(nh_problem* problem, double lambda, double* out, int* defined) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr && defined != nullptr, "null argument");
    const EigenResult& e = ensure_eigen(*problem);
    const auto v = closed_form_reference(params_at(*problem, lambda), e.lambda1,
                                         lp_norm_p(e.phi1, problem->kernel.p),
                                         problem->cal.b_phi_integral);
    *defined = v ? 1 : 0;
    *out = v ? *v : std::numeric_limits<double>::quiet_NaN();
    return NH_OK;
  });
}

nh_status nh_energy(nh_problem* problem, double lambda, const double* u, size_t len,
                    nh_energy_info* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const EnergyReport r = energy_report(wrap(*problem, u, len), *problem->b,
                                         params_at(*problem, lambda), *problem->w);
    *out = nh_energy_info{r.seminorm_p, r.lp_p, r.b_term, r.e_lambda, r.j_lambda};
    return NH_OK;
  });
}

void nh_solve_options_default(nh_solve_options* opts) {
  if (!opts) return;
  const SolveOptions d;
  *opts = nh_solve_options{d.nonneg ? 1 : 0,         d.max_iter,       d.grad_tol,
                           d.allow_near_lambda1 ? 1 : 0, d.near_lambda1_cap, d.two_branch_cap,
                           d.bound_factor};
}

nh_status nh_solve_branch(nh_problem* problem, double lambda, nh_branch branch,
                          const nh_solve_options* opts, nh_solution** out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    require(branch == NH_BRANCH_PLUS || branch == NH_BRANCH_MINUS, "branch must be plus or minus");
    const EigenResult& e = ensure_eigen(*problem);
    BranchSolution s = minimize_branch(static_cast<Branch>(branch), *problem->b,
                                       params_at(*problem, lambda), *problem->w, e, convert(opts));
    *out = box(*problem, std::move(s), lambda);
    return NH_OK;
  });
}

nh_status nh_solve_two_branches(nh_problem* problem, double lambda, const nh_solve_options* opts,
                                nh_solution** plus, nh_solution** minus) {
  return guarded([&] {
    require(problem != nullptr && plus != nullptr && minus != nullptr, "null argument");
    *plus = *minus = nullptr;
    const EigenResult& e = ensure_eigen(*problem);
    auto [sp, sm] = solve_two_branches(*problem->b, params_at(*problem, lambda), *problem->w, e,
                                       convert(opts));
    std::unique_ptr<nh_solution> p(box(*problem, std::move(sp), lambda));
    *minus = box(*problem, std::move(sm), lambda);
    *plus = p.release();
    return NH_OK;
  });
}

nh_status nh_solution_info_get(const nh_solution* solution, nh_solution_info* out) {
  return guarded([&] {
    require(solution != nullptr && out != nullptr, "null argument");
    const BranchSolution& s = solution->sol;
    *out = nh_solution_info{static_cast<nh_branch>(s.branch),
                            solution->lambda,
                            s.j_value,
                            s.b_integral,
                            s.nehari_residual,
                            s.grad_residual,
                            s.stationarity,
                            s.seminorm_p,
                            s.lp_p,
                            solution->angle,
                            s.min_node_value,
                            s.iterations,
                            s.converged ? 1 : 0};
    return NH_OK;
  });
}

nh_status nh_solution_values(const nh_solution* solution, double* out, size_t len) {
  return guarded([&] {
    require(solution != nullptr && out != nullptr, "null argument");
    const auto v = solution->sol.u.values();
    require(len == v.size(), "array length differs from the grid size");
    std::copy(v.begin(), v.end(), out);
    return NH_OK;
  });
}

void nh_solution_destroy(nh_solution* solution) { delete solution; }

nh_status nh_fiber_classify(nh_problem* problem, double lambda, const double* u, size_t len,
                            nh_fiber_info* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const GridFunction g = wrap(*problem, u, len);
    require(!g.is_zero(), "fiber map of the zero function");
    const FiberDiagnosis d = classify(g, *problem->b, params_at(*problem, lambda), *problem->w);
    *out = nh_fiber_info{d.case_id,
                         sign_of(d.e_sign),
                         sign_of(d.b_sign),
                         d.t_star ? 1 : 0,
                         d.t_star ? *d.t_star : std::numeric_limits<double>::quiet_NaN(),
                         static_cast<nh_branch>(d.target_branch)};
    return NH_OK;
  });
}

nh_status nh_fiber_dump(nh_problem* problem, double lambda, const double* u, size_t len,
                        double t_lo, double t_hi, size_t points, nh_fiber_sample* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    require(t_lo > 0.0 && t_hi > t_lo && points >= 2, "need 0 < t_lo < t_hi and at least 2 points");
    const GridFunction g = wrap(*problem, u, len);
    require(!g.is_zero(), "fiber map of the zero function");
    const ProblemParams params = params_at(*problem, lambda);
    const EnergyParts parts = evaluate_parts(g.values(), *problem->b, params.beta, *problem->w);
    const double e = parts.seminorm_p - lambda * parts.lp_p, bv = parts.b_term;
    const double ratio = std::log(t_hi / t_lo) / static_cast<double>(points - 1);
    for (size_t i = 0; i < points; ++i) {
      const double t = i + 1 == points ? t_hi : t_lo * std::exp(ratio * static_cast<double>(i));
      out[i] = nh_fiber_sample{t, fiber_value(e, bv, t, params), fiber_d1(e, bv, t, params),
                               fiber_d2(e, bv, t, params)};
    }
    return NH_OK;
  });
}

nh_status nh_unbounded_witness(nh_problem* problem, double lambda, nh_witness_seed seed, int points,
                               nh_witness_point* out, size_t cap, size_t* count,
                               int* strictly_decreasing) {
  return guarded([&] {
    require(problem != nullptr, "null argument");
    const EigenResult& e = ensure_eigen(*problem);
    WitnessOptions o;
    o.seed = static_cast<WitnessSeed>(seed);
    o.points = points;
    const WitnessSequence seq =
        unbounded_witness(*problem->b, params_at(*problem, lambda), *problem->w, e, o);
    return copy_witness(seq, out, cap, count, strictly_decreasing);
  });
}

nh_status nh_vanishing_witness(nh_problem* problem, double lambda, double target,
                               nh_witness_point* out, size_t cap, size_t* count,
                               int* strictly_decreasing) {
  return guarded([&] {
    require(problem != nullptr, "null argument");
    const EigenResult& e = ensure_eigen(*problem);
    WitnessOptions o;
    o.target = target;
    const WitnessSequence seq =
        vanishing_infimum_witness(*problem->b, params_at(*problem, lambda), *problem->w, e, o);
    return copy_witness(seq, out, cap, count, strictly_decreasing);
  });
}

nh_status nh_run_checks(uint64_t seed, nh_check_report* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(count != nullptr, "null count");
    require(out != nullptr || cap == 0, "null output array");
    const std::vector<OracleReport> reps = run_oracle_suite(seed);
    *count = reps.size();
    bool all = true;
    for (size_t i = 0; i < reps.size(); ++i) {
      all = all && reps[i].passed;
      if (i >= cap) continue;
      nh_check_report& r = out[i];
      std::memset(&r, 0, sizeof r);
      std::strncpy(r.name, reps[i].name.c_str(), sizeof r.name - 1);
      r.max_rel_error = reps[i].max_rel_error;
      r.samples = reps[i].samples;
      r.tolerance = reps[i].tolerance;
      r.passed = reps[i].passed ? 1 : 0;
    }
    return all ? NH_OK : fail(NH_ERR_ORACLE_FAILED, "oracle suite reported failures");
  });
}

}  // extern "C"
