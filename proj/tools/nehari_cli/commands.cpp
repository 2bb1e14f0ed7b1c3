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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "nehari/nehari.h"

namespace nehari_cli {
namespace {

int exit_code(nh_status s) {
  switch (s) {
    case NH_OK: return kOk;
    case NH_ERR_INVALID_ARGUMENT: return kConfigError;
    case NH_ERR_BRANCH_EMPTY: return kBranchEmpty;
    case NH_ERR_NOT_CONVERGED: return kNotConverged;
    case NH_ERR_ORACLE_FAILED: return kOracleFailure;
    default: return kFailure;
  }
}

void check(nh_status s) {
  if (s != NH_OK) throw CliError(exit_code(s), std::string(nh_status_name(s)) + ": " + nh_last_error());
}

struct ProblemDeleter {
  void operator()(nh_problem* p) const { nh_problem_destroy(p); }
};
struct SolutionDeleter {
  void operator()(nh_solution* s) const { nh_solution_destroy(s); }
};
using Problem = std::unique_ptr<nh_problem, ProblemDeleter>;
using Solution = std::unique_ptr<nh_solution, SolutionDeleter>;

Problem make_problem(const RunConfig& c) {
  const nh_problem_desc d{c.n, c.p, c.alpha, c.theta, c.beta, c.b_preset.c_str(), c.b_params.data(),
                          c.b_params.size()};
  nh_problem* raw = nullptr;
  const nh_status s = nh_problem_create(&d, &raw);
  // Every problem-construction failure is a configuration problem.
  if (s != NH_OK) throw CliError(kConfigError, std::string("config: ") + nh_last_error());
  return Problem(raw);
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV output with LF line endings regardless of platform.
class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::string& header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw CliError(kFailure, "cannot write " + path.string());
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
    if (!out_) throw CliError(kFailure, "write failed: " + path_.string());
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::filesystem::path path_;
  std::ofstream out_;
};

const char* branch_name(nh_branch b) {
  return b == NH_BRANCH_PLUS ? "plus" : b == NH_BRANCH_MINUS ? "minus" : "none";
}

std::vector<double> node_positions(nh_problem* pr) {
  std::vector<double> x(nh_problem_size(pr));
  check(nh_problem_nodes(pr, x.data(), x.size()));
  return x;
}

double resolve_lambda(const RunConfig& c, double lambda1) {
  if (c.lambda) return *c.lambda;
  if (c.lambda_factor) return *c.lambda_factor * lambda1;
  throw CliError(kConfigError, "config: lambda or lambda_factor is required");
}

nh_solve_options solve_options(const Context& ctx) {
  nh_solve_options o = ctx.config.solver;
  o.allow_near_lambda1 = ctx.allow_near_lambda1 ? 1 : 0;
  return o;
}

void write_values(const std::filesystem::path& path, const char* column, const std::vector<double>& x,
                  const std::vector<double>& u) {
  Csv csv(path, std::string("x,") + column);
  for (std::size_t i = 0; i < x.size(); ++i) csv.row(x[i], u[i]);
}

std::vector<double> solution_values(const nh_solution* s, std::size_t n) {
  std::vector<double> v(n);
  check(nh_solution_values(s, v.data(), n));
  return v;
}

const char* kSummaryHeader =
    "lambda,branch,j_value,u_norm,lp_norm,b_integral,angle_to_phi1,nehari_residual,"
    "grad_residual,min_node_value,iterations,converged";

void summary_row(Csv& csv, const nh_solution_info& i, double p) {
  csv.row(i.lambda, branch_name(i.branch), i.j_value, std::pow(i.seminorm_p, 1.0 / p),
          std::pow(i.lp_p, 1.0 / p), i.b_integral, i.angle_to_phi1, i.nehari_residual,
          i.grad_residual, i.min_node_value, i.iterations, i.converged);
}

}  // namespace

int cmd_eigen(const Context& ctx) {
  const RunConfig& c = ctx.config;
  Problem pr = make_problem(c);
  nh_eigen_info info{};
  check(nh_compute_eigen(pr.get(), &info));

  double lambda_b = NAN;
  if (nh_subdomain_eigen(pr.get(), &lambda_b) != NH_OK) lambda_b = NAN;
  double dense = NAN;
  if (c.p == 2.0 && c.n <= 6) check(nh_dense_eigen(pr.get(), &dense));

  Csv csv(ctx.out_dir / "eigen.csv",
          "n_interior,p,alpha,theta,beta,lambda1,lambda_b,dense_lambda1,iterations,residual,"
          "b_phi1_integral,b_phi1_sign");
  csv.row(c.n, c.p, c.alpha, c.theta, c.beta, info.lambda1, lambda_b, dense, info.iterations,
          info.residual, info.b_phi1_integral, info.b_phi1_sign);

  std::vector<double> phi(nh_problem_size(pr.get()));
  check(nh_phi1(pr.get(), phi.data(), phi.size()));
  write_values(ctx.out_dir / "phi1.csv", "phi1", node_positions(pr.get()), phi);

  std::cout << "lambda1 " << num(info.lambda1) << "\n";
  if (!std::isnan(lambda_b)) std::cout << "lambda_b " << num(lambda_b) << "\n";
  if (!std::isnan(dense)) std::cout << "dense_lambda1 " << num(dense) << "\n";
  return kOk;
}

int cmd_solve(const Context& ctx) {
  const RunConfig& c = ctx.config;
  Problem pr = make_problem(c);
  nh_eigen_info eig{};
  check(nh_compute_eigen(pr.get(), &eig));
  const double lambda = resolve_lambda(c, eig.lambda1);
  const nh_solve_options opts = solve_options(ctx);

  std::vector<Solution> sols;
  if (c.branch == "both") {
    nh_solution *plus = nullptr, *minus = nullptr;
    check(nh_solve_two_branches(pr.get(), lambda, &opts, &plus, &minus));
    sols.emplace_back(plus);
    sols.emplace_back(minus);
  } else {
    nh_solution* s = nullptr;
    check(nh_solve_branch(pr.get(), lambda, parse_branch(c.branch), &opts, &s));
    sols.emplace_back(s);
  }

  const std::vector<double> x = node_positions(pr.get());
  Csv summary(ctx.out_dir / "solve_summary.csv", kSummaryHeader);
  bool all_converged = true;
  for (const Solution& s : sols) {
    nh_solution_info info{};
    check(nh_solution_info_get(s.get(), &info));
    summary_row(summary, info, c.p);
    write_values(ctx.out_dir / (std::string("solution_") + branch_name(info.branch) + ".csv"), "u", x,
                 solution_values(s.get(), x.size()));
    std::cout << branch_name(info.branch) << " J " << num(info.j_value)
              << (info.converged ? "" : " (not converged)") << "\n";
    all_converged = all_converged && info.converged;
  }
  return all_converged ? kOk : kNotConverged;
}

int cmd_sweep(const Context& ctx) {
  const RunConfig& c = ctx.config;
  Problem pr = make_problem(c);
  nh_eigen_info eig{};
  check(nh_compute_eigen(pr.get(), &eig));

  std::vector<double> lambdas = c.sweep_lambdas;
  for (double f : c.sweep_factors) lambdas.push_back(f * eig.lambda1);
  if (lambdas.empty()) throw CliError(kConfigError, "config: sweep needs lambdas or lambda_factors");
  std::sort(lambdas.begin(), lambdas.end());
  const nh_solve_options opts = solve_options(ctx);
  for (double l : lambdas) {
    if (!(l > 0.0)) throw CliError(kConfigError, "config: sweep lambda must be > 0");
    if (!opts.allow_near_lambda1 && std::abs(l - eig.lambda1) < opts.near_lambda1_cap * eig.lambda1) {
      throw CliError(kConfigError, "config: sweep lambda " + num(l) +
                                       " lies within the proximity cap of lambda1 " + num(eig.lambda1) +
                                       " (use --allow-near-lambda1)");
    }
  }

  struct Task {
    double lambda;
    nh_branch branch;
  };
  struct Row {
    nh_status status = NH_OK;
    nh_solution_info info{};
    double closed_form = NAN;
  };
  std::vector<Task> tasks;
  for (double l : lambdas) {
    for (const auto& b : c.sweep_branches) tasks.push_back({l, parse_branch(b)});
  }
  std::vector<Row> rows(tasks.size());

  // Workers pull tasks by index; each writes only its own row slot.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Row& r = rows[i];
      int defined = 0;
      if (nh_closed_form_reference(pr.get(), tasks[i].lambda, &r.closed_form, &defined) != NH_OK ||
          !defined) {
        r.closed_form = NAN;
      }
      nh_solution* s = nullptr;
      r.status = nh_solve_branch(pr.get(), tasks[i].lambda, tasks[i].branch, &opts, &s);
      if (r.status == NH_OK) {
        nh_solution_info_get(s, &r.info);
        nh_solution_destroy(s);
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(c.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Csv csv(ctx.out_dir / "sweep.csv",
          "lambda,branch,j_inf,u_norm,lp_norm,b_integral,angle_to_phi1,iterations,converged,"
          "nehari_residual,closed_form,status");
  int code = kOk;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Row& r = rows[i];
    const char* br = branch_name(tasks[i].branch);
    if (r.status != NH_OK) {
      csv.row(tasks[i].lambda, br, NAN, NAN, NAN, NAN, NAN, 0, 0, NAN, r.closed_form,
              nh_status_name(r.status));
      // Empty branches are an expected outcome in a sweep; other errors are not.
      if (r.status != NH_ERR_BRANCH_EMPTY && code == kOk) code = exit_code(r.status);
      continue;
    }
    const nh_solution_info& in = r.info;
    csv.row(tasks[i].lambda, br, in.j_value, std::pow(in.seminorm_p, 1.0 / c.p),
            std::pow(in.lp_p, 1.0 / c.p), in.b_integral, in.angle_to_phi1, in.iterations,
            in.converged, in.nehari_residual, r.closed_form, in.converged ? "ok" : "not_converged");
    if (!in.converged && code == kOk) code = kNotConverged;
  }
  std::cout << "lambda1 " << num(eig.lambda1) << ", " << tasks.size() << " rows\n";
  return code;
}

int cmd_fiber_dump(const Context& ctx) {
  const RunConfig& c = ctx.config;
  Problem pr = make_problem(c);
  nh_eigen_info eig{};
  check(nh_compute_eigen(pr.get(), &eig));
  const double lambda = resolve_lambda(c, eig.lambda1);
  const std::size_t n = nh_problem_size(pr.get());

  std::vector<double> u(n);
  if (c.fiber.source == "phi1") {
    check(nh_phi1(pr.get(), u.data(), n));
  } else if (c.fiber.source == "values") {
    if (c.fiber.values.size() != n) {
      throw CliError(kConfigError, "config: fiber.values must have one entry per interior node");
    }
    u = c.fiber.values;
  } else {
    const nh_solve_options opts = solve_options(ctx);
    nh_solution* s = nullptr;
    check(nh_solve_branch(pr.get(), lambda, parse_branch(c.fiber.branch), &opts, &s));
    Solution owned(s);
    u = solution_values(s, n);
  }

  nh_fiber_info info{};
  check(nh_fiber_classify(pr.get(), lambda, u.data(), n, &info));
  const double centre = info.has_t_star ? info.t_star : 1.0;
  const double lo = c.fiber.t_lo.value_or(centre * 1e-2), hi = c.fiber.t_hi.value_or(centre * 1e2);
  std::vector<nh_fiber_sample> samples(static_cast<std::size_t>(c.fiber.points));
  check(nh_fiber_dump(pr.get(), lambda, u.data(), n, lo, hi, samples.size(), samples.data()));

  Csv csv(ctx.out_dir / "fiber.csv", "t,phi,phi_d1,phi_d2,is_t_star");
  bool marked = !info.has_t_star;
  // The first of two samples starting at t* is the marker row.
  nh_fiber_sample star[2]{};
  if (info.has_t_star) {
    check(nh_fiber_dump(pr.get(), lambda, u.data(), n, info.t_star, info.t_star * 2.0, 2, star));
  }
  for (const nh_fiber_sample& s : samples) {
    if (!marked && star[0].t <= s.t) {
      csv.row(star[0].t, star[0].value, star[0].d1, star[0].d2, 1);
      marked = true;
    }
    csv.row(s.t, s.value, s.d1, s.d2, 0);
  }
  if (!marked) csv.row(star[0].t, star[0].value, star[0].d1, star[0].d2, 1);

  Csv summary(ctx.out_dir / "fiber_summary.csv", "lambda,case_id,e_sign,b_sign,t_star,target_branch");
  summary.row(lambda, info.case_id, info.e_sign, info.b_sign, info.has_t_star ? info.t_star : NAN,
              branch_name(info.target_branch));
  std::cout << "case " << info.case_id << ", t* " << (info.has_t_star ? num(info.t_star) : "none")
            << "\n";
  return kOk;
}

int cmd_check(const Context& ctx) {
  std::vector<nh_check_report> reps(64);
  std::size_t count = 0;
  const nh_status s = nh_run_checks(ctx.config.seed, reps.data(), reps.size(), &count);
  if (s != NH_OK && s != NH_ERR_ORACLE_FAILED) check(s);
  reps.resize(std::min(count, reps.size()));

  Csv csv(ctx.out_dir / "check.csv", "name,max_rel_error,samples,tolerance,passed");
  for (const auto& r : reps) {
    csv.row(std::string(r.name), r.max_rel_error, r.samples, r.tolerance, r.passed);
    std::printf("%-32s max_rel_error=%.3e tol=%.0e %s\n", r.name, r.max_rel_error, r.tolerance,
                r.passed ? "PASS" : "FAIL");
  }
  return s == NH_OK ? kOk : kOracleFailure;
}

}  // namespace nehari_cli
