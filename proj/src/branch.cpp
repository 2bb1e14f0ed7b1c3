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

#include "nehari/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nehari/descent.hpp"
#include "nehari/error.hpp"

namespace nehari {

namespace {

void normalize_lp(std::vector<double>& x, double p, const GridPtr& grid) {
  const double l = lp_norm_p(GridFunction(grid, x), p);
  if (l > 0.0) {
    const double s = std::pow(l, -1.0 / p);
    for (double& v : x) v *= s;
  }
}

// Parabola (x - l)(r - x) on every maximal run of flagged nodes.
std::vector<double> bumps(const Grid& grid, const std::vector<bool>& mask) {
  const int n = grid.n_interior();
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  int i = 0;
  while (i < n) {
    if (!mask[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && mask[static_cast<std::size_t>(j + 1)]) ++j;
    const double l = grid.node(i) - grid.h(), r = grid.node(j) + grid.h();
    for (int k = i; k <= j; ++k) {
      const double x = grid.node(k);
      v[static_cast<std::size_t>(k)] = (x - l) * (r - x);
    }
    i = j + 1;
  }
  return v;
}

// Nodes touching at least one cell where b has the given sign.
std::vector<bool> touching_mask(const BWeight& b, int sign) {
  const int n = b.grid().n_interior();
  std::vector<bool> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double l = b.cell(i), r = b.cell(i + 1);
    m[static_cast<std::size_t>(i)] = sign > 0 ? (l > 0.0 || r > 0.0) : (l < 0.0 || r < 0.0);
  }
  return m;
}

void check_lambda(const ProblemParams& params, double lambda1, const SolveOptions& opts) {
  if (!opts.allow_near_lambda1 &&
      std::abs(params.lambda - lambda1) < opts.near_lambda1_cap * lambda1) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << params.lambda << " is within " << opts.near_lambda1_cap
        << " * lambda1 of lambda1 = " << lambda1 << " (override with allow_near_lambda1)";
    throw InvalidArgument(msg.str());
  }
}

struct Reduced {
  bool admissible = false;
  double f = 0.0, t = 0.0;
  EnergyParts parts;
};

class ReducedFunctional {
 public:
  ReducedFunctional(Branch branch, const BWeight& b, const ProblemParams& params,
                    const WeightTable& w, bool nonneg)
      : branch_(branch), b_(b), params_(params), w_(w),
        trunc_(nonneg ? Truncation::PositivePart : Truncation::None) {}

  Reduced eval(std::span<const double> d, std::vector<double>* g, SpgEval* ev) const {
    Reduced r;
    PartGradients pg;
    r.parts = evaluate_parts(d, b_, params_.beta, w_, trunc_, g ? &pg : nullptr);
    const FiberDiagnosis diag =
        classify_parts(r.parts, b_abs_integral(d, b_, params_.beta, trunc_), params_);
    if (diag.target_branch != branch_ || !diag.t_star) return r;
    const double p = params_.p(), beta = params_.beta, lam = params_.lambda;
    r.t = *diag.t_star;
    const double tp = std::pow(r.t, p), tb = std::pow(r.t, beta);
    r.f = fiber_value(diag.e_value, diag.b_value, r.t, params_);
    if (!std::isfinite(r.f)) return r;
    r.admissible = true;
    if (g) {
      g->resize(d.size());
      double ms = 0.0, ml = 0.0, mb = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        (*g)[i] = tp * (pg.seminorm_p[i] - lam * pg.lp_p[i]) / p - tb * pg.b_term[i] / beta;
        ms = std::max(ms, std::abs(pg.seminorm_p[i]));
        ml = std::max(ml, std::abs(pg.lp_p[i]));
        mb = std::max(mb, std::abs(pg.b_term[i]));
      }
      if (ev) {
        ev->f = r.f;
        ev->fscale = tp * (r.parts.seminorm_p + lam * r.parts.lp_p) / p +
                     tb * std::abs(r.parts.b_term) / beta;
        ev->gscale = tp * (ms + lam * ml) / p + tb * mb / beta;
        ev->aux = r.t * std::pow(r.parts.seminorm_p, 1.0 / p);
      }
    }
    return r;
  }

 private:
  Branch branch_;
  const BWeight& b_;
  const ProblemParams& params_;
  const WeightTable& w_;
  Truncation trunc_;
};

}  // namespace

std::vector<GridFunction> candidate_directions(const BWeight& b, const GridFunction& phi1) {
  check_same_grid(b.grid(), phi1.grid());
  const GridPtr& grid = phi1.grid_ptr();
  const Grid& g = *grid;
  const std::size_t n = phi1.size();
  const double p = 2.0;  // callers renormalize in their own exponent
  std::vector<std::vector<double>> raw;

  std::vector<double> phi(phi1.values().begin(), phi1.values().end());
  raw.push_back(phi);
  std::vector<double> bp = bumps(g, b.positive_node_mask());
  std::vector<double> bm = bumps(g, b.negative_node_mask());
  // Fall back to nodes touching a signed cell when no node is fully inside.
  if (std::all_of(bp.begin(), bp.end(), [](double v) { return v == 0.0; })) {
    bp = bumps(g, touching_mask(b, 1));
  }
  if (std::all_of(bm.begin(), bm.end(), [](double v) { return v == 0.0; })) {
    bm = bumps(g, touching_mask(b, -1));
  }
  normalize_lp(phi, p, grid);
  normalize_lp(bp, p, grid);
  normalize_lp(bm, p, grid);
  raw.push_back(bp);
  raw.push_back(bm);
  for (double s : {0.5, 2.0}) {
    std::vector<double> a(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = phi[i] + s * bp[i];
      c[i] = phi[i] + s * bm[i];
    }
    raw.push_back(std::move(a));
    raw.push_back(std::move(c));
  }
  const auto mpos = touching_mask(b, 1), mneg = touching_mask(b, -1);
  for (double s : {0.5, 0.9}) {
    std::vector<double> a(phi), c(phi);
    for (std::size_t i = 0; i < n; ++i) {
      if (mpos[i]) a[i] *= 1.0 - s;
      if (mneg[i]) c[i] *= 1.0 - s;
    }
    raw.push_back(std::move(a));
    raw.push_back(std::move(c));
  }

  std::vector<GridFunction> out;
  for (auto& v : raw) {
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) continue;
    normalize_lp(v, p, grid);
    out.emplace_back(grid, std::move(v));
  }
  return out;
}

std::optional<double> closed_form_reference(const ProblemParams& params, double lambda1,
                                            double phi1_lp_p, double b_phi1_beta) {
  if (!(params.lambda < lambda1) || !(b_phi1_beta > 0.0) || !(phi1_lp_p > 0.0)) return std::nullopt;
  const double e = (lambda1 - params.lambda) * phi1_lp_p;
  const auto t = critical_scaling(e, b_phi1_beta, params);
  if (!t) return std::nullopt;
  const double p = params.p(), beta = params.beta;
  return (1.0 / p - 1.0 / beta) * std::pow(*t, beta) * b_phi1_beta;
}

BranchSolution minimize_branch(Branch branch, const BWeight& b, const ProblemParams& params,
                               const WeightTable& w, const EigenResult& eig,
                               const SolveOptions& opts, const GridFunction* init) {
  if (branch == Branch::None) throw InvalidArgument("branch must be plus or minus");
  check_same_grid(b.grid(), w.grid());
  check_same_grid(eig.phi1.grid(), w.grid());
  if (opts.max_iter < 1 || !(opts.grad_tol > 0.0)) throw InvalidArgument("invalid solve options");
  check_lambda(params, eig.lambda1, opts);

  const bool sub = params.regime == Regime::Sublinear;
  // The branch needs E < 0 somewhere, which is impossible for lambda <= lambda1.
  const bool needs_e_minus = (sub && branch == Branch::NMinus) || (!sub && branch == Branch::NPlus);
  if (needs_e_minus && params.lambda <= eig.lambda1) {
    throw BranchEmpty(std::string("N") + (branch == Branch::NPlus ? "+" : "-") +
                      " is empty for lambda <= lambda1 in the " + to_string(params.regime) +
                      " regime");
  }

  const double p = params.p();
  const GridPtr& grid = w.grid_ptr();
  const ReducedFunctional rf(branch, b, params, w, opts.nonneg);

  // Pick the admissible starting direction with the lowest reduced value.
  std::vector<GridFunction> starts;
  if (init) {
    check_same_grid(init->grid(), w.grid());
    std::vector<double> v(init->values().begin(), init->values().end());
    if (opts.nonneg) {
      for (double& x : v) x = std::max(x, 0.0);
    }
    if (std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; })) {
      normalize_lp(v, p, grid);
      starts.emplace_back(grid, std::move(v));
    }
  }
  for (auto& c : candidate_directions(b, eig.phi1)) starts.push_back(std::move(c));

  const std::vector<double>* best = nullptr;
  std::vector<double> best_store;
  double best_f = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    std::vector<double> v(s.values().begin(), s.values().end());
    normalize_lp(v, p, grid);
    const Reduced r = rf.eval(v, nullptr, nullptr);
    if (r.admissible && r.f < best_f) {
      best_f = r.f;
      best_store = std::move(v);
      best = &best_store;
    }
  }
  if (!best) {
    throw BranchEmpty(std::string("no admissible starting direction for N") +
                      (branch == Branch::NPlus ? "+" : "-"));
  }

  SpgProblem prob;
  prob.nonneg = opts.nonneg;
  prob.project = [&](std::vector<double>& x) {
    if (opts.nonneg) {
      for (double& v : x) v = std::max(v, 0.0);
    }
    normalize_lp(x, p, grid);
  };
  prob.evaluate = [&](std::span<const double> x, std::vector<double>& g, SpgEval& ev) {
    return rf.eval(x, &g, &ev).admissible;
  };

  const bool bounded_check = sub && branch == Branch::NPlus && params.lambda < eig.lambda1;
  double start_norm = 0.0;
  if (bounded_check) {
    const Reduced r0 = rf.eval(*best, nullptr, nullptr);
    start_norm = r0.t * std::pow(r0.parts.seminorm_p, 1.0 / p);
    prob.on_accept = [&](std::span<const double> x, const SpgEval& ev) {
      if (ev.aux > opts.bound_factor * start_norm) {
        std::ostringstream msg;
        msg << "N+ iterate norm " << ev.aux << " exceeded " << opts.bound_factor
            << " times the starting norm " << start_norm;
        throw NotConverged(msg.str(), std::vector<double>(x.begin(), x.end()));
      }
    };
  }

  SpgOptions so;
  so.max_iter = opts.max_iter;
  so.grad_tol = opts.grad_tol;
  so.decrease_tol = 1e-14;
  so.stall_grad_tol = 1e-7;
  const SpgResult res = spg_minimize(prob, *best, grid->h(), so);

  const Reduced fin = rf.eval(res.x, nullptr, nullptr);
  BranchSolution sol{.u = GridFunction(grid, res.x).scaled(fin.t), .branch = branch, .stop_reason = {}};
  sol.t = fin.t;
  sol.iterations = res.iterations;
  sol.stationarity = res.stationarity;
  sol.converged = res.converged;
  sol.stop_reason = res.stop_reason;
  const EnergyReport rep = energy_report(sol.u, b, params, w);
  sol.j_value = rep.j_lambda;
  sol.b_integral = rep.b_term;
  sol.seminorm_p = rep.seminorm_p;
  sol.lp_p = rep.lp_p;
  sol.nehari_residual = std::abs(rep.e_lambda - rep.b_term);
  const GridFunction g = opts.nonneg ? grad_j_plus(sol.u, b, params, w) : grad_j(sol.u, b, params, w);
  sol.grad_residual = g.max_abs();
  sol.min_node_value = sol.u.min_value();
  return sol;
}

std::pair<BranchSolution, BranchSolution> solve_two_branches(const BWeight& b,
                                                             const ProblemParams& params,
                                                             const WeightTable& w,
                                                             const EigenResult& eig,
                                                             const SolveOptions& opts) {
  if (!(params.lambda > eig.lambda1)) {
    throw InvalidArgument("two-branch solve needs lambda > lambda1");
  }
  if (params.lambda - eig.lambda1 > opts.two_branch_cap * eig.lambda1) {
    std::ostringstream msg;
    msg << "lambda - lambda1 exceeds the two-branch cap " << opts.two_branch_cap << " * lambda1";
    throw InvalidArgument(msg.str());
  }
  const BCalibration cal = calibrate_b(b, eig.phi1, params.beta);
  if (!(cal.b_phi_integral < 0.0)) {
    throw InvalidArgument("two-branch solve needs integral b phi1^beta < 0");
  }
  BranchSolution plus = minimize_branch(Branch::NPlus, b, params, w, eig, opts);
  BranchSolution minus = minimize_branch(Branch::NMinus, b, params, w, eig, opts);
  return {std::move(plus), std::move(minus)};
}

}  // namespace nehari
