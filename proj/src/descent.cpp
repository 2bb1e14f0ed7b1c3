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

#include "nehari/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nehari/error.hpp"

namespace nehari {

double stationarity(std::span<const double> x, std::span<const double> g, double gscale, bool nonneg) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    // At an active bound only a descent direction into the region counts.
    if (nonneg && x[i] <= 0.0 && g[i] > 0.0) continue;
    m = std::max(m, std::abs(g[i]));
  }
  if (gscale > 0.0) return m / gscale;
  return m == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

namespace {

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

SpgResult spg_minimize(const SpgProblem& problem, std::vector<double> x0, double h,
                       const SpgOptions& opts) {
  const std::size_t n = x0.size();
  SpgResult res;
  res.x = std::move(x0);
  problem.project(res.x);
  res.g.assign(n, 0.0);
  if (!problem.evaluate(res.x, res.g, res.eval)) {
    throw InvalidArgument("descent start point is not admissible");
  }
  res.stationarity = stationarity(res.x, res.g, res.eval.gscale, problem.nonneg);

  // First step moves the largest node by 10% of the iterate's size (or by
  // 0.1 from the origin).
  const double gmax = max_abs(res.g);
  const double xmax = max_abs(res.x);
  double step = gmax > 0.0 ? 0.1 * (xmax > 0.0 ? xmax : 1.0) * h / gmax : 1.0;

  std::vector<double> trial(n), gtrial(n);
  int stall = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (res.stationarity <= opts.grad_tol) {
      res.converged = true;
      res.stop_reason = "stationary";
      return res;
    }
    bool accepted = false;
    SpgEval ev;
    double s = step;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, s *= opts.shrink) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = res.x[i] - s * res.g[i] / h;
      problem.project(trial);
      if (!problem.evaluate(trial, gtrial, ev)) continue;
      double gd = 0.0;
      for (std::size_t i = 0; i < n; ++i) gd += res.g[i] * (trial[i] - res.x[i]);
      const double slack = opts.noise * std::max(res.eval.fscale, std::abs(res.eval.f));
      if (ev.f <= res.eval.f + opts.armijo_c * std::min(gd, 0.0) + slack) {
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      res.converged = res.stationarity <= opts.stall_grad_tol;
      res.stop_reason = "line search failed";
      return res;
    }

    // Barzilai-Borwein length in the lumped-mass metric.
    double sxx = 0.0, sxg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = trial[i] - res.x[i];
      sxx += dx * dx;
      sxg += dx * (gtrial[i] - res.g[i]);
    }
    if (sxg > 0.0 && sxx > 0.0) {
      step = h * sxx / sxg;
    } else {
      step = s * 2.0;
    }

    const double decrease = res.eval.f - ev.f;
    const double denom = std::max(std::abs(res.eval.f), res.eval.fscale);
    res.last_rel_decrease = denom > 0.0 ? std::abs(decrease) / denom : 0.0;
    res.x.swap(trial);
    res.g.swap(gtrial);
    res.eval = ev;
    res.stationarity = stationarity(res.x, res.g, res.eval.gscale, problem.nonneg);
    if (problem.on_accept) problem.on_accept(res.x, res.eval);

    if (res.last_rel_decrease < opts.decrease_tol && res.stationarity <= opts.stall_grad_tol) {
      if (++stall >= opts.stall_iters) {
        res.converged = true;
        res.stop_reason = "stalled decrease";
        return res;
      }
    } else {
      stall = 0;
    }
    if (sxx == 0.0) {
      res.converged = res.stationarity <= opts.stall_grad_tol;
      res.stop_reason = "zero step";
      return res;
    }
  }
  res.converged = res.stationarity <= opts.grad_tol;
  res.stop_reason = res.converged ? "stationary" : "max_iter";
  return res;
}

}  // namespace nehari
