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

#include "nehari/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/descent.hpp"
#include "nehari/error.hpp"

namespace nehari {

double rayleigh_quotient(const GridFunction& u, const WeightTable& w) {
  check_same_grid(u.grid(), w.grid());
  const double l = lp_norm_p(u, w.kernel().p);
  if (!(l > 0.0)) throw InvalidArgument("Rayleigh quotient of the zero function");
  return w.seminorm_p(u.extended()) / l;
}

namespace {

void normalize_lp(std::vector<double>& x, double p, const GridPtr& grid) {
  const double l = lp_norm_p(GridFunction(grid, x), p);
  if (l > 0.0) {
    const double s = std::pow(l, -1.0 / p);
    for (double& v : x) v *= s;
  }
}

}  // namespace

EigenResult masked_eigenpair(const WeightTable& w, const std::vector<bool>& active,
                             const EigenOptions& opts) {
  const GridPtr& grid = w.grid_ptr();
  const std::size_t n = static_cast<std::size_t>(grid->n_interior());
  if (active.size() != n) throw InvalidArgument("mask length differs from the grid");
  if (std::count(active.begin(), active.end(), true) < 2) {
    throw InvalidArgument("eigenproblem needs at least 2 active nodes");
  }
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw InvalidArgument("invalid eigen options");
  const double p = w.kernel().p;
  const BWeight zero = BWeight::from_function(grid, [](double) { return 0.0; }, "zero");

  SpgProblem prob;
  prob.nonneg = opts.clamp;
  prob.project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || (opts.clamp && x[i] < 0.0)) x[i] = 0.0;
    }
    normalize_lp(x, p, grid);
  };
  prob.evaluate = [&](std::span<const double> x, std::vector<double>& g, SpgEval& ev) {
    PartGradients pg;
    const EnergyParts parts = evaluate_parts(x, zero, 2.0, w, Truncation::None, &pg);
    if (!(parts.lp_p > 0.0)) return false;
    const double r = parts.seminorm_p / parts.lp_p;
    double ms = 0.0, ml = 0.0;
    g.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = active[i] ? (pg.seminorm_p[i] - r * pg.lp_p[i]) / parts.lp_p : 0.0;
      if (active[i]) {
        ms = std::max(ms, std::abs(pg.seminorm_p[i]));
        ml = std::max(ml, std::abs(pg.lp_p[i]));
      }
    }
    ev.f = r;
    ev.fscale = r;
    ev.gscale = (ms + r * ml) / parts.lp_p;
    return true;
  };

  std::vector<double> x0(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid->node(static_cast<int>(i));
    x0[i] = active[i] ? 1.0 - x * x : 0.0;
  }

  SpgOptions so;
  so.max_iter = opts.max_iter;
  so.grad_tol = 1e-11;
  so.decrease_tol = opts.tol;
  so.stall_grad_tol = 1e-7;
  const SpgResult res = spg_minimize(prob, std::move(x0), grid->h(), so);
  if (!res.converged) {
    throw NotConverged("eigen solver did not converge in " + std::to_string(res.iterations) +
                           " iterations (" + res.stop_reason + ")",
                       res.x);
  }
  EigenResult out{0.0, GridFunction(grid, res.x), res.iterations, res.last_rel_decrease,
                  res.stationarity};
  out.lambda1 = rayleigh_quotient(out.phi1, w);
  return out;
}

EigenResult principal_eigenpair(const WeightTable& w, const EigenOptions& opts) {
  return masked_eigenpair(w, std::vector<bool>(static_cast<std::size_t>(w.grid().n_interior()), true),
                          opts);
}

EigenResult subdomain_eigen(const WeightTable& w, const BWeight& b, const EigenOptions& opts) {
  check_same_grid(w.grid(), b.grid());
  const auto mask = b.positive_node_mask();
  if (std::count(mask.begin(), mask.end(), true) < 2) {
    throw InvalidArgument("{b > 0} contains fewer than 2 interior nodes on this grid");
  }
  return masked_eigenpair(w, mask, opts);
}

}  // namespace nehari
