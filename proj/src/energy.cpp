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

#include "nehari/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nehari/error.hpp"
#include "nehari/quadrature.hpp"

namespace nehari {

const char* to_string(Regime r) {
  return r == Regime::Sublinear ? "sublinear" : "superlinear";
}

double critical_exponent(const KernelSpec& kernel) {
  return kernel.p / (1.0 - kernel.p_alpha());
}

ProblemParams ProblemParams::make(const KernelSpec& kernel, double beta, double lambda) {
  kernel.validate();
  ProblemParams out;
  out.kernel = kernel;
  out.beta = beta;
  out.lambda = lambda;
  const double p = kernel.p;
  const double pstar = critical_exponent(kernel);
  if (!std::isfinite(beta) || !(beta > 1.0)) {
    throw InvalidArgument("beta must be > 1");
  }
  if (beta == p) throw InvalidArgument("beta = p (resonant case) is not supported");
  if (beta < p) {
    out.regime = Regime::Sublinear;
  } else if (beta < pstar) {
    out.regime = Regime::Superlinear;
  } else {
    std::ostringstream msg;
    msg << "beta = " << beta << " is not below the critical exponent p* = " << pstar;
    throw InvalidArgument(msg.str());
  }
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw InvalidArgument("lambda must be > 0");
  return out;
}

ProblemParams ProblemParams::with_lambda(double lambda) const {
  return make(kernel, beta, lambda);
}

void check_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) {
    throw InvalidArgument("grid mismatch: " + std::to_string(a.n_interior()) + " vs " +
                          std::to_string(b.n_interior()) + " interior nodes");
  }
}

// ---------------------------------------------------------------------------
// BWeight

BWeight::BWeight(GridPtr grid, std::vector<double> cells, std::string description)
    : grid_(std::move(grid)), cells_(std::move(cells)), description_(std::move(description)) {}

BWeight BWeight::from_function(const GridPtr& grid, const std::function<double(double)>& f,
                               std::string description) {
  std::vector<double> cells(static_cast<std::size_t>(grid->n_cells()));
  for (int c = 0; c < grid->n_cells(); ++c) {
    const double v = f(grid->cell_midpoint(c));
    if (!std::isfinite(v)) throw InvalidArgument("b is not finite");
    cells[static_cast<std::size_t>(c)] = v;
  }
  return BWeight(grid, std::move(cells), std::move(description));
}

BWeight BWeight::segments(const GridPtr& grid, std::vector<Segment> segs) {
  if (segs.empty()) throw InvalidArgument("b needs at least one segment");
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  if (segs.front().lo > -1.0 || segs.back().hi < 1.0) {
    throw InvalidArgument("b segments must cover (-1, 1)");
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!(segs[i].hi > segs[i].lo)) throw InvalidArgument("b segment with hi <= lo");
    if (i > 0 && segs[i].lo > segs[i - 1].hi) throw InvalidArgument("gap between b segments");
  }
  std::ostringstream desc;
  desc << "segments";
  for (const auto& s : segs) desc << " [" << s.lo << "," << s.hi << "]=" << s.value;
  auto f = [segs](double x) {
    for (const auto& s : segs) {
      if (x >= s.lo && x <= s.hi) return s.value;
    }
    return segs.back().value;
  };
  return from_function(grid, f, desc.str());
}

BWeight BWeight::preset(const GridPtr& grid, const std::string& name, std::span<const double> params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw InvalidArgument("b preset '" + name + "' takes " + std::to_string(n) + " parameter(s)");
    }
  };
  std::ostringstream desc;
  if (name == "pos-core") {
    need(1);
    const double c = params[0];
    desc << "pos-core(" << c << ")";
    return from_function(grid, [c](double x) { return std::abs(x) <= 0.5 ? 1.0 : -c; }, desc.str());
  }
  if (name == "neg-core") {
    need(1);
    const double c = params[0];
    desc << "neg-core(" << c << ")";
    return from_function(grid, [c](double x) { return std::abs(x) <= 0.5 ? -1.0 : c; }, desc.str());
  }
  if (name == "cosine") {
    need(2);
    const double c0 = params[0], c1 = params[1];
    desc << "cosine(" << c0 << "," << c1 << ")";
    return from_function(
        grid, [c0, c1](double x) { return c0 + c1 * std::cos(std::numbers::pi * x); }, desc.str());
  }
  throw InvalidArgument("unknown b preset '" + name + "'");
}

double BWeight::sup() const { return *std::max_element(cells_.begin(), cells_.end()); }
double BWeight::inf() const { return *std::min_element(cells_.begin(), cells_.end()); }

std::vector<bool> BWeight::positive_node_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(grid_->n_interior()));
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = cells_[i] > 0.0 && cells_[i + 1] > 0.0;
  return mask;
}

std::vector<bool> BWeight::negative_node_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(grid_->n_interior()));
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = cells_[i] < 0.0 && cells_[i + 1] < 0.0;
  return mask;
}

// ---------------------------------------------------------------------------
// Energies

EnergyParts evaluate_parts(std::span<const double> values, const BWeight& b, double beta,
                           const WeightTable& w, Truncation trunc, PartGradients* grads) {
  const Grid& grid = w.grid();
  check_same_grid(grid, b.grid());
  const std::size_t n = static_cast<std::size_t>(grid.n_interior());
  if (values.size() != n) throw InvalidArgument("grid mismatch: value count differs from grid");
  const double p = w.kernel().p;
  const double h = grid.h();
  const bool positive = trunc == Truncation::PositivePart;

  std::vector<double> ext(n + 2, 0.0);
  std::copy(values.begin(), values.end(), ext.begin() + 1);

  EnergyParts parts;
  std::vector<double> g_s, g_l, g_b;
  if (grads) {
    g_s.assign(n + 2, 0.0);
    g_l.assign(n + 2, 0.0);
    g_b.assign(n + 2, 0.0);
    parts.seminorm_p = w.seminorm_p(ext, g_s);
  } else {
    parts.seminorm_p = w.seminorm_p(ext);
  }

  for (std::size_t c = 0; c <= n; ++c) {
    const double ua = ext[c], ub = ext[c + 1];
    if (ua == 0.0 && ub == 0.0) continue;
    const double bc = b.cell(static_cast<int>(c));
    if (grads) {
      double da = 0.0, db = 0.0;
      parts.lp_p += cell_power_integral(ua, ub, p, h, positive, &da, &db);
      g_l[c] += da;
      g_l[c + 1] += db;
      if (bc != 0.0) {
        parts.b_term += bc * cell_power_integral(ua, ub, beta, h, positive, &da, &db);
        g_b[c] += bc * da;
        g_b[c + 1] += bc * db;
      }
    } else {
      parts.lp_p += cell_power_integral(ua, ub, p, h, positive);
      if (bc != 0.0) parts.b_term += bc * cell_power_integral(ua, ub, beta, h, positive);
    }
  }

  if (grads) {
    grads->seminorm_p.assign(g_s.begin() + 1, g_s.end() - 1);
    grads->lp_p.assign(g_l.begin() + 1, g_l.end() - 1);
    grads->b_term.assign(g_b.begin() + 1, g_b.end() - 1);
  }
  return parts;
}

EnergyReport make_report(const EnergyParts& parts, const ProblemParams& params) {
  EnergyReport r;
  r.seminorm_p = parts.seminorm_p;
  r.lp_p = parts.lp_p;
  r.b_term = parts.b_term;
  r.e_lambda = parts.seminorm_p - params.lambda * parts.lp_p;
  r.j_lambda = parts.seminorm_p / params.p() - params.lambda * parts.lp_p / params.p() -
               parts.b_term / params.beta;
  return r;
}

double seminorm_p(const GridFunction& u, const WeightTable& w) {
  check_same_grid(u.grid(), w.grid());
  return w.seminorm_p(u.extended());
}

double interior_seminorm_p(const GridFunction& u, const WeightTable& w) {
  check_same_grid(u.grid(), w.grid());
  return w.interior_seminorm_p(u.extended());
}

namespace {

void check_inputs(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                  const WeightTable& w) {
  check_same_grid(u.grid(), w.grid());
  check_same_grid(u.grid(), b.grid());
  if (params.kernel.p != w.kernel().p || params.kernel.alpha != w.kernel().alpha ||
      params.kernel.theta != w.kernel().theta) {
    throw InvalidArgument("problem kernel differs from the weight table kernel");
  }
}

GridFunction gradient_of(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                         const WeightTable& w, Truncation trunc) {
  check_inputs(u, b, params, w);
  PartGradients g;
  evaluate_parts(u.values(), b, params.beta, w, trunc, &g);
  std::vector<double> out(u.size());
  const double p = params.p();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = g.seminorm_p[i] / p - params.lambda * g.lp_p[i] / p - g.b_term[i] / params.beta;
  }
  return GridFunction(u.grid_ptr(), std::move(out));
}

}  // namespace

EnergyReport energy_report(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                           const WeightTable& w) {
  check_inputs(u, b, params, w);
  return make_report(evaluate_parts(u.values(), b, params.beta, w), params);
}

double j_lambda(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                const WeightTable& w) {
  return energy_report(u, b, params, w).j_lambda;
}

GridFunction grad_j(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                    const WeightTable& w) {
  return gradient_of(u, b, params, w, Truncation::None);
}

double j_plus(const GridFunction& u, const BWeight& b, const ProblemParams& params,
              const WeightTable& w) {
  check_inputs(u, b, params, w);
  return make_report(evaluate_parts(u.values(), b, params.beta, w, Truncation::PositivePart), params)
      .j_lambda;
}

GridFunction grad_j_plus(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                         const WeightTable& w) {
  return gradient_of(u, b, params, w, Truncation::PositivePart);
}

BCalibration calibrate_b(const BWeight& b, const GridFunction& phi1, double beta) {
  check_same_grid(b.grid(), phi1.grid());
  const auto ext = phi1.extended();
  const double h = phi1.grid().h();
  BCalibration out;
  for (std::size_t c = 0; c + 1 < ext.size(); ++c) {
    out.b_phi_integral +=
        b.cell(static_cast<int>(c)) * cell_power_integral(ext[c], ext[c + 1], beta, h, false);
  }
  out.sign = out.b_phi_integral > 0.0 ? 1 : (out.b_phi_integral < 0.0 ? -1 : 0);
  return out;
}

std::pair<BWeight, BCalibration> b_preset(const GridPtr& grid, const std::string& name,
                                          std::span<const double> params,
                                          const GridFunction& phi1, double beta) {
  BWeight b = BWeight::preset(grid, name, params);
  BCalibration cal = calibrate_b(b, phi1, beta);
  return {std::move(b), cal};
}

double angle_to(const GridFunction& u, const GridFunction& phi, double p) {
  check_same_grid(u.grid(), phi.grid());
  const auto eu = u.extended();
  const auto ep = phi.extended();
  const double h = u.grid().h();
  const UnitRule& rule = gauss_legendre_unit(8);
  double pairing = 0.0;
  for (std::size_t c = 0; c + 1 < eu.size(); ++c) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double t = rule.nodes[k];
      const double uv = eu[c] + (eu[c + 1] - eu[c]) * t;
      const double pv = ep[c] + (ep[c + 1] - ep[c]) * t;
      const double a = std::abs(pv);
      const double dual = a == 0.0 ? 0.0 : std::pow(a, p - 1.0) * (pv > 0 ? 1.0 : -1.0);
      pairing += h * rule.weights[k] * uv * dual;
    }
  }
  const double nu = std::pow(lp_norm_p(u, p), 1.0 / p);
  const double np = std::pow(lp_norm_p(phi, p), 1.0 / p);
  if (nu == 0.0 || np == 0.0) throw InvalidArgument("angle_to needs nonzero functions");
  return 1.0 - pairing / (nu * std::pow(np, p - 1.0));
}

}  // namespace nehari
