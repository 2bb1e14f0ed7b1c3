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

#include "nehari/kernel.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nehari/error.hpp"

namespace nehari {

void KernelSpec::validate() const {
  std::ostringstream msg;
  if (!(p >= 2.0) || !std::isfinite(p)) msg << "p must be >= 2 (got " << p << "); ";
  if (!(alpha > 0.0 && alpha < 1.0)) msg << "alpha must lie in (0, 1) (got " << alpha << "); ";
  if (!(p * alpha < 1.0)) msg << "p * alpha must be < 1 in one dimension (got " << p * alpha << "); ";
  if (!(theta > 0.0) || !std::isfinite(theta)) msg << "theta must be > 0 (got " << theta << "); ";
  if (std::string m = msg.str(); !m.empty()) {
    m.resize(m.size() - 2);  // trailing "; "
    throw InvalidArgument("invalid kernel: " + m);
  }
}

double KernelSpec::operator()(double z) const {
  return theta * std::pow(std::abs(z), -(1.0 + p_alpha()));
}

double exterior_weight(double x, const KernelSpec& kernel) {
  if (!(std::abs(x) < 1.0)) {
    throw InvalidArgument("exterior weight is singular at |x| >= 1");
  }
  const double s = kernel.p_alpha();
  return kernel.theta * (std::pow(1.0 + x, -s) + std::pow(1.0 - x, -s)) / s;
}

double same_cell_constant(const KernelSpec& kernel) {
  const double g = kernel.p - 1.0 - kernel.p_alpha();
  return 2.0 * kernel.theta / ((g + 1.0) * (g + 2.0));
}

WeightTable::WeightTable(GridPtr grid, KernelSpec kernel)
    : grid_(std::move(grid)), kernel_(kernel), pow_(kernel.p) {
  kernel_.validate();
  const double h = grid_->h();
  const double p = kernel_.p;
  const double s = kernel_.p_alpha();
  const double hs = std::pow(h, 1.0 - s);

  same_coef_ = same_cell_constant(kernel_) * hs;

  touch_coef_ = kernel_.theta * hs / (p + 1.0 - s);
  const UnitRule& r20 = gauss_legendre_unit(20);
  touch_nodes_ = r20.nodes;
  touch_weights_.resize(r20.size());
  for (std::size_t k = 0; k < r20.size(); ++k) {
    touch_weights_[k] = r20.weights[k] * std::pow(1.0 + r20.nodes[k], -1.0 - s);
  }

  const UnitRule& r6 = gauss_legendre_unit(6);
  sep_xi_ = r6.nodes;
  const int n_cells = grid_->n_cells();
  separated_.assign(static_cast<std::size_t>(n_cells) * 36, 0.0);
  for (int d = 2; d < n_cells; ++d) {
    double* w = &separated_[static_cast<std::size_t>(d) * 36];
    for (int k = 0; k < 6; ++k) {
      for (int l = 0; l < 6; ++l) {
        const double dist = (d + r6.nodes[l] - r6.nodes[k]) * h;
        w[k * 6 + l] = kernel_.theta * r6.weights[k] * r6.weights[l] * h * h *
                       std::pow(dist, -1.0 - s);
      }
    }
  }

  const UnitRule& r8 = gauss_legendre_unit(8);
  exterior_w_.resize(static_cast<std::size_t>(n_cells) * 8);
  exterior_nodes_.resize(exterior_w_.size());
  exterior_factor_.resize(exterior_w_.size());
  for (int c = 0; c < n_cells; ++c) {
    for (int k = 0; k < 8; ++k) {
      const std::size_t idx = static_cast<std::size_t>(c) * 8 + static_cast<std::size_t>(k);
      const double x = grid_->cell_left(c) + r8.nodes[static_cast<std::size_t>(k)] * h;
      exterior_nodes_[idx] = x;
      exterior_w_[idx] = exterior_weight(x, kernel_);
      exterior_factor_[idx] = 2.0 * h * r8.weights[static_cast<std::size_t>(k)] * exterior_w_[idx];
    }
  }

  // Boundary cell: u = U (d / h) with d the distance to the endpoint.
  // 2 integral_0^h (d/h)^p w dd, with the d^{-p alpha} part in closed form.
  const double singular = h * std::pow(h, -s) / (p - s + 1.0);
  auto smooth_part = [&](double t) { return std::pow(t, p) * std::pow(2.0 - h * t, -s); };
  double err = 0.0;
  const double smooth =
      h * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(smooth_part, 0.0, 1.0, 20,
                                                                         1e-15, &err);
  boundary_coef_ = 2.0 * kernel_.theta / s * (singular + smooth);
}

PairRule WeightTable::pair_rule(int a, int b) {
  const int d = std::abs(a - b);
  if (d == 0) return PairRule::SameCell;
  if (d == 1) return PairRule::Touching;
  return PairRule::Separated;
}

std::span<const double> WeightTable::separated_weights(int offset) const {
  if (offset < 2 || offset >= grid_->n_cells()) {
    throw InvalidArgument("separated cell offset out of range");
  }
  return {separated_.data() + static_cast<std::size_t>(offset) * 36, 36};
}

double WeightTable::touching_pair(double da, double db, double* g_da, double* g_db) const {
  double val = 0.0, ga = 0.0, gb = 0.0;
  const bool want_grad = g_da != nullptr;
  for (std::size_t k = 0; k < touch_nodes_.size(); ++k) {
    const double v = touch_nodes_[k];
    const double w = touch_weights_[k];
    if (want_grad) {
      double d1 = 0.0, d2 = 0.0;
      const double f1 = pow_.value_and_derivative(da + db * v, &d1);
      const double f2 = pow_.value_and_derivative(da * v + db, &d2);
      val += w * (f1 + f2);
      ga += w * (d1 + d2 * v);
      gb += w * (d1 * v + d2);
    } else {
      val += w * (pow_.value(da + db * v) + pow_.value(da * v + db));
    }
  }
  if (want_grad) {
    *g_da = touch_coef_ * ga;
    *g_db = touch_coef_ * gb;
  }
  return touch_coef_ * val;
}

double WeightTable::pair_energy(int a, int b, std::span<const double> ext) const {
  const int n_cells = grid_->n_cells();
  if (a < 0 || b < 0 || a >= n_cells || b >= n_cells) throw InvalidArgument("cell index out of range");
  if (ext.size() != static_cast<std::size_t>(n_cells) + 1) throw InvalidArgument("grid mismatch");
  auto U = [&](int i) { return ext[static_cast<std::size_t>(i)]; };
  switch (pair_rule(a, b)) {
    case PairRule::SameCell:
      return same_coef_ * pow_.value(U(a + 1) - U(a));
    case PairRule::Touching: {
      const int j = std::max(a, b);  // shared node
      return touching_pair(U(j) - U(j - 1), U(j + 1) - U(j), nullptr, nullptr);
    }
    case PairRule::Separated: {
      const int lo = std::min(a, b), hi = std::max(a, b);
      const auto w = separated_weights(hi - lo);
      double val = 0.0;
      for (int k = 0; k < 6; ++k) {
        const double xa = sep_xi_[static_cast<std::size_t>(k)];
        const double va = U(lo) * (1.0 - xa) + U(lo + 1) * xa;
        for (int l = 0; l < 6; ++l) {
          const double xb = sep_xi_[static_cast<std::size_t>(l)];
          const double vb = U(hi) * (1.0 - xb) + U(hi + 1) * xb;
          val += w[static_cast<std::size_t>(k * 6 + l)] * pow_.value(va - vb);
        }
      }
      return val;
    }
  }
  return 0.0;
}

double WeightTable::interior_seminorm_p(std::span<const double> ext) const {
  const int n_cells = grid_->n_cells();
  double total = 0.0;
  for (int a = 0; a < n_cells; ++a) {
    for (int b = 0; b < n_cells; ++b) total += pair_energy(a, b, ext);
  }
  return total;
}

double WeightTable::exterior_cell(int c, double ua, double ub, double* g_ua, double* g_ub) const {
  const UnitRule& r8 = gauss_legendre_unit(8);
  const bool want_grad = g_ua != nullptr;
  double val = 0.0, ga = 0.0, gb = 0.0;
  if (!(ua * ub < 0.0)) {
    const double* f = &exterior_factor_[static_cast<std::size_t>(c) * 8];
    for (std::size_t k = 0; k < 8; ++k) {
      const double t = r8.nodes[k];
      if (want_grad) {
        double d = 0.0;
        val += f[k] * pow_.value_and_derivative(ua + (ub - ua) * t, &d);
        ga += f[k] * d * (1.0 - t);
        gb += f[k] * d * t;
      } else {
        val += f[k] * pow_.value(ua + (ub - ua) * t);
      }
    }
  } else {
    // Split at the zero. The split point moves with (ua, ub), but the exact
    // integral does not depend on it, so the gradient holds it fixed.
    const double h = grid_->h();
    const double z = ua / (ua - ub);
    const double x0 = grid_->cell_left(c);
    const double pieces[2][2] = {{0.0, z}, {z, 1.0}};
    for (const auto& pc : pieces) {
      const double len = pc[1] - pc[0];
      for (std::size_t k = 0; k < 8; ++k) {
        const double t = pc[0] + len * r8.nodes[k];
        const double f = 2.0 * h * len * r8.weights[k] * exterior_weight(x0 + t * h, kernel_);
        if (want_grad) {
          double d = 0.0;
          val += f * pow_.value_and_derivative(ua + (ub - ua) * t, &d);
          ga += f * d * (1.0 - t);
          gb += f * d * t;
        } else {
          val += f * pow_.value(ua + (ub - ua) * t);
        }
      }
    }
  }
  if (want_grad) {
    *g_ua += ga;
    *g_ub += gb;
  }
  return val;
}

double WeightTable::exterior_term(std::span<const double> ext) const {
  const int n_cells = grid_->n_cells();
  double total = boundary_coef_ * (pow_.value(ext[1]) + pow_.value(ext[ext.size() - 2]));
  for (int c = 1; c + 1 < n_cells; ++c) {
    total += exterior_cell(c, ext[static_cast<std::size_t>(c)], ext[static_cast<std::size_t>(c) + 1],
                           nullptr, nullptr);
  }
  return total;
}

double WeightTable::seminorm_p(std::span<const double> ext, std::span<double> grad) const {
  const int n_cells = grid_->n_cells();
  if (ext.size() != static_cast<std::size_t>(n_cells) + 1) throw InvalidArgument("grid mismatch");
  const bool want_grad = !grad.empty();
  if (want_grad && grad.size() != ext.size()) throw InvalidArgument("gradient buffer size mismatch");
  auto U = [&](int i) { return ext[static_cast<std::size_t>(i)]; };
  auto G = [&](int i) -> double& { return grad[static_cast<std::size_t>(i)]; };

  double total = 0.0;

  // Same cell.
  for (int c = 0; c < n_cells; ++c) {
    if (want_grad) {
      double d = 0.0;
      total += same_coef_ * pow_.value_and_derivative(U(c + 1) - U(c), &d);
      G(c + 1) += same_coef_ * d;
      G(c) -= same_coef_ * d;
    } else {
      total += same_coef_ * pow_.value(U(c + 1) - U(c));
    }
  }

  // Touching pairs, both orders.
  for (int j = 1; j < n_cells; ++j) {
    const double da = U(j) - U(j - 1), db = U(j + 1) - U(j);
    if (want_grad) {
      double gda = 0.0, gdb = 0.0;
      total += 2.0 * touching_pair(da, db, &gda, &gdb);
      G(j) += 2.0 * (gda - gdb);
      G(j - 1) -= 2.0 * gda;
      G(j + 1) += 2.0 * gdb;
    } else {
      total += 2.0 * touching_pair(da, db, nullptr, nullptr);
    }
  }

  // Separated pairs, both orders.
  std::vector<double> cell_vals(static_cast<std::size_t>(n_cells) * 6);
  for (int c = 0; c < n_cells; ++c) {
    for (int k = 0; k < 6; ++k) {
      const double x = sep_xi_[static_cast<std::size_t>(k)];
      cell_vals[static_cast<std::size_t>(c * 6 + k)] = U(c) * (1.0 - x) + U(c + 1) * x;
    }
  }
  std::vector<double> cell_grad(want_grad ? cell_vals.size() : 0, 0.0);
  double sep = 0.0;
  for (int a = 0; a < n_cells; ++a) {
    const double* va = &cell_vals[static_cast<std::size_t>(a * 6)];
    for (int b = a + 2; b < n_cells; ++b) {
      const double* vb = &cell_vals[static_cast<std::size_t>(b * 6)];
      const double* w = &separated_[static_cast<std::size_t>(b - a) * 36];
      if (want_grad) {
        double* ga = &cell_grad[static_cast<std::size_t>(a * 6)];
        double* gb = &cell_grad[static_cast<std::size_t>(b * 6)];
        for (int k = 0; k < 6; ++k) {
          for (int l = 0; l < 6; ++l) {
            double d = 0.0;
            const double wk = w[k * 6 + l];
            sep += wk * pow_.value_and_derivative(va[k] - vb[l], &d);
            ga[k] += wk * d;
            gb[l] -= wk * d;
          }
        }
      } else {
        for (int k = 0; k < 6; ++k) {
          for (int l = 0; l < 6; ++l) sep += w[k * 6 + l] * pow_.value(va[k] - vb[l]);
        }
      }
    }
  }
  total += 2.0 * sep;
  if (want_grad) {
    for (int c = 0; c < n_cells; ++c) {
      for (int k = 0; k < 6; ++k) {
        const double x = sep_xi_[static_cast<std::size_t>(k)];
        const double g = 2.0 * cell_grad[static_cast<std::size_t>(c * 6 + k)];
        G(c) += g * (1.0 - x);
        G(c + 1) += g * x;
      }
    }
  }

  // Exterior term.
  if (want_grad) {
    double d = 0.0;
    total += boundary_coef_ * pow_.value_and_derivative(U(1), &d);
    G(1) += boundary_coef_ * d;
    total += boundary_coef_ * pow_.value_and_derivative(U(n_cells - 1), &d);
    G(n_cells - 1) += boundary_coef_ * d;
    for (int c = 1; c + 1 < n_cells; ++c) total += exterior_cell(c, U(c), U(c + 1), &G(c), &G(c + 1));
  } else {
    total += boundary_coef_ * (pow_.value(U(1)) + pow_.value(U(n_cells - 1)));
    for (int c = 1; c + 1 < n_cells; ++c) total += exterior_cell(c, U(c), U(c + 1), nullptr, nullptr);
  }
  return total;
}

WeightTablePtr assemble_weights(const GridPtr& grid, const KernelSpec& kernel) {
  return std::make_shared<const WeightTable>(grid, kernel);
}

}  // namespace nehari
