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

#include "nehari/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nehari/error.hpp"
#include "nehari/quadrature.hpp"

namespace nehari {

Grid::Grid(int n_interior) : n_(n_interior) {
  if (n_interior < 2) {
    throw InvalidArgument("grid needs at least 2 interior nodes, got " +
                          std::to_string(n_interior));
  }
  h_ = 2.0 / (n_ + 1);
  nodes_.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) nodes_[static_cast<std::size_t>(i)] = -1.0 + (i + 1) * h_;
}

GridPtr make_grid(int n_interior) { return std::make_shared<const Grid>(n_interior); }

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("grid function needs a grid");
  if (values_.size() != static_cast<std::size_t>(grid_->n_interior())) {
    throw InvalidArgument("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_->n_interior()) +
                          " interior nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("grid function value is not finite");
  }
}

GridFunction::GridFunction(GridPtr grid)
    : GridFunction(grid, std::vector<double>(grid ? static_cast<std::size_t>(grid->n_interior()) : 0, 0.0)) {}

std::vector<double> GridFunction::extended() const {
  std::vector<double> out(values_.size() + 2, 0.0);
  std::copy(values_.begin(), values_.end(), out.begin() + 1);
  return out;
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return GridFunction(grid_, std::move(v));
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double GridFunction::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction interpolate(const GridPtr& grid, const std::function<double(double)>& f) {
  std::vector<double> v(static_cast<std::size_t>(grid->n_interior()));
  for (int i = 0; i < grid->n_interior(); ++i) {
    double y = f(grid->node(i));
    if (!std::isfinite(y)) {
      throw InvalidArgument("interpolated function is not finite at x = " +
                            std::to_string(grid->node(i)));
    }
    v[static_cast<std::size_t>(i)] = y;
  }
  return GridFunction(grid, std::move(v));
}

namespace {

inline double power_of(double v, double q, bool positive_part) {
  if (positive_part) return v > 0.0 ? std::pow(v, q) : 0.0;
  double a = std::abs(v);
  return a == 0.0 ? 0.0 : std::pow(a, q);
}

// Antiderivative in v of power_of(v, q).
inline double power_antiderivative(double v, double q, bool positive_part) {
  if (positive_part) return v > 0.0 ? std::pow(v, q + 1.0) / (q + 1.0) : 0.0;
  double a = std::abs(v);
  return a == 0.0 ? 0.0 : v * std::pow(a, q) / (q + 1.0);
}

inline double power_derivative(double v, double q, bool positive_part) {
  if (positive_part) return v > 0.0 ? q * std::pow(v, q - 1.0) : 0.0;
  double a = std::abs(v);
  return a == 0.0 ? 0.0 : q * std::pow(a, q) / v;
}

}  // namespace

double cell_power_integral(double ua, double ub, double q, double h, bool positive_part,
                           double* d_ua, double* d_ub) {
  const double d = ub - ua;
  const double m = std::max(std::abs(ua), std::abs(ub));
  if (m == 0.0) {
    if (d_ua) *d_ua = 0.0;
    if (d_ub) *d_ub = 0.0;
    return 0.0;
  }
  if (std::abs(d) <= 0.25 * m) {
    // No sign change on the cell and the integrand is analytic on a wide
    // neighbourhood of it: Gauss-Legendre is accurate to roundoff and avoids
    // the cancellation in the divided difference below.
    const UnitRule& rule = gauss_legendre_unit(8);
    double val = 0.0, ga = 0.0, gb = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double t = rule.nodes[k];
      const double v = ua + d * t;
      val += rule.weights[k] * power_of(v, q, positive_part);
      if (d_ua || d_ub) {
        const double fp = power_derivative(v, q, positive_part);
        ga += rule.weights[k] * fp * (1.0 - t);
        gb += rule.weights[k] * fp * t;
      }
    }
    if (d_ua) *d_ua = h * ga;
    if (d_ub) *d_ub = h * gb;
    return h * val;
  }
  const double dg = power_antiderivative(ub, q, positive_part) -
                    power_antiderivative(ua, q, positive_part);
  if (d_ua) *d_ua = h * (dg - power_of(ua, q, positive_part) * d) / (d * d);
  if (d_ub) *d_ub = h * (power_of(ub, q, positive_part) * d - dg) / (d * d);
  return h * dg / d;
}

double lp_norm_p(const GridFunction& u, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("lp_norm_p needs q >= 1");
  const auto ext = u.extended();
  const double h = u.grid().h();
  double sum = 0.0;
  for (std::size_t c = 0; c + 1 < ext.size(); ++c) {
    sum += cell_power_integral(ext[c], ext[c + 1], q, h, false);
  }
  return sum;
}

}  // namespace nehari
