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

#ifndef NEHARI_ORACLE_HPP
#define NEHARI_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nehari/energy.hpp"
#include "nehari/fiber.hpp"
#include "nehari/grid.hpp"
#include "nehari/kernel.hpp"

namespace nehari {

// Reference computations that share no quadrature or solver code with the
// modules they validate.

struct OracleReport {
  std::string name;
  double max_rel_error = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool passed = false;
};

OracleReport make_oracle_report(std::string name, double max_rel_error, int samples, double tolerance);

/// Double integral of |u(x) - u(y)|^p K(x - y) over cell_a x cell_b by nested
/// tanh-sinh quadrature, with both ranges cut where the integrand loses
/// smoothness (the diagonal and the line u(x) = u(y)). `ext` holds the N + 2
/// nodal values.
/// Throws an OracleFailed error when the error estimate stays above tol.
double adaptive_pair_quadrature(const Grid& grid, int a, int b, std::span<const double> ext,
                                const KernelSpec& kernel, double tol = 1e-10);

/// theta * integral over [0,1]^2 of |x - y|^{p - 1 - p alpha}, adaptively.
double adaptive_same_cell_constant(const KernelSpec& kernel);

/// 2 integral |u|^p w(x) dx, adaptively per cell.
double adaptive_exterior_term(const Grid& grid, std::span<const double> ext, const KernelSpec& kernel);

/// Full energy ||u||^p from the adaptive pieces.
double adaptive_seminorm_p(const Grid& grid, std::span<const double> ext, const KernelSpec& kernel);

/// Stiffness (by polarization of the assembled p = 2 energy) and exact P1
/// mass matrices, row-major n x n.
struct DenseForms {
  int n = 0;
  std::vector<double> stiffness;
  std::vector<double> mass;
};

DenseForms dense_forms_p2(const WeightTable& w);

/// Number of eigenvalues of S v = mu M v below mu (inertia of S - mu M).
int count_below(const DenseForms& forms, double mu);

/// Smallest generalized eigenvalue by bisection on the inertia count.
/// Requires p = 2 and at most 6 interior nodes.
double dense_eigen_p2(const WeightTable& w);

using ValueFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;

/// Central differences (f(u + eps v) - f(u - eps v)) / (2 eps) against
/// grad . v for every direction. eps must lie in [1e-8, 1e-4].
OracleReport fd_gradient_check(std::string name, const ValueFn& f, const GradFn& grad,
                               std::span<const double> u,
                               const std::vector<std::vector<double>>& directions, double eps,
                               double tol);

struct TScan {
  double t_opt = 0.0;   // refined by a parabola through the best grid point
  double t_grid = 0.0;  // best grid point
  std::vector<double> ts;
  std::vector<double> values;
};

/// Geometric scan of phi_u over [lo_factor, hi_factor] * t*(u): argmin for N+
/// directions, argmax for N-. Throws NoCriticalPoint when t* is undefined.
TScan t_scan(const GridFunction& u, const BWeight& b, const ProblemParams& params, const WeightTable& w,
             int points = 4001, double lo_factor = 1e-3, double hi_factor = 1e3);

/// The built-in check suite used by `check` and CI.
std::vector<OracleReport> run_oracle_suite(std::uint64_t seed = 1);

}  // namespace nehari

#endif  // NEHARI_ORACLE_HPP
