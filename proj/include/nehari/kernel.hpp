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

#ifndef NEHARI_KERNEL_HPP
#define NEHARI_KERNEL_HPP

#include <memory>
#include <span>
#include <vector>

#include "nehari/grid.hpp"
#include "nehari/quadrature.hpp"

namespace nehari {

/// Model kernel K(z) = theta |z|^{-(1 + p alpha)} on the line. Its symmetry
/// and the integrability of min{1, |z|^p} K(z) hold analytically and are not
/// checked at runtime.
struct KernelSpec {
  double p = 2.0;
  double alpha = 0.25;
  double theta = 1.0;

  /// Throws InvalidArgument unless p >= 2, 0 < alpha < 1, p alpha < 1, theta > 0.
  void validate() const;
  double p_alpha() const { return p * alpha; }
  double operator()(double z) const;
};

/// w(x) = integral of K(x - y) over y outside (-1, 1)
///      = theta [(1 + x)^{-p alpha} + (1 - x)^{-p alpha}] / (p alpha).
/// Throws for |x| >= 1.
double exterior_weight(double x, const KernelSpec& kernel);

/// Closed-form constant C with
///   integral over [0,h]^2 of |x - y|^{p - 1 - p alpha} theta dx dy = C h^{p + 1 - p alpha},
/// i.e. C = 2 theta / ((g + 1)(g + 2)), g = p - 1 - p alpha.
double same_cell_constant(const KernelSpec& kernel);

enum class PairRule { SameCell, Touching, Separated };

/// Precomputed interaction weights for the discrete Gagliardo p-energy of
/// piecewise-linear functions on a uniform grid.
///
/// For cells a, b the contribution of the ordered pair is the double
/// integral of |u(x) - u(y)|^p K(x - y) over cell_a x cell_b:
///   - same cell: u is linear, so the integral is same_cell_constant *
///     |u_{c+1} - u_c|^p h^{1 - p alpha} exactly;
///   - touching cells: splitting the square into two triangles and scaling
///     out the homogeneous radial variable leaves a smooth 1-D integral over
///     v in [0, 1] weighted by (1 + v)^{-1 - p alpha}, done with 20-point
///     Gauss-Legendre;
///   - separated cells: 6 x 6 tensor Gauss-Legendre.
/// The exterior part 2 integral |u|^p w uses 8-point Gauss-Legendre on
/// interior cells, split at the zero of u where u changes sign; on the two boundary cells u vanishes at the endpoint, so
/// the contribution is |u_boundary-adjacent|^p times a precomputed constant.
class WeightTable {
 public:
  WeightTable(GridPtr grid, KernelSpec kernel);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const KernelSpec& kernel() const { return kernel_; }

  static PairRule pair_rule(int a, int b);

  /// w(x) at the 8 Gauss nodes of every cell, row-major [cell][node].
  std::span<const double> exterior_w() const { return exterior_w_; }
  /// Gauss nodes (global coordinates) matching exterior_w().
  std::span<const double> exterior_nodes() const { return exterior_nodes_; }

  /// Tensor weights for separated cells at offset d >= 2, row-major 6 x 6:
  /// theta w_k w_l h^2 |x_{b,l} - x_{a,k}|^{-1 - p alpha}.
  std::span<const double> separated_weights(int offset) const;

  /// Contribution of the ordered cell pair (a, b) for nodal values `ext`
  /// (length N + 2 including the zero end nodes).
  double pair_energy(int a, int b, std::span<const double> ext) const;

  /// Omega x Omega part of the energy plus the exterior term, with optional
  /// gradient with respect to the N interior values (accumulated into grad).
  double seminorm_p(std::span<const double> ext, std::span<double> grad_ext = {}) const;

  /// Only the Omega x Omega double integral (no exterior term).
  double interior_seminorm_p(std::span<const double> ext) const;

  /// Only the exterior term 2 integral |u|^p w.
  double exterior_term(std::span<const double> ext) const;

  double same_cell_coefficient() const { return same_coef_; }
  double boundary_cell_coefficient() const { return boundary_coef_; }

 private:
  double touching_pair(double da, double db, double* g_da, double* g_db) const;
  double exterior_cell(int c, double ua, double ub, double* g_ua, double* g_ub) const;

  GridPtr grid_;
  KernelSpec kernel_;
  AbsPower pow_;
  double same_coef_ = 0.0;      // C h^{1 - p alpha}
  double touch_coef_ = 0.0;     // theta h^{1 - p alpha} / (p + 1 - p alpha)
  std::vector<double> touch_nodes_;
  std::vector<double> touch_weights_;  // g_k (1 + v_k)^{-1 - p alpha}
  std::vector<double> sep_xi_;         // 6-point nodes on [0, 1]
  std::vector<double> separated_;      // [offset][6*6], offsets 0..N
  std::vector<double> exterior_w_;
  std::vector<double> exterior_nodes_;
  std::vector<double> exterior_factor_;  // 2 h w_k w(x) per interior cell node
  double boundary_coef_ = 0.0;           // 2 integral_0^h (d/h)^p w(-1 + d) dd
};

using WeightTablePtr = std::shared_ptr<const WeightTable>;

WeightTablePtr assemble_weights(const GridPtr& grid, const KernelSpec& kernel);

}  // namespace nehari

#endif  // NEHARI_KERNEL_HPP
