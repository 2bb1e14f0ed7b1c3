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

#ifndef NEHARI_GRID_HPP
#define NEHARI_GRID_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace nehari {

/// Uniform grid of N interior nodes on Omega = (-1, 1). Cell c (0..N) spans
/// [-1 + c h, -1 + (c+1) h]; the end nodes x = -1 and x = 1 carry value 0.
class Grid {
 public:
  explicit Grid(int n_interior);

  int n_interior() const { return n_; }
  int n_cells() const { return n_ + 1; }
  double h() const { return h_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  double cell_left(int c) const { return -1.0 + c * h_; }
  double cell_midpoint(int c) const { return -1.0 + (c + 0.5) * h_; }

  bool operator==(const Grid& other) const { return n_ == other.n_; }

 private:
  int n_;
  double h_;
  std::vector<double> nodes_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Rejects n_interior < 2.
GridPtr make_grid(int n_interior);

/// Nodal values of a continuous piecewise-linear function, zero outside Omega.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);
  /// All-zero function.
  explicit GridFunction(GridPtr grid);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Values including the two zero boundary nodes (length N + 2).
  std::vector<double> extended() const;

  GridFunction scaled(double c) const;
  bool is_zero() const;
  double min_value() const;
  double max_abs() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// values_i = f(x_i); throws on a non-finite sample.
GridFunction interpolate(const GridPtr& grid, const std::function<double(double)>& f);

/// Integral over one cell of |u|^q (or (u^+)^q when positive_part) for u
/// linear from ua to ub on a cell of width h. Exact for the linear
/// interpolant, including cells where u changes sign. Optional outputs are
/// the partial derivatives with respect to ua and ub.
double cell_power_integral(double ua, double ub, double q, double h, bool positive_part,
                           double* d_ua = nullptr, double* d_ub = nullptr);

/// Integral over Omega of |u|^q for the piecewise-linear interpolant.
double lp_norm_p(const GridFunction& u, double q);

}  // namespace nehari

#endif  // NEHARI_GRID_HPP
