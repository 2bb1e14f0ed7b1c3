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

#ifndef NEHARI_ENERGY_HPP
#define NEHARI_ENERGY_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nehari/grid.hpp"
#include "nehari/kernel.hpp"

namespace nehari {

enum class Regime { Sublinear, Superlinear };

const char* to_string(Regime r);

/// p* = p / (1 - p alpha), the one-dimensional critical exponent.
double critical_exponent(const KernelSpec& kernel);

struct ProblemParams {
  KernelSpec kernel;
  double beta = 1.5;
  double lambda = 1.0;
  Regime regime = Regime::Sublinear;

  /// Validates the kernel, 1 < beta < p or p < beta < p*, lambda > 0, and
  /// derives the regime.
  static ProblemParams make(const KernelSpec& kernel, double beta, double lambda);
  ProblemParams with_lambda(double lambda) const;
  double p() const { return kernel.p; }
};

/// Sign-changing weight b, stored as one constant per grid cell (the value
/// of the continuous description at the cell midpoint).
class BWeight {
 public:
  struct Segment {
    double lo, hi, value;
  };

  /// Presets: "pos-core" {c}: b = 1 on |x| <= 1/2, -c elsewhere;
  /// "neg-core" {c}: b = -1 on |x| <= 1/2, c elsewhere;
  /// "cosine" {c0, c1}: b = c0 + c1 cos(pi x).
  static BWeight preset(const GridPtr& grid, const std::string& name, std::span<const double> params);
  /// Piecewise constant; segments must cover (-1, 1).
  static BWeight segments(const GridPtr& grid, std::vector<Segment> segs);
  /// Arbitrary function sampled at cell midpoints.
  static BWeight from_function(const GridPtr& grid, const std::function<double(double)>& f,
                               std::string description);

  const Grid& grid() const { return *grid_; }
  std::span<const double> cell_values() const { return cells_; }
  double cell(int c) const { return cells_[static_cast<std::size_t>(c)]; }
  const std::string& description() const { return description_; }
  double sup() const;
  double inf() const;
  bool changes_sign() const { return sup() > 0.0 && inf() < 0.0; }
  /// Interior nodes whose two adjacent cells both have b > 0.
  std::vector<bool> positive_node_mask() const;
  std::vector<bool> negative_node_mask() const;

 private:
  BWeight(GridPtr grid, std::vector<double> cells, std::string description);
  GridPtr grid_;
  std::vector<double> cells_;
  std::string description_;
};

/// Whether the lambda- and b-terms use u or its positive part u^+.
enum class Truncation { None, PositivePart };

/// The three integrals every functional here is built from.
struct EnergyParts {
  double seminorm_p = 0.0;  // ||u||^p
  double lp_p = 0.0;        // integral |u|^p   (or (u^+)^p)
  double b_term = 0.0;      // integral b |u|^beta (or b (u^+)^beta)
};

/// Nodal gradients (length N) of the three parts.
struct PartGradients {
  std::vector<double> seminorm_p, lp_p, b_term;
};

EnergyParts evaluate_parts(std::span<const double> values, const BWeight& b, double beta,
                           const WeightTable& w, Truncation trunc = Truncation::None,
                           PartGradients* grads = nullptr);

struct EnergyReport {
  double seminorm_p = 0.0;
  double lp_p = 0.0;
  double b_term = 0.0;
  double e_lambda = 0.0;  // ||u||^p - lambda integral |u|^p
  double j_lambda = 0.0;
};

EnergyReport make_report(const EnergyParts& parts, const ProblemParams& params);

double seminorm_p(const GridFunction& u, const WeightTable& w);
/// Omega x Omega part only (discrete W^{alpha,p}(Omega) seminorm to the p).
double interior_seminorm_p(const GridFunction& u, const WeightTable& w);

EnergyReport energy_report(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                           const WeightTable& w);

double j_lambda(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                const WeightTable& w);
/// g_i = <J'(u), e_i> for the hat basis e_i.
GridFunction grad_j(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                    const WeightTable& w);

/// J^+: u replaced by u^+ in the lambda- and b-terms.
double j_plus(const GridFunction& u, const BWeight& b, const ProblemParams& params,
              const WeightTable& w);
GridFunction grad_j_plus(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                         const WeightTable& w);

/// Integral of b phi^beta for a nonnegative phi, with its sign.
struct BCalibration {
  double b_phi_integral = 0.0;
  int sign = 0;
};

BCalibration calibrate_b(const BWeight& b, const GridFunction& phi1, double beta);

/// Builds a preset and reports the sign of integral b phi1^beta.
std::pair<BWeight, BCalibration> b_preset(const GridPtr& grid, const std::string& name,
                                          std::span<const double> params,
                                          const GridFunction& phi1, double beta);

/// 1 - <u, |phi|^{p-2} phi> / (||u||_p ||phi||_p^{p-1}); zero iff u is a
/// positive multiple of phi.
double angle_to(const GridFunction& u, const GridFunction& phi, double p);

void check_same_grid(const Grid& a, const Grid& b);

}  // namespace nehari

#endif  // NEHARI_ENERGY_HPP
