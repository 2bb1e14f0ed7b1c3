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

#ifndef NEHARI_BRANCH_HPP
#define NEHARI_BRANCH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nehari/eigen.hpp"
#include "nehari/energy.hpp"
#include "nehari/fiber.hpp"

namespace nehari {

struct SolveOptions {
  /// Minimize J+ (u replaced by u^+ in the lower-order terms) over
  /// nonnegative directions.
  bool nonneg = true;
  int max_iter = 20000;
  /// Relative stationarity of the reduced functional at which to stop.
  double grad_tol = 1e-10;
  bool allow_near_lambda1 = false;
  /// |lambda - lambda1| below this fraction of lambda1 is refused unless
  /// allow_near_lambda1 is set.
  double near_lambda1_cap = 1e-4;
  /// solve_two_branches needs 0 < lambda - lambda1 <= two_branch_cap * lambda1.
  double two_branch_cap = 0.25;
  /// Sublinear N+ runs with lambda < lambda1 abort if ||u|| grows past this
  /// multiple of its starting value.
  double bound_factor = 10.0;
};

struct BranchSolution {
  GridFunction u;
  Branch branch = Branch::None;
  double j_value = 0.0;
  double b_integral = 0.0;       // integral b |u|^beta
  double nehari_residual = 0.0;  // |E(u) - B(u)|
  double grad_residual = 0.0;    // max_i |<J'(u), e_i>|
  double stationarity = 0.0;     // relative, of the reduced problem
  double seminorm_p = 0.0;
  double lp_p = 0.0;
  double t = 0.0;  // u = t d with integral |d|^p = 1
  int iterations = 0;
  double min_node_value = 0.0;
  bool converged = false;
  std::string stop_reason;
};

/// Minimizes J (or J+) over the requested Nehari branch by descent on the
/// direction d, with u = t*(d) d:
///   F(d) = J(t*(d) d),  grad F = t^p (grad S - lambda grad L) / p - t^beta grad B / beta
/// (the t-derivative drops out because t* is critical). F is 0-homogeneous,
/// so d is kept normalized to integral |d|^p = 1.
///
/// Throws BranchEmpty when the branch is empty for structural reasons or no
/// admissible starting direction exists, InvalidArgument when lambda is
/// within the proximity cap of lambda1.
BranchSolution minimize_branch(Branch branch, const BWeight& b, const ProblemParams& params,
                               const WeightTable& w, const EigenResult& eig,
                               const SolveOptions& opts = {}, const GridFunction* init = nullptr);

/// N+ and N- minimizers for lambda1 < lambda with integral b phi1^beta < 0.
std::pair<BranchSolution, BranchSolution> solve_two_branches(const BWeight& b,
                                                             const ProblemParams& params,
                                                             const WeightTable& w,
                                                             const EigenResult& eig,
                                                             const SolveOptions& opts = {});

/// Starting directions: phi1, parabolic bumps over {b > 0} and {b < 0},
/// mixtures, and phi1 damped on either sign set. All normalized.
std::vector<GridFunction> candidate_directions(const BWeight& b, const GridFunction& phi1);

/// J(t(phi1) phi1) using E = (lambda1 - lambda) integral phi1^p, defined for
/// lambda < lambda1 and integral b phi1^beta > 0.
std::optional<double> closed_form_reference(const ProblemParams& params, double lambda1,
                                            double phi1_lp_p, double b_phi1_beta);

}  // namespace nehari

#endif  // NEHARI_BRANCH_HPP
