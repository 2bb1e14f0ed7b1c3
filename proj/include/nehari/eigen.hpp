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

#ifndef NEHARI_EIGEN_HPP
#define NEHARI_EIGEN_HPP

#include <vector>

#include "nehari/energy.hpp"
#include "nehari/grid.hpp"
#include "nehari/kernel.hpp"

namespace nehari {

struct EigenOptions {
  double tol = 1e-10;  // relative Rayleigh-quotient decrease
  int max_iter = 50000;
  /// Clamp negative nodes to zero after each step. The minimizer is
  /// nonnegative, so this only speeds things up.
  bool clamp = true;
};

struct EigenResult {
  double lambda1 = 0.0;
  GridFunction phi1;  // nonnegative, integral phi1^p = 1
  int iterations = 0;
  double residual = 0.0;      // relative decrease of the last step
  double stationarity = 0.0;  // relative projected gradient at exit
};

/// Minimizes R(u) = ||u||^p / integral |u|^p from the interpolant of 1 - x^2.
/// Throws NotConverged (carrying the best iterate) after max_iter steps.
EigenResult principal_eigenpair(const WeightTable& w, const EigenOptions& opts = {});

/// Same quotient over functions vanishing at every node not flagged in
/// `active`. The energy keeps the full exterior interaction, which is the
/// exterior weight of the complement of the active set.
EigenResult masked_eigenpair(const WeightTable& w, const std::vector<bool>& active,
                             const EigenOptions& opts = {});

/// Principal eigenvalue on {b > 0}: nodes whose two neighbouring cells both
/// have b > 0. Throws InvalidArgument when fewer than 2 nodes qualify.
EigenResult subdomain_eigen(const WeightTable& w, const BWeight& b, const EigenOptions& opts = {});

/// R(u); throws for u = 0.
double rayleigh_quotient(const GridFunction& u, const WeightTable& w);

}  // namespace nehari

#endif  // NEHARI_EIGEN_HPP
