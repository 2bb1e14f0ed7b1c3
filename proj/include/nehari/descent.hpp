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

#ifndef NEHARI_DESCENT_HPP
#define NEHARI_DESCENT_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nehari {

/// Spectral projected gradient with monotone Armijo backtracking.
///
/// The trial step is x - s g / h, where g holds nodal derivatives and the
/// division by h turns them into a lumped-mass gradient. s is the
/// Barzilai-Borwein length of the previous accepted step.
struct SpgOptions {
  int max_iter = 20000;
  double armijo_c = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
  /// Stop when stationarity() <= grad_tol.
  double grad_tol = 1e-10;
  /// Alternative stop: relative decrease below decrease_tol for stall_iters
  /// consecutive steps while stationarity() <= stall_grad_tol.
  double decrease_tol = 1e-14;
  int stall_iters = 5;
  double stall_grad_tol = 1e-7;
  /// Steps whose increase is within noise * fscale are not rejected; this
  /// lets the iteration keep reducing the gradient once f is flat to roundoff.
  double noise = 1e-14;
};

struct SpgEval {
  double f = 0.0;
  double fscale = 0.0;  // magnitude of the terms f is assembled from
  double gscale = 0.0;  // normalizer for the stationarity measure
  double aux = 0.0;     // free slot for the caller's monitor
};

struct SpgProblem {
  /// Fills g (length n) and returns false if x is not admissible.
  std::function<bool(std::span<const double> x, std::vector<double>& g, SpgEval& out)> evaluate;
  /// Retraction applied to every trial point (normalization, clamping).
  std::function<void(std::vector<double>& x)> project;
  /// Called after every accepted step; may throw to abort.
  std::function<void(std::span<const double> x, const SpgEval& ev)> on_accept;
  /// Bound constraint x >= 0 active in the stationarity measure.
  bool nonneg = false;
};

struct SpgResult {
  std::vector<double> x;
  std::vector<double> g;
  SpgEval eval;
  int iterations = 0;
  double stationarity = 0.0;
  double last_rel_decrease = 0.0;
  bool converged = false;
  std::string stop_reason;
};

/// max_i |projected g_i| / gscale.
double stationarity(std::span<const double> x, std::span<const double> g, double gscale, bool nonneg);

/// x0 must be admissible after projection.
SpgResult spg_minimize(const SpgProblem& problem, std::vector<double> x0, double h,
                       const SpgOptions& opts);

}  // namespace nehari

#endif  // NEHARI_DESCENT_HPP
