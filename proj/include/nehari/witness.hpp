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

#ifndef NEHARI_WITNESS_HPP
#define NEHARI_WITNESS_HPP

#include <string>
#include <vector>

#include "nehari/eigen.hpp"
#include "nehari/energy.hpp"
#include "nehari/fiber.hpp"

namespace nehari {

/// One constructed Nehari point: the family parameter, the direction's E and
/// B, the critical scaling and J at the projected point.
struct WitnessPoint {
  double param = 0.0;
  double e_value = 0.0;
  double b_value = 0.0;
  double t = 0.0;
  double j_value = 0.0;
};

struct WitnessSequence {
  std::string seed;  // "phi1" or "subdomain"
  Branch branch = Branch::None;
  std::vector<WitnessPoint> points;
  bool strictly_decreasing = false;
};

enum class WitnessSeed { Auto, Phi1, Subdomain };

struct WitnessOptions {
  WitnessSeed seed = WitnessSeed::Auto;
  int points = 6;
  /// vanishing_infimum_witness stops once J drops below this.
  double target = 1e-2;
  int max_points = 15;
};

/// Nodal values a, -a, a, ... : small sup norm, large seminorm.
std::vector<double> sawtooth(const Grid& grid, double amplitude);

/// J unbounded below on the Nehari set.
///
/// Sublinear: starts from a direction u with E(u) < 0 < B(u) (phi1 when
/// integral b phi1^beta > 0 and lambda > lambda1, else the {b > 0}
/// eigenfunction when lambda > lambda_b), adds eps times a sawtooth, and
/// picks eps so that E = E_ref 10^{-k}. Each point projects to N+ and J
/// decreases without bound as E -> 0+.
///
/// Superlinear: damps the seed on the cells of one sign of b so that
/// B -> 0- while E stays negative; the projections lie on N+ with J -> -inf.
///
/// Throws NoWitness when no seed qualifies (for instance lambda < lambda1,
/// where E < 0 never happens).
WitnessSequence unbounded_witness(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                                  const EigenResult& eig, const WitnessOptions& opts = {});

/// Superlinear: from u with E(u) < 0 < B(u), sawtooth perturbations with
/// E -> 0+ and B bounded below project to N- with J -> 0+. Emits points
/// until J < opts.target. Throws NoWitness otherwise.
WitnessSequence vanishing_infimum_witness(const BWeight& b, const ProblemParams& params,
                                          const WeightTable& w, const EigenResult& eig,
                                          const WitnessOptions& opts = {});

/// Projects u + eps * sawtooth for `count` geometric eps in [1e-3, 1] (times
/// a fixed amplitude) onto the Nehari set and keeps the points that land on
/// `branch`. Used for contrast runs where no witness should exist.
std::vector<WitnessPoint> sample_sawtooth_family(const BWeight& b, const ProblemParams& params,
                                                 const WeightTable& w, const GridFunction& u,
                                                 Branch branch, int count = 40);

}  // namespace nehari

#endif  // NEHARI_WITNESS_HPP
