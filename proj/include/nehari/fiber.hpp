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

#ifndef NEHARI_FIBER_HPP
#define NEHARI_FIBER_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "nehari/energy.hpp"

namespace nehari {

enum class Sign { Minus = -1, Zero = 0, Plus = 1 };
enum class Branch { None = 0, NPlus = 1, NMinus = 2 };

const char* to_string(Sign s);
const char* to_string(Branch b);

/// Signs of E = ||u||^p - lambda integral |u|^p and B = integral b |u|^beta
/// for a direction u, and what the fiber t -> J(t u) does with them.
///
/// case_id: 1 = (E-, B+), 2 = (E+, B-), 3 = (E+, B+), 4 = (E-, B-), 0 when a
/// sign is inside its dead band. Cases 1 and 2 are monotone fibers.
struct FiberDiagnosis {
  Sign e_sign = Sign::Zero;
  Sign b_sign = Sign::Zero;
  int case_id = 0;
  std::optional<double> t_star;
  Branch target_branch = Branch::None;
  double e_value = 0.0;
  double b_value = 0.0;
};

/// Relative width of the sign dead band.
inline constexpr double kSignDeadBand = 1e-12;

/// Classification from precomputed integrals. b_abs = integral |b| |u|^beta
/// sets the B dead band.
FiberDiagnosis classify_parts(const EnergyParts& parts, double b_abs, const ProblemParams& params);

/// integral |b| |u|^beta (or with u^+).
double b_abs_integral(std::span<const double> values, const BWeight& b, double beta,
                      Truncation trunc = Truncation::None);

/// Closed-form critical scaling for the given E, B; nullopt unless the case
/// has one. Sublinear: (B/E)^{1/(p-beta)}; superlinear: (E/B)^{1/(beta-p)}.
std::optional<double> critical_scaling(double e, double b, const ProblemParams& params);

/// phi_u(t) and its first two derivatives from E, B:
///   phi   = t^p E / p - t^beta B / beta
///   phi'  = t^{p-1} E - t^{beta-1} B
///   phi'' = (p-1) t^{p-2} E - (beta-1) t^{beta-2} B
double fiber_value(double e, double b, double t, const ProblemParams& params);
double fiber_d1(double e, double b, double t, const ProblemParams& params);
double fiber_d2(double e, double b, double t, const ProblemParams& params);

double fiber_value(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                   const WeightTable& w);
double fiber_d1(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                const WeightTable& w);
double fiber_d2(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                const WeightTable& w);

/// Throws InvalidArgument for u = 0.
FiberDiagnosis classify(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                        const WeightTable& w);

/// Throws NoCriticalPoint when the fiber of u has no critical point (mixed
/// signs or a sign in the dead band).
double t_star(const GridFunction& u, const BWeight& b, const ProblemParams& params,
              const WeightTable& w);

struct NehariProjection {
  GridFunction u;
  Branch branch = Branch::None;
  double t = 0.0;
};

NehariProjection project_to_nehari(const GridFunction& u, const BWeight& b,
                                   const ProblemParams& params, const WeightTable& w);

/// |<J'(u), u>| = |E(u) - B(u)|.
double nehari_residual(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                       const WeightTable& w);

/// Empirical look at the inclusion {E < 0} in {B < 0}: phi1 plus `samples`
/// smooth random perturbations of it, each normalized to integral |u|^p = 1.
struct InclusionReport {
  int samples = 0;
  int e_minus = 0;     // samples with E < 0 at the given lambda
  int violations = 0;  // E < 0 and B >= 0
  /// min R(u) over samples with B(u) >= 0; the inclusion can only hold for
  /// lambda below this. Infinite when no sample has B >= 0.
  double lambda0_estimate = 0.0;
  /// min of -B(u) over the E < 0 samples; NaN when there are none.
  double delta2_estimate = 0.0;
};

InclusionReport sample_inclusion(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                                 const GridFunction& phi1, int samples = 200, std::uint64_t seed = 1);

}  // namespace nehari

#endif  // NEHARI_FIBER_HPP
