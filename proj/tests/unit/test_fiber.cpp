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

#include <gtest/gtest.h>

#include <cmath>

#include "nehari/eigen.hpp"
#include "nehari/error.hpp"
#include "nehari/fiber.hpp"
#include "nehari/oracle.hpp"

namespace nehari {
namespace {

const KernelSpec kK{2.0, 0.25, 1.0};

EnergyParts parts_for(double e, double b) {
  // seminorm = 1 + e with lambda * lp = 1 gives E = e.
  return EnergyParts{1.0 + e, 1.0, b};
}

struct CaseRow {
  double e, b;
  int case_id;
  Branch sub, super;
};

TEST(Fiber, CaseTable) {
  const ProblemParams sub = ProblemParams::make(kK, 1.5, 1.0);
  const ProblemParams sup = ProblemParams::make(kK, 3.0, 1.0);
  for (const CaseRow& r : {CaseRow{-0.5, 0.3, 1, Branch::None, Branch::None},
                           CaseRow{0.5, -0.3, 2, Branch::None, Branch::None},
                           CaseRow{0.5, 0.3, 3, Branch::NPlus, Branch::NMinus},
                           CaseRow{-0.5, -0.3, 4, Branch::NMinus, Branch::NPlus}}) {
    const FiberDiagnosis ds = classify_parts(parts_for(r.e, r.b), 1.0, sub);
    const FiberDiagnosis dp = classify_parts(parts_for(r.e, r.b), 1.0, sup);
    EXPECT_EQ(ds.case_id, r.case_id);
    EXPECT_EQ(dp.case_id, r.case_id);
    EXPECT_EQ(ds.target_branch, r.sub) << r.case_id;
    EXPECT_EQ(dp.target_branch, r.super) << r.case_id;
    EXPECT_EQ(ds.t_star.has_value(), r.sub != Branch::None);
  }
}

TEST(Fiber, DeadBand) {
  const ProblemParams sub = ProblemParams::make(kK, 1.5, 1.0);
  const FiberDiagnosis d = classify_parts(parts_for(1e-14, 0.3), 1.0, sub);
  EXPECT_EQ(d.e_sign, Sign::Zero);
  EXPECT_EQ(d.case_id, 0);
  EXPECT_FALSE(d.t_star);
  EXPECT_EQ(classify_parts(parts_for(0.5, 1e-13), 1.0, sub).b_sign, Sign::Zero);
}

TEST(Fiber, ClosedFormScaling) {
  // Sublinear: t* = (B / E)^{1/(p - beta)} = (1/2)^2.
  EXPECT_NEAR(*critical_scaling(2.0, 1.0, ProblemParams::make(kK, 1.5, 1.0)), 0.25, 1e-15);
  // Superlinear: t* = (E / B)^{1/(beta - p)} = 8^{1}.
  EXPECT_NEAR(*critical_scaling(8.0, 1.0, ProblemParams::make(kK, 3.0, 1.0)), 8.0, 1e-14);
  EXPECT_FALSE(critical_scaling(-1.0, 1.0, ProblemParams::make(kK, 1.5, 1.0)));
}

TEST(Fiber, DerivativesAtCriticalPoint) {
  for (double beta : {1.5, 3.0}) {
    const ProblemParams pr = ProblemParams::make(kK, beta, 1.0);
    for (auto [e, b] : {std::pair{0.7, 0.2}, std::pair{-0.7, -0.2}}) {
      const double t = *critical_scaling(e, b, pr);
      EXPECT_NEAR(fiber_d1(e, b, t, pr), 0.0, 1e-14);
      const FiberDiagnosis d = classify_parts(parts_for(e, b), 1.0, pr);
      const double d2 = fiber_d2(e, b, t, pr);
      EXPECT_EQ(d2 > 0.0, d.target_branch == Branch::NPlus) << beta << " " << e;
      // Difference check of the analytic derivatives.
      const double h = 1e-6 * t;
      EXPECT_NEAR(fiber_d1(e, b, t * 1.3, pr),
                  (fiber_value(e, b, t * 1.3 + h, pr) - fiber_value(e, b, t * 1.3 - h, pr)) / (2 * h),
                  1e-7);
    }
  }
}

TEST(Fiber, SublinearCase1IsDecreasing) {
  const ProblemParams pr = ProblemParams::make(kK, 1.5, 1.0);
  double prev = fiber_value(-0.5, 0.3, 1e-3, pr);
  for (double t = 2e-3; t < 1e3; t *= 1.5) {
    const double v = fiber_value(-0.5, 0.3, t, pr);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

class FiberOnGrid : public ::testing::Test {
 protected:
  GridPtr g = make_grid(24);
  WeightTable w{g, kK};
  EigenResult eig = principal_eigenpair(w);
  const double c[1] = {0.5};
  BWeight b = BWeight::preset(g, "pos-core", c);
};

TEST_F(FiberOnGrid, ProjectionLandsOnManifold) {
  for (double beta : {1.5, 3.0}) {
    const ProblemParams pr = ProblemParams::make(kK, beta, 0.9 * eig.lambda1);
    const NehariProjection proj = project_to_nehari(eig.phi1, b, pr, w);
    const EnergyReport r = energy_report(proj.u, b, pr, w);
    EXPECT_LE(nehari_residual(proj.u, b, pr, w), 1e-12 * r.seminorm_p);
    EXPECT_NEAR(fiber_d1(eig.phi1, proj.t, b, pr, w), 0.0, 1e-10 * r.seminorm_p / proj.t);
    EXPECT_EQ(proj.branch, beta < 2.0 ? Branch::NPlus : Branch::NMinus);
    // J on the manifold equals (1/p - 1/beta) B.
    EXPECT_NEAR(r.j_lambda, (0.5 - 1.0 / beta) * r.b_term, 1e-12 * std::abs(r.j_lambda));
    EXPECT_NEAR(t_star(eig.phi1, b, pr, w), proj.t, 1e-15 * proj.t);
  }
}

TEST_F(FiberOnGrid, TStarMatchesScan) {
  for (double beta : {1.5, 3.0}) {
    const ProblemParams pr = ProblemParams::make(kK, beta, 0.5 * eig.lambda1);
    const double ts = t_star(eig.phi1, b, pr, w);
    const TScan scan = t_scan(eig.phi1, b, pr, w);
    EXPECT_NEAR(scan.t_opt, ts, 1e-3 * ts);
  }
}

TEST_F(FiberOnGrid, NoCriticalPointForCase1) {
  // lambda above lambda1 makes E(phi1) < 0 while B(phi1) > 0.
  const ProblemParams pr = ProblemParams::make(kK, 1.5, 1.2 * eig.lambda1);
  const FiberDiagnosis d = classify(eig.phi1, b, pr, w);
  EXPECT_EQ(d.case_id, 1);
  EXPECT_THROW(t_star(eig.phi1, b, pr, w), NoCriticalPoint);
  EXPECT_THROW(project_to_nehari(eig.phi1, b, pr, w), NoCriticalPoint);
  EXPECT_THROW(classify(GridFunction(g), b, pr, w), InvalidArgument);
}

TEST_F(FiberOnGrid, GridOverloadsMatchScalar) {
  const ProblemParams pr = ProblemParams::make(kK, 1.5, 3.0);
  const EnergyReport r = energy_report(eig.phi1, b, pr, w);
  for (double t : {0.1, 1.0, 4.0}) {
    EXPECT_NEAR(fiber_value(eig.phi1, t, b, pr, w), fiber_value(r.e_lambda, r.b_term, t, pr), 1e-12);
    EXPECT_NEAR(fiber_value(eig.phi1, t, b, pr, w), j_lambda(eig.phi1.scaled(t), b, pr, w), 1e-12);
    EXPECT_NEAR(fiber_d2(eig.phi1, t, b, pr, w), fiber_d2(r.e_lambda, r.b_term, t, pr), 1e-11);
  }
  EXPECT_THROW(fiber_value(eig.phi1, 0.0, b, pr, w), InvalidArgument);
}

TEST_F(FiberOnGrid, InclusionSampling) {
  const ProblemParams below = ProblemParams::make(kK, 1.5, 0.95 * eig.lambda1);
  const InclusionReport r = sample_inclusion(b, below, w, eig.phi1, 100, 7);
  EXPECT_EQ(r.samples, 101);
  EXPECT_EQ(r.e_minus, 0);  // E > 0 everywhere below lambda1
  EXPECT_TRUE(std::isnan(r.delta2_estimate));
  EXPECT_GE(r.lambda0_estimate, eig.lambda1 * (1 - 1e-12));

  const InclusionReport again = sample_inclusion(b, below, w, eig.phi1, 100, 7);
  EXPECT_EQ(again.lambda0_estimate, r.lambda0_estimate);

  const double nc[] = {0.2};
  const BWeight neg = BWeight::preset(g, "neg-core", nc);
  const ProblemParams above = ProblemParams::make(kK, 1.5, 1.01 * eig.lambda1);
  const InclusionReport ra = sample_inclusion(neg, above, w, eig.phi1, 100, 7);
  EXPECT_GT(ra.e_minus, 0);
  EXPECT_EQ(ra.violations, 0);
  EXPECT_GT(ra.delta2_estimate, 0.0);
}

}  // namespace
}  // namespace nehari
