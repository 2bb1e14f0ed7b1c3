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

#include "nehari/branch.hpp"
#include "nehari/error.hpp"
#include "nehari/witness.hpp"

namespace nehari {
namespace {

const KernelSpec kK{2.0, 0.25, 1.0};

class WitnessTest : public ::testing::Test {
 protected:
  GridPtr g = make_grid(64);
  WeightTable w{g, kK};
  EigenResult eig = principal_eigenpair(w);
  const double c[1] = {0.5};
  BWeight pos = BWeight::preset(g, "pos-core", c);

  ProblemParams at(double beta, double lambda) const { return ProblemParams::make(kK, beta, lambda); }

  // Each point is a critical scaling of its direction and J matches the fiber value.
  static void expect_on_manifold(const WitnessSequence& seq, const ProblemParams& pr) {
    for (const auto& pt : seq.points) {
      const double scale = std::abs(pt.e_value) * std::pow(pt.t, pr.p() - 1.0);
      EXPECT_NEAR(fiber_d1(pt.e_value, pt.b_value, pt.t, pr), 0.0, 1e-10 * scale);
      EXPECT_DOUBLE_EQ(pt.j_value, fiber_value(pt.e_value, pt.b_value, pt.t, pr));
    }
  }
};

TEST(Sawtooth, Alternates) {
  const Grid grid(5);
  const auto s = sawtooth(grid, 0.3);
  ASSERT_EQ(s.size(), 5u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], i % 2 ? -0.3 : 0.3);
}

TEST_F(WitnessTest, UnboundedFromPhi1) {
  const ProblemParams pr = at(1.5, 1.1 * eig.lambda1);
  WitnessOptions o;
  o.seed = WitnessSeed::Phi1;
  const WitnessSequence seq = unbounded_witness(pos, pr, w, eig, o);
  EXPECT_EQ(seq.seed, "phi1");
  EXPECT_EQ(seq.branch, Branch::NPlus);
  ASSERT_GE(seq.points.size(), 5u);
  EXPECT_TRUE(seq.strictly_decreasing);
  for (std::size_t i = 1; i < seq.points.size(); ++i) {
    EXPECT_LT(seq.points[i].j_value, seq.points[i - 1].j_value);
  }
  expect_on_manifold(seq, pr);
}

TEST_F(WitnessTest, UnboundedFromSubdomainEigenfunction) {
  const double lb = subdomain_eigen(w, pos).lambda1;
  const ProblemParams pr = at(1.5, 1.1 * lb);
  WitnessOptions o;
  o.seed = WitnessSeed::Subdomain;
  const WitnessSequence seq = unbounded_witness(pos, pr, w, eig, o);
  EXPECT_EQ(seq.seed, "subdomain");
  ASSERT_GE(seq.points.size(), 5u);
  EXPECT_TRUE(seq.strictly_decreasing);
  expect_on_manifold(seq, pr);
}

TEST_F(WitnessTest, NoWitnessBelowLambda1) {
  EXPECT_THROW(unbounded_witness(pos, at(1.5, 0.9 * eig.lambda1), w, eig), NoWitness);
}

TEST_F(WitnessTest, VanishingInfimum) {
  const ProblemParams pr = at(3.0, 1.05 * eig.lambda1);
  const WitnessSequence seq = vanishing_infimum_witness(pos, pr, w, eig);
  EXPECT_EQ(seq.branch, Branch::NMinus);
  ASSERT_FALSE(seq.points.empty());
  EXPECT_LT(seq.points.back().j_value, 1e-2);
  for (const auto& pt : seq.points) EXPECT_GT(pt.j_value, 0.0);
  expect_on_manifold(seq, pr);
}

TEST_F(WitnessTest, VanishingInfimumForConstantWeight) {
  const double one[] = {1.0, 0.0};
  const BWeight b = BWeight::preset(g, "cosine", one);
  const WitnessSequence seq = vanishing_infimum_witness(b, at(3.0, 2.0 * eig.lambda1), w, eig);
  EXPECT_LT(seq.points.back().j_value, 1e-2);
}

TEST_F(WitnessTest, VanishingNeedsSuperlinear) {
  EXPECT_THROW(vanishing_infimum_witness(pos, at(1.5, 1.05 * eig.lambda1), w, eig), InvalidArgument);
}

TEST_F(WitnessTest, ContrastBelowLambda1KeepsPositiveFloor) {
  const ProblemParams pr = at(3.0, 0.9 * eig.lambda1);
  const BranchSolution s = minimize_branch(Branch::NMinus, pos, pr, w, eig);
  ASSERT_GT(s.j_value, 0.0);
  const auto pts = sample_sawtooth_family(pos, pr, w, s.u, Branch::NMinus);
  ASSERT_FALSE(pts.empty());
  for (const auto& pt : pts) EXPECT_GE(pt.j_value, s.j_value * (1 - 1e-8));
}

}  // namespace
}  // namespace nehari
