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

namespace nehari {
namespace {

const KernelSpec kK{2.0, 0.25, 1.0};

class BranchTest : public ::testing::Test {
 protected:
  GridPtr g = make_grid(32);
  WeightTable w{g, kK};
  EigenResult eig = principal_eigenpair(w);
  const double c5[1] = {0.5};
  const double c2[1] = {0.2};
  BWeight pos = BWeight::preset(g, "pos-core", c5);
  BWeight neg = BWeight::preset(g, "neg-core", c2);

  ProblemParams at(double beta, double factor) const {
    return ProblemParams::make(kK, beta, factor * eig.lambda1);
  }

  // Identities every accepted solution must satisfy.
  void expect_accepted(const BranchSolution& s, const BWeight& b, const ProblemParams& pr,
                       Branch branch) const {
    EXPECT_TRUE(s.converged) << s.stop_reason;
    EXPECT_EQ(s.branch, branch);
    const double p = pr.p();
    EXPECT_LE(s.nehari_residual, 1e-8 * s.seminorm_p);
    EXPECT_NEAR(s.j_value, (1.0 / p - 1.0 / pr.beta) * s.b_integral, 1e-8 * std::abs(s.j_value));
    EXPECT_GE(s.min_node_value, -1e-10);
    const double norm = std::pow(s.seminorm_p, 1.0 / p);
    EXPECT_LE(s.grad_residual, 1e-6 * std::max(1.0, std::pow(norm, p - 1.0)));
    EXPECT_EQ(classify(s.u, b, pr, w).target_branch, branch);
  }
};

TEST_F(BranchTest, SublinearBelowLambda1PlusBranch) {
  const ProblemParams pr = at(1.5, 0.9);
  const BranchSolution s = minimize_branch(Branch::NPlus, pos, pr, w, eig);
  expect_accepted(s, pos, pr, Branch::NPlus);
  EXPECT_LT(s.j_value, 0.0);
  // The minimum is no larger than the value at the projected phi1.
  const auto ref = closed_form_reference(pr, eig.lambda1, lp_norm_p(eig.phi1, 2.0),
                                         calibrate_b(pos, eig.phi1, 1.5).b_phi_integral);
  ASSERT_TRUE(ref);
  EXPECT_LE(s.j_value, *ref + 1e-6);
}

TEST_F(BranchTest, SublinearBelowLambda1MinusBranchIsEmpty) {
  EXPECT_THROW(minimize_branch(Branch::NMinus, pos, at(1.5, 0.9), w, eig), BranchEmpty);
}

TEST_F(BranchTest, SuperlinearBelowLambda1MinusBranch) {
  const ProblemParams pr = at(3.0, 0.9);
  const BranchSolution s = minimize_branch(Branch::NMinus, pos, pr, w, eig);
  expect_accepted(s, pos, pr, Branch::NMinus);
  EXPECT_GT(s.j_value, 0.0);
  EXPECT_THROW(minimize_branch(Branch::NPlus, pos, pr, w, eig), BranchEmpty);
}

TEST_F(BranchTest, TwoBranchesSublinear) {
  const ProblemParams pr = at(1.5, 1.01);
  const auto [plus, minus] = solve_two_branches(neg, pr, w, eig);
  EXPECT_TRUE(plus.converged && minus.converged);
  EXPECT_LT(plus.j_value, 0.0);
  EXPECT_GT(minus.j_value, 0.0);
  EXPECT_GE(plus.min_node_value, -1e-10);
  EXPECT_GE(minus.min_node_value, -1e-10);
  EXPECT_LE(plus.nehari_residual, 1e-8 * plus.seminorm_p);
  EXPECT_LE(minus.nehari_residual, 1e-8 * minus.seminorm_p);
  EXPECT_GT(std::abs(minus.seminorm_p - plus.seminorm_p), 1e-3 * minus.seminorm_p);
}

TEST_F(BranchTest, TwoBranchesSuperlinear) {
  const ProblemParams pr = at(3.0, 1.01);
  const auto [plus, minus] = solve_two_branches(neg, pr, w, eig);
  EXPECT_TRUE(plus.converged && minus.converged);
  EXPECT_LT(plus.j_value, 0.0);
  EXPECT_GT(minus.j_value, 0.0);
  EXPECT_GE(plus.min_node_value, -1e-10);
  EXPECT_GE(minus.min_node_value, -1e-10);
}

TEST_F(BranchTest, TwoBranchPreconditions) {
  EXPECT_THROW(solve_two_branches(neg, at(1.5, 0.9), w, eig), InvalidArgument);
  EXPECT_THROW(solve_two_branches(pos, at(1.5, 1.01), w, eig), InvalidArgument);
  EXPECT_THROW(solve_two_branches(neg, at(1.5, 1.5), w, eig), InvalidArgument);  // above the cap
}

TEST_F(BranchTest, ProximityCap) {
  const ProblemParams pr = at(1.5, 1.0 - 1e-5);
  EXPECT_THROW(minimize_branch(Branch::NPlus, pos, pr, w, eig), InvalidArgument);
  SolveOptions o;
  o.allow_near_lambda1 = true;
  const BranchSolution s = minimize_branch(Branch::NPlus, pos, pr, w, eig, o);
  EXPECT_LT(s.j_value, 0.0);
}

TEST_F(BranchTest, RejectsNoneBranch) {
  EXPECT_THROW(minimize_branch(Branch::None, pos, at(1.5, 0.9), w, eig), InvalidArgument);
}

TEST_F(BranchTest, Deterministic) {
  const ProblemParams pr = at(1.5, 0.95);
  const BranchSolution a = minimize_branch(Branch::NPlus, pos, pr, w, eig);
  const BranchSolution b = minimize_branch(Branch::NPlus, pos, pr, w, eig);
  ASSERT_EQ(a.u.size(), b.u.size());
  for (std::size_t i = 0; i < a.u.size(); ++i) EXPECT_EQ(a.u[i], b.u[i]);
  EXPECT_EQ(a.j_value, b.j_value);
}

TEST_F(BranchTest, CandidateDirections) {
  const auto dirs = candidate_directions(pos, eig.phi1);
  EXPECT_FALSE(dirs.empty());
  for (const auto& d : dirs) EXPECT_FALSE(d.is_zero());
}

TEST(ClosedForm, SublinearArithmetic) {
  // (1/2 - 2/3) * 0.01^{-3} * 0.1^4 = -50/3.
  const ProblemParams pr = ProblemParams::make(kK, 1.5, 10.0 - 0.01);
  const auto v = closed_form_reference(pr, 10.0, 1.0, 0.1);
  ASSERT_TRUE(v);
  EXPECT_NEAR(*v, -50.0 / 3.0, 1e-9);
}

TEST(ClosedForm, SuperlinearArithmetic) {
  // (1/2 - 1/3) * 0.1^3 * 1 / 0.5^2.
  const ProblemParams pr = ProblemParams::make(kK, 3.0, 10.0 - 0.1);
  const auto v = closed_form_reference(pr, 10.0, 1.0, 0.5);
  ASSERT_TRUE(v);
  EXPECT_NEAR(*v, (1.0 / 6.0) * 1e-3 / 0.25, 1e-15);
}

TEST(ClosedForm, UndefinedWithoutCriticalPoint) {
  // Sublinear, lambda < lambda1 and negative pairing: E > 0 > B.
  const ProblemParams pr = ProblemParams::make(kK, 1.5, 9.0);
  EXPECT_FALSE(closed_form_reference(pr, 10.0, 1.0, -0.1));
}

}  // namespace
}  // namespace nehari
