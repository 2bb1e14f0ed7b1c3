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

// Exercises the shared library through nehari.h only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "nehari/nehari.h"

namespace {

struct Problem {
  nh_problem* ptr = nullptr;
  Problem(const char* preset, double c, double beta, int n = 32, double p = 2.0, double alpha = 0.25) {
    const double params[] = {c};
    const nh_problem_desc d{n, p, alpha, 1.0, beta, preset, params, 1};
    EXPECT_EQ(nh_problem_create(&d, &ptr), NH_OK) << nh_last_error();
  }
  ~Problem() { nh_problem_destroy(ptr); }
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;
};

TEST(CApi, StatusNames) {
  EXPECT_STREQ(nh_status_name(NH_OK), "ok");
  EXPECT_STREQ(nh_status_name(NH_ERR_BRANCH_EMPTY), "branch_empty");
  EXPECT_STREQ(nh_status_name(static_cast<nh_status>(99)), "unknown");
}

TEST(CApi, CreateRejectsBadInput) {
  nh_problem* p = nullptr;
  const double params[] = {0.5};
  nh_problem_desc d{16, 2.0, 0.6, 1.0, 1.5, "pos-core", params, 1};  // p alpha >= 1
  EXPECT_EQ(nh_problem_create(&d, &p), NH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(nh_last_error()), "");

  d.alpha = 0.25;
  d.b_preset = "no-such-preset";
  EXPECT_EQ(nh_problem_create(&d, &p), NH_ERR_INVALID_ARGUMENT);
  d.b_preset = nullptr;
  EXPECT_EQ(nh_problem_create(&d, &p), NH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(nh_problem_create(nullptr, &p), NH_ERR_INVALID_ARGUMENT);
  d.b_preset = "pos-core";
  EXPECT_EQ(nh_problem_create(&d, nullptr), NH_ERR_INVALID_ARGUMENT);
  d.n_interior = 0;
  EXPECT_EQ(nh_problem_create(&d, &p), NH_ERR_INVALID_ARGUMENT);
}

TEST(CApi, NullHandlesAreRejected) {
  nh_eigen_info e;
  EXPECT_EQ(nh_compute_eigen(nullptr, &e), NH_ERR_INVALID_ARGUMENT);
  nh_solution_info si;
  EXPECT_EQ(nh_solution_info_get(nullptr, &si), NH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(nh_problem_size(nullptr), 0u);
  nh_problem_destroy(nullptr);
  nh_solution_destroy(nullptr);
  size_t count = 0;
  EXPECT_EQ(nh_run_checks(1, nullptr, 0, nullptr), NH_ERR_INVALID_ARGUMENT);
  (void)count;
}

TEST(CApi, NodesAndEigen) {
  Problem pr("pos-core", 0.5, 1.5);
  ASSERT_EQ(nh_problem_size(pr.ptr), 32u);
  std::vector<double> x(32);
  ASSERT_EQ(nh_problem_nodes(pr.ptr, x.data(), x.size()), NH_OK);
  EXPECT_NEAR(x[1] - x[0], 2.0 / 33.0, 1e-15);
  EXPECT_EQ(nh_problem_nodes(pr.ptr, x.data(), 5), NH_ERR_INVALID_ARGUMENT);

  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK) << nh_last_error();
  EXPECT_GT(e.lambda1, 0.0);
  EXPECT_EQ(e.b_phi1_sign, 1);
  std::vector<double> phi(32);
  ASSERT_EQ(nh_phi1(pr.ptr, phi.data(), phi.size()), NH_OK);
  for (double v : phi) EXPECT_GE(v, 0.0);

  double lb = 0.0;
  ASSERT_EQ(nh_subdomain_eigen(pr.ptr, &lb), NH_OK) << nh_last_error();
  EXPECT_GT(lb, e.lambda1);  // Omega+ is a proper subset
  double dense = 0.0;
  EXPECT_EQ(nh_dense_eigen(pr.ptr, &dense), NH_ERR_INVALID_ARGUMENT);  // N too large
}

TEST(CApi, DenseEigenAgreesOnSmallGrid) {
  Problem pr("pos-core", 0.5, 1.5, 4);
  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK);
  double dense = 0.0;
  ASSERT_EQ(nh_dense_eigen(pr.ptr, &dense), NH_OK) << nh_last_error();
  EXPECT_NEAR(e.lambda1, dense, 1e-8 * dense);
}

TEST(CApi, EnergyAndFiber) {
  Problem pr("pos-core", 0.5, 1.5);
  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK);
  std::vector<double> phi(32);
  ASSERT_EQ(nh_phi1(pr.ptr, phi.data(), phi.size()), NH_OK);
  const double lambda = 0.9 * e.lambda1;

  nh_energy_info en{};
  ASSERT_EQ(nh_energy(pr.ptr, lambda, phi.data(), phi.size(), &en), NH_OK);
  EXPECT_NEAR(en.e_lambda, en.seminorm_p - lambda * en.lp_p, 1e-12 * en.seminorm_p);

  nh_fiber_info fi{};
  ASSERT_EQ(nh_fiber_classify(pr.ptr, lambda, phi.data(), phi.size(), &fi), NH_OK);
  EXPECT_EQ(fi.case_id, 3);
  EXPECT_EQ(fi.target_branch, NH_BRANCH_PLUS);
  ASSERT_TRUE(fi.has_t_star);

  std::vector<nh_fiber_sample> s(41);
  ASSERT_EQ(nh_fiber_dump(pr.ptr, lambda, phi.data(), phi.size(), fi.t_star / 10, fi.t_star * 10,
                          s.size(), s.data()),
            NH_OK);
  EXPECT_NEAR(s[20].t, fi.t_star, 1e-12 * fi.t_star);
  EXPECT_NEAR(s[20].d1, 0.0, 1e-9 * std::abs(s[20].value));
  for (const auto& v : s) EXPECT_GE(v.value, s[20].value - 1e-12 * std::abs(s[20].value));

  std::vector<double> zero(32, 0.0);
  EXPECT_EQ(nh_fiber_classify(pr.ptr, lambda, zero.data(), zero.size(), &fi), NH_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(nh_energy(pr.ptr, lambda, phi.data(), 3, &en), NH_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SolveBranch) {
  Problem pr("pos-core", 0.5, 1.5);
  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK);
  const double lambda = 0.9 * e.lambda1;

  nh_solution* sol = nullptr;
  ASSERT_EQ(nh_solve_branch(pr.ptr, lambda, NH_BRANCH_PLUS, nullptr, &sol), NH_OK) << nh_last_error();
  nh_solution_info info{};
  ASSERT_EQ(nh_solution_info_get(sol, &info), NH_OK);
  EXPECT_TRUE(info.converged);
  EXPECT_EQ(info.branch, NH_BRANCH_PLUS);
  EXPECT_LT(info.j_value, 0.0);
  EXPECT_GE(info.min_node_value, -1e-10);
  EXPECT_LE(info.nehari_residual, 1e-8 * info.seminorm_p);
  std::vector<double> u(32);
  ASSERT_EQ(nh_solution_values(sol, u.data(), u.size()), NH_OK);
  nh_energy_info en{};
  ASSERT_EQ(nh_energy(pr.ptr, lambda, u.data(), u.size(), &en), NH_OK);
  EXPECT_NEAR(en.j_lambda, info.j_value, 1e-12 * std::abs(info.j_value));
  nh_solution_destroy(sol);

  // Below lambda1 the sublinear N- is empty.
  sol = nullptr;
  EXPECT_EQ(nh_solve_branch(pr.ptr, lambda, NH_BRANCH_MINUS, nullptr, &sol), NH_ERR_BRANCH_EMPTY);
  EXPECT_EQ(sol, nullptr);
  EXPECT_NE(std::string(nh_last_error()), "");
  EXPECT_EQ(nh_solve_branch(pr.ptr, -1.0, NH_BRANCH_PLUS, nullptr, &sol), NH_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TwoBranchesAboveLambda1) {
  Problem pr("neg-core", 0.2, 1.5);
  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK);
  EXPECT_EQ(e.b_phi1_sign, -1);
  nh_solve_options o;
  nh_solve_options_default(&o);
  nh_solution *plus = nullptr, *minus = nullptr;
  ASSERT_EQ(nh_solve_two_branches(pr.ptr, 1.01 * e.lambda1, &o, &plus, &minus), NH_OK) << nh_last_error();
  nh_solution_info ip{}, im{};
  nh_solution_info_get(plus, &ip);
  nh_solution_info_get(minus, &im);
  EXPECT_LT(ip.j_value, 0.0);
  EXPECT_GT(im.j_value, 0.0);
  nh_solution_destroy(plus);
  nh_solution_destroy(minus);
}

TEST(CApi, Witnesses) {
  Problem pr("pos-core", 0.5, 1.5, 64);
  nh_eigen_info e{};
  ASSERT_EQ(nh_compute_eigen(pr.ptr, &e), NH_OK);
  std::vector<nh_witness_point> pts(4);
  size_t count = 0;
  int dec = 0;
  ASSERT_EQ(nh_unbounded_witness(pr.ptr, 1.1 * e.lambda1, NH_SEED_PHI1, 6, pts.data(), pts.size(), &count,
                                 &dec),
            NH_OK)
      << nh_last_error();
  EXPECT_EQ(count, 6u);  // more than cap: only the first 4 are written
  EXPECT_TRUE(dec);
  EXPECT_LT(pts[3].j_value, pts[0].j_value);

  Problem sup("pos-core", 0.5, 3.0, 64);
  ASSERT_EQ(nh_compute_eigen(sup.ptr, &e), NH_OK);
  std::vector<nh_witness_point> v(64);
  ASSERT_EQ(nh_vanishing_witness(sup.ptr, 1.05 * e.lambda1, 1e-2, v.data(), v.size(), &count, &dec), NH_OK)
      << nh_last_error();
  ASSERT_GT(count, 0u);
  EXPECT_LT(v[std::min(count, v.size()) - 1].j_value, 1e-2);
}

TEST(CApi, ChecksPass) {
  std::vector<nh_check_report> r(64);
  size_t count = 0;
  ASSERT_EQ(nh_run_checks(7, r.data(), r.size(), &count), NH_OK) << nh_last_error();
  ASSERT_GT(count, 0u);
  for (size_t i = 0; i < std::min(count, r.size()); ++i) {
    EXPECT_TRUE(r[i].passed) << r[i].name;
    EXPECT_GT(std::strlen(r[i].name), 0u);
  }
}

}  // namespace
