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
#include <random>

#include "nehari/error.hpp"
#include "nehari/kernel.hpp"
#include "nehari/oracle.hpp"

namespace nehari {
namespace {

std::vector<double> random_ext(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> e(static_cast<std::size_t>(n) + 2, 0.0);
  for (int i = 1; i <= n; ++i) e[static_cast<std::size_t>(i)] = d(rng);
  return e;
}

TEST(KernelSpec, Validation) {
  EXPECT_NO_THROW((KernelSpec{2.0, 0.25, 1.0}.validate()));
  EXPECT_THROW((KernelSpec{1.5, 0.25, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((KernelSpec{2.0, 0.6, 1.0}.validate()), InvalidArgument);  // p alpha > 1
  EXPECT_THROW((KernelSpec{2.0, 0.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((KernelSpec{2.0, 0.25, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((KernelSpec{NAN, 0.25, 1.0}.validate()), InvalidArgument);
}

TEST(KernelSpec, ExteriorWeight) {
  const KernelSpec k{2.0, 0.25, 1.0};
  EXPECT_DOUBLE_EQ(exterior_weight(0.0, k), 2.0 * 2.0);  // 2 * 1 / (p alpha)
  EXPECT_THROW(exterior_weight(1.0, k), InvalidArgument);
  EXPECT_NEAR(exterior_weight(0.3, k), exterior_weight(-0.3, k), 1e-15);
}

TEST(SameCell, ClosedFormKnownValue) {
  // gamma = p - 1 - p alpha = 1/2 gives 2 / (1.5 * 2.5).
  EXPECT_NEAR(same_cell_constant({2.0, 0.25, 1.0}), 8.0 / 15.0, 1e-15);
  EXPECT_NEAR(same_cell_constant({2.0, 0.25, 3.0}), 3.0 * 8.0 / 15.0, 1e-15);
}

TEST(SameCell, MatchesAdaptiveQuadrature) {
  for (KernelSpec k : {KernelSpec{2.0, 0.2, 1.0}, KernelSpec{2.0, 0.4, 1.0}, KernelSpec{3.0, 0.2, 0.7},
                       KernelSpec{4.0, 0.1, 1.0}}) {
    const double c = same_cell_constant(k);
    EXPECT_NEAR(adaptive_same_cell_constant(k), c, 1e-8 * c) << k.p << " " << k.alpha;
  }
}

TEST(WeightTable, PairRules) {
  EXPECT_EQ(WeightTable::pair_rule(3, 3), PairRule::SameCell);
  EXPECT_EQ(WeightTable::pair_rule(3, 4), PairRule::Touching);
  EXPECT_EQ(WeightTable::pair_rule(4, 3), PairRule::Touching);
  EXPECT_EQ(WeightTable::pair_rule(1, 3), PairRule::Separated);
}

TEST(WeightTable, PairEnergySymmetric) {
  auto g = make_grid(9);
  const WeightTable w(g, {3.0, 0.2, 1.0});
  const auto e = random_ext(9, 7);
  for (int a = 0; a < g->n_cells(); ++a)
    for (int b = 0; b < g->n_cells(); ++b) EXPECT_EQ(w.pair_energy(a, b, e), w.pair_energy(b, a, e));
}

TEST(WeightTable, ZeroFunction) {
  auto g = make_grid(6);
  const WeightTable w(g, {2.0, 0.25, 1.0});
  const std::vector<double> zero(8, 0.0);
  EXPECT_EQ(w.seminorm_p(zero), 0.0);
  EXPECT_EQ(w.exterior_term(zero), 0.0);
}

TEST(WeightTable, SeminormMatchesAdaptiveForHat) {
  auto g = make_grid(7);
  std::vector<double> hat(9, 0.0);
  hat[4] = 1.0;
  for (KernelSpec k : {KernelSpec{2.0, 0.25, 1.0}, KernelSpec{3.0, 0.2, 1.0}, KernelSpec{2.0, 0.4, 1.0}}) {
    const WeightTable w(g, k);
    const double ref = adaptive_seminorm_p(*g, hat, k);
    EXPECT_NEAR(w.seminorm_p(hat), ref, 1e-6 * ref) << k.p << " " << k.alpha;
  }
}

TEST(WeightTable, SeminormMatchesAdaptiveForRandomFunction) {
  auto g = make_grid(5);
  const KernelSpec k{2.5, 0.3, 1.0};
  const WeightTable w(g, k);
  const auto e = random_ext(5, 11);
  const double ref = adaptive_seminorm_p(*g, e, k);
  // For non-integer p the 6 x 6 rule on separated cells does not resolve the
  // kink of |u(x) - u(y)|^p along u(x) = u(y); pairwise errors reach ~2e-4.
  EXPECT_NEAR(w.seminorm_p(e), ref, 1e-4 * ref);
  EXPECT_NEAR(w.exterior_term(e), adaptive_exterior_term(*g, e, k), 1e-6 * ref);
  for (int a = 0; a < g->n_cells(); ++a) {
    EXPECT_NEAR(w.pair_energy(a, a, e), adaptive_pair_quadrature(*g, a, a, e, k, 1e-11), 1e-12 * ref);
  }
}

TEST(WeightTable, Homogeneity) {
  auto g = make_grid(12);
  const KernelSpec k{3.0, 0.2, 1.0};
  const WeightTable w(g, k);
  auto e = random_ext(12, 3);
  const double s = w.seminorm_p(e);
  for (double c : {-2.5, 0.3, 7.0}) {
    auto ce = e;
    for (double& v : ce) v *= c;
    EXPECT_NEAR(w.seminorm_p(ce), std::pow(std::abs(c), k.p) * s, 1e-12 * w.seminorm_p(ce));
  }
}

TEST(WeightTable, SplitIntoInteriorAndExterior) {
  auto g = make_grid(10);
  const WeightTable w(g, {2.0, 0.3, 1.0});
  const auto e = random_ext(10, 5);
  EXPECT_NEAR(w.interior_seminorm_p(e) + w.exterior_term(e), w.seminorm_p(e), 1e-13 * w.seminorm_p(e));
}

TEST(WeightTable, GradientMatchesDifferences) {
  auto g = make_grid(8);
  const WeightTable w(g, {3.0, 0.25, 1.0});
  auto e = random_ext(8, 9);
  std::vector<double> grad(e.size(), 0.0);
  w.seminorm_p(e, grad);
  const double eps = 1e-6;
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    auto ep = e, em = e;
    ep[i] += eps;
    em[i] -= eps;
    const double fd = (w.seminorm_p(ep) - w.seminorm_p(em)) / (2 * eps);
    EXPECT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << i;
  }
}

TEST(WeightTable, RefinementConverges) {
  const KernelSpec k{2.0, 0.25, 1.0};
  auto f = [](double x) { return std::cos(M_PI * x / 2); };
  std::vector<double> s;
  for (int n : {31, 63, 127, 255}) {
    auto g = make_grid(n);
    const WeightTable w(g, k);
    s.push_back(w.seminorm_p(interpolate(g, f).extended()));
  }
  const double d1 = std::abs(s[1] - s[0]), d2 = std::abs(s[2] - s[1]), d3 = std::abs(s[3] - s[2]);
  EXPECT_LT(d2, d1);
  EXPECT_LT(d3, d2);
}

}  // namespace
}  // namespace nehari
