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

#include "nehari/quadrature.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace nehari {
namespace {

template <unsigned Order>
UnitRule build_rule() {
  using rule = boost::math::quadrature::gauss<double, Order>;
  const auto& abscissa = rule::abscissa();
  const auto& weights = rule::weights();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    pts.emplace_back(abscissa[i], weights[i]);
    if (abscissa[i] != 0.0) pts.emplace_back(-abscissa[i], weights[i]);
  }
  std::sort(pts.begin(), pts.end());
  UnitRule out;
  for (const auto& [x, w] : pts) {
    out.nodes.push_back(0.5 * (x + 1.0));
    out.weights.push_back(0.5 * w);
  }
  return out;
}

}  // namespace

const UnitRule& gauss_legendre_unit(int order) {
  static const UnitRule r6 = build_rule<6>();
  static const UnitRule r8 = build_rule<8>();
  static const UnitRule r20 = build_rule<20>();
  switch (order) {
    case 6: return r6;
    case 8: return r8;
    case 20: return r20;
    default: throw std::invalid_argument("unsupported Gauss-Legendre order");
  }
}

}  // namespace nehari
