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

#ifndef NEHARI_QUADRATURE_HPP
#define NEHARI_QUADRATURE_HPP

#include <cmath>
#include <vector>

namespace nehari {

/// Gauss-Legendre rule mapped to [0, 1]; nodes ascending.
struct UnitRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Supported orders: 6, 8, 20.
const UnitRule& gauss_legendre_unit(int order);

/// |x|^p and its derivative p|x|^{p-2}x, with multiplication-only paths for
/// p = 2, 3, 4.
class AbsPower {
 public:
  explicit AbsPower(double p) : p_(p) {
    if (p == 2.0) kind_ = Kind::Two;
    else if (p == 3.0) kind_ = Kind::Three;
    else if (p == 4.0) kind_ = Kind::Four;
    else kind_ = Kind::General;
  }

  double exponent() const { return p_; }

  double value(double x) const {
    switch (kind_) {
      case Kind::Two: return x * x;
      case Kind::Three: { double a = std::abs(x); return a * a * a; }
      case Kind::Four: { double s = x * x; return s * s; }
      default: { double a = std::abs(x); return a == 0.0 ? 0.0 : std::pow(a, p_); }
    }
  }

  // Returns |x|^p and stores d/dx in *deriv.
  double value_and_derivative(double x, double* deriv) const {
    switch (kind_) {
      case Kind::Two: *deriv = 2.0 * x; return x * x;
      case Kind::Three: {
        double a = std::abs(x);
        *deriv = 3.0 * a * x;
        return a * a * a;
      }
      case Kind::Four: {
        double s = x * x;
        *deriv = 4.0 * s * x;
        return s * s;
      }
      default: {
        double a = std::abs(x);
        if (a == 0.0) { *deriv = 0.0; return 0.0; }
        double v = std::pow(a, p_);
        *deriv = p_ * v / x;
        return v;
      }
    }
  }

 private:
  enum class Kind { Two, Three, Four, General };
  double p_;
  Kind kind_;
};

}  // namespace nehari

#endif  // NEHARI_QUADRATURE_HPP
