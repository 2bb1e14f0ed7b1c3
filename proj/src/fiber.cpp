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

#include "nehari/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nehari/error.hpp"

namespace nehari {

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Minus: return "-";
    case Sign::Zero: return "0";
    case Sign::Plus: return "+";
  }
  return "?";
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::NPlus: return "plus";
    case Branch::NMinus: return "minus";
    case Branch::None: return "none";
  }
  return "?";
}

double b_abs_integral(std::span<const double> values, const BWeight& b, double beta, Truncation trunc) {
  const Grid& grid = b.grid();
  if (values.size() != static_cast<std::size_t>(grid.n_interior())) {
    throw InvalidArgument("grid mismatch: value count differs from grid");
  }
  const double h = grid.h();
  const bool positive = trunc == Truncation::PositivePart;
  double sum = 0.0;
  for (int c = 0; c < grid.n_cells(); ++c) {
    const double bc = std::abs(b.cell(c));
    if (bc == 0.0) continue;
    const double ua = c == 0 ? 0.0 : values[static_cast<std::size_t>(c - 1)];
    const double ub = c == grid.n_interior() ? 0.0 : values[static_cast<std::size_t>(c)];
    sum += bc * cell_power_integral(ua, ub, beta, h, positive);
  }
  return sum;
}

std::optional<double> critical_scaling(double e, double b, const ProblemParams& params) {
  const double p = params.p(), beta = params.beta;
  if (e == 0.0 || b == 0.0 || (e > 0.0) != (b > 0.0)) return std::nullopt;
  if (params.regime == Regime::Sublinear) return std::pow(b / e, 1.0 / (p - beta));
  return std::pow(e / b, 1.0 / (beta - p));
}

FiberDiagnosis classify_parts(const EnergyParts& parts, double b_abs, const ProblemParams& params) {
  FiberDiagnosis d;
  d.e_value = parts.seminorm_p - params.lambda * parts.lp_p;
  d.b_value = parts.b_term;
  const double e_band = kSignDeadBand * std::max(parts.seminorm_p, params.lambda * parts.lp_p);
  const double b_band = kSignDeadBand * b_abs;
  auto sign_of = [](double v, double band) {
    if (std::abs(v) <= band) return Sign::Zero;
    return v > 0.0 ? Sign::Plus : Sign::Minus;
  };
  d.e_sign = sign_of(d.e_value, e_band);
  d.b_sign = sign_of(d.b_value, b_band);
  if (d.e_sign == Sign::Zero || d.b_sign == Sign::Zero) return d;

  const bool sub = params.regime == Regime::Sublinear;
  if (d.e_sign == Sign::Minus && d.b_sign == Sign::Plus) {
    d.case_id = 1;
  } else if (d.e_sign == Sign::Plus && d.b_sign == Sign::Minus) {
    d.case_id = 2;
  } else if (d.e_sign == Sign::Plus) {
    d.case_id = 3;
    d.target_branch = sub ? Branch::NPlus : Branch::NMinus;
  } else {
    d.case_id = 4;
    d.target_branch = sub ? Branch::NMinus : Branch::NPlus;
  }
  if (d.target_branch != Branch::None) d.t_star = critical_scaling(d.e_value, d.b_value, params);
  return d;
}

double fiber_value(double e, double b, double t, const ProblemParams& params) {
  const double p = params.p(), beta = params.beta;
  return std::pow(t, p) * e / p - std::pow(t, beta) * b / beta;
}

double fiber_d1(double e, double b, double t, const ProblemParams& params) {
  const double p = params.p(), beta = params.beta;
  return std::pow(t, p - 1.0) * e - std::pow(t, beta - 1.0) * b;
}

double fiber_d2(double e, double b, double t, const ProblemParams& params) {
  const double p = params.p(), beta = params.beta;
  return (p - 1.0) * std::pow(t, p - 2.0) * e - (beta - 1.0) * std::pow(t, beta - 2.0) * b;
}

namespace {

struct EB {
  double e, b;
};

EB eb_of(const GridFunction& u, const BWeight& b, const ProblemParams& params, const WeightTable& w,
         double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("fiber parameter t must be > 0");
  const EnergyReport r = energy_report(u, b, params, w);
  return {r.e_lambda, r.b_term};
}

}  // namespace

double fiber_value(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                   const WeightTable& w) {
  const EB v = eb_of(u, b, params, w, t);
  return fiber_value(v.e, v.b, t, params);
}

double fiber_d1(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                const WeightTable& w) {
  const EB v = eb_of(u, b, params, w, t);
  return fiber_d1(v.e, v.b, t, params);
}

double fiber_d2(const GridFunction& u, double t, const BWeight& b, const ProblemParams& params,
                const WeightTable& w) {
  const EB v = eb_of(u, b, params, w, t);
  return fiber_d2(v.e, v.b, t, params);
}

FiberDiagnosis classify(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                        const WeightTable& w) {
  if (u.is_zero()) throw InvalidArgument("cannot classify the zero function");
  check_same_grid(u.grid(), w.grid());
  const EnergyParts parts = evaluate_parts(u.values(), b, params.beta, w);
  return classify_parts(parts, b_abs_integral(u.values(), b, params.beta), params);
}

double t_star(const GridFunction& u, const BWeight& b, const ProblemParams& params,
              const WeightTable& w) {
  const FiberDiagnosis d = classify(u, b, params, w);
  if (!d.t_star) {
    throw NoCriticalPoint(std::string("fiber has no critical point (E ") + to_string(d.e_sign) +
                          ", B " + to_string(d.b_sign) + ", " + to_string(params.regime) + ")");
  }
  return *d.t_star;
}

NehariProjection project_to_nehari(const GridFunction& u, const BWeight& b,
                                   const ProblemParams& params, const WeightTable& w) {
  const FiberDiagnosis d = classify(u, b, params, w);
  if (!d.t_star) {
    throw NoCriticalPoint(std::string("fiber has no critical point (E ") + to_string(d.e_sign) +
                          ", B " + to_string(d.b_sign) + ", " + to_string(params.regime) + ")");
  }
  return {u.scaled(*d.t_star), d.target_branch, *d.t_star};
}

double nehari_residual(const GridFunction& u, const BWeight& b, const ProblemParams& params,
                       const WeightTable& w) {
  const EnergyReport r = energy_report(u, b, params, w);
  return std::abs(r.e_lambda - r.b_term);
}

InclusionReport sample_inclusion(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                                 const GridFunction& phi1, int samples, std::uint64_t seed) {
  if (samples < 0) throw InvalidArgument("sample count must be >= 0");
  check_same_grid(phi1.grid(), w.grid());
  const Grid& grid = w.grid();
  const double p = params.p();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> amp(0.0, 1.5);
  constexpr int kModes = 8;

  InclusionReport rep;
  rep.lambda0_estimate = std::numeric_limits<double>::infinity();
  rep.delta2_estimate = std::numeric_limits<double>::infinity();
  auto record = [&](std::vector<double> v) {
    const double l = lp_norm_p(GridFunction(w.grid_ptr(), v), p);
    if (!(l > 0.0)) return;
    const double s = std::pow(l, -1.0 / p);
    for (double& x : v) x *= s;
    const EnergyParts parts = evaluate_parts(v, b, params.beta, w);
    const double r = parts.seminorm_p / parts.lp_p;
    ++rep.samples;
    if (parts.b_term >= 0.0) rep.lambda0_estimate = std::min(rep.lambda0_estimate, r);
    if (parts.seminorm_p - params.lambda * parts.lp_p < 0.0) {
      ++rep.e_minus;
      if (parts.b_term >= 0.0) ++rep.violations;
      rep.delta2_estimate = std::min(rep.delta2_estimate, -parts.b_term);
    }
  };

  const auto base = phi1.values();
  record(std::vector<double>(base.begin(), base.end()));
  std::vector<double> c(kModes);
  for (int s = 0; s < samples; ++s) {
    const double a = amp(rng);
    for (int m = 0; m < kModes; ++m) c[static_cast<std::size_t>(m)] = normal(rng) / (m + 1);
    std::vector<double> v(base.begin(), base.end());
    for (int i = 0; i < grid.n_interior(); ++i) {
      const double y = (grid.node(i) + 1.0) * 0.5;
      double pert = 0.0;
      for (int m = 0; m < kModes; ++m) {
        pert += c[static_cast<std::size_t>(m)] * std::sin((m + 1) * std::numbers::pi * y);
      }
      v[static_cast<std::size_t>(i)] += a * pert;
    }
    record(std::move(v));
  }
  if (rep.e_minus == 0) rep.delta2_estimate = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace nehari
