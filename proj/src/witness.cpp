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

#include "nehari/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>

#include <boost/math/tools/roots.hpp>

#include "nehari/error.hpp"

namespace nehari {

std::vector<double> sawtooth(const Grid& grid, double amplitude) {
  std::vector<double> v(static_cast<std::size_t>(grid.n_interior()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 2 == 0) ? amplitude : -amplitude;
  return v;
}

namespace {

struct EBPair {
  double e, b;
};

class Family {
 public:
  Family(const BWeight& b, const ProblemParams& params, const WeightTable& w,
         std::function<std::vector<double>(double)> path)
      : b_(b), params_(params), w_(w), path_(std::move(path)) {}

  std::vector<double> at(double s) const { return path_(s); }

  EBPair eb(double s) const {
    const auto v = path_(s);
    const EnergyParts parts = evaluate_parts(v, b_, params_.beta, w_);
    return {parts.seminorm_p - params_.lambda * parts.lp_p, parts.b_term};
  }

  // Nehari point of the direction at s; nullopt unless it lands on `branch`.
  std::optional<WitnessPoint> project(double s, Branch branch) const {
    const auto v = path_(s);
    const EnergyParts parts = evaluate_parts(v, b_, params_.beta, w_);
    const FiberDiagnosis d = classify_parts(parts, b_abs_integral(v, b_, params_.beta), params_);
    if (d.target_branch != branch || !d.t_star) return std::nullopt;
    WitnessPoint pt;
    pt.param = s;
    pt.e_value = d.e_value;
    pt.b_value = d.b_value;
    pt.t = *d.t_star;
    pt.j_value = fiber_value(d.e_value, d.b_value, pt.t, params_);
    return pt;
  }

 private:
  const BWeight& b_;
  const ProblemParams& params_;
  const WeightTable& w_;
  std::function<std::vector<double>(double)> path_;
};

// Root of g on [lo, hi] given g(lo) and g(hi) of opposite signs.
double solve_on(const std::function<double(double)>& g, double lo, double hi, double glo, double ghi) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                   boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

bool strictly_decreasing(const std::vector<WitnessPoint>& pts) {
  if (pts.size() < 2) return false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].j_value < pts[i - 1].j_value)) return false;
  }
  return true;
}

struct Seed {
  std::vector<double> values;
  std::string name;
};

// A direction with E < 0 < B: phi1 first, then the {b > 0} eigenfunction.
std::optional<Seed> find_seed(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                              const EigenResult& eig, WitnessSeed which) {
  auto qualifies = [&](std::span<const double> v) {
    const EnergyParts parts = evaluate_parts(v, b, params.beta, w);
    return parts.seminorm_p - params.lambda * parts.lp_p < 0.0 && parts.b_term > 0.0;
  };
  if (which != WitnessSeed::Subdomain) {
    if (qualifies(eig.phi1.values())) {
      return Seed{{eig.phi1.values().begin(), eig.phi1.values().end()}, "phi1"};
    }
    if (which == WitnessSeed::Phi1) return std::nullopt;
  }
  const auto mask = b.positive_node_mask();
  if (std::count(mask.begin(), mask.end(), true) < 2) return std::nullopt;
  const EigenResult sub = subdomain_eigen(w, b);
  if (!(params.lambda > sub.lambda1)) return std::nullopt;
  if (!qualifies(sub.phi1.values())) return std::nullopt;
  return Seed{{sub.phi1.values().begin(), sub.phi1.values().end()}, "subdomain"};
}

// u + s * a * sawtooth with a doubled until E > 0 at s = 1.
Family sawtooth_family(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                       const std::vector<double>& u) {
  const Grid& grid = w.grid();
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  double a = 0.02 * umax;
  for (int k = 0; k < 40; ++k, a *= 2.0) {
    const auto saw = sawtooth(grid, a);
    std::vector<double> v(u);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += saw[i];
    const EnergyParts parts = evaluate_parts(v, b, params.beta, w);
    if (parts.seminorm_p - params.lambda * parts.lp_p > 0.0) break;
  }
  const auto saw = sawtooth(grid, a);
  return Family(b, params, w, [u, saw](double s) {
    std::vector<double> v(u);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * saw[i];
    return v;
  });
}

// Along a family with E(0) < 0 < E(1), the directions with E = E(1) 10^{-k}.
std::vector<WitnessPoint> approach_e_zero(const Family& fam, Branch branch, int min_points,
                                          int max_points, const std::function<bool(const WitnessPoint&)>& done) {
  const EBPair top = fam.eb(1.0);
  const EBPair bottom = fam.eb(0.0);
  if (!(top.e > 0.0) || !(bottom.e < 0.0)) throw NoWitness("sawtooth family does not cross E = 0");
  auto e_of = [&](double s) { return fam.eb(s).e; };
  const double s0 = solve_on(e_of, 0.0, 1.0, bottom.e, top.e);
  // Lower bracket end with E < 0.
  double lo = s0;
  double elo = e_of(lo);
  for (int k = 0; elo >= 0.0 && k < 60; ++k) {
    lo = std::max(0.0, lo - std::ldexp(1e-12, k));
    elo = e_of(lo);
  }
  if (!(elo < 0.0)) throw NoWitness("could not bracket E = 0 along the sawtooth family");

  std::vector<WitnessPoint> pts;
  for (int k = 1; k <= max_points; ++k) {
    const double target = top.e * std::pow(10.0, -k);
    auto g = [&](double s) { return e_of(s) - target; };
    const double s = solve_on(g, lo, 1.0, elo - target, top.e - target);
    const auto pt = fam.project(s, branch);
    if (!pt) {
      throw NoWitness("family point at E = " + std::to_string(target) + " is not on the expected branch");
    }
    pts.push_back(*pt);
    if (k >= min_points && done(*pt)) break;
  }
  return pts;
}

}  // namespace

WitnessSequence unbounded_witness(const BWeight& b, const ProblemParams& params, const WeightTable& w,
                                  const EigenResult& eig, const WitnessOptions& opts) {
  check_same_grid(b.grid(), w.grid());
  if (opts.points < 2) throw InvalidArgument("witness needs at least 2 points");
  if (!(params.lambda > eig.lambda1) && opts.seed != WitnessSeed::Subdomain) {
    // E < 0 is impossible below lambda1 for every direction, including the
    // subdomain one (lambda_b >= lambda1).
    throw NoWitness("E < 0 is empty for lambda <= lambda1");
  }
  const auto seed = find_seed(b, params, w, eig, opts.seed);
  if (!seed) throw NoWitness("no direction with E < 0 < B found");

  WitnessSequence out;
  out.seed = seed->name;
  out.branch = Branch::NPlus;
  if (params.regime == Regime::Sublinear) {
    const Family fam = sawtooth_family(b, params, w, seed->values);
    out.points = approach_e_zero(fam, Branch::NPlus, opts.points, opts.points,
                                 [](const WitnessPoint&) { return false; });
  } else {
    // Damp the seed on {b > 0} until B turns negative while E stays below 0.
    const int n = w.grid().n_interior();
    std::vector<double> damp(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      if (b.cell(i) > 0.0 || b.cell(i + 1) > 0.0) damp[static_cast<std::size_t>(i)] = 1.0;
    }
    const std::vector<double> u = seed->values;
    const Family fam(b, params, w, [u, damp](double s) {
      std::vector<double> v(u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] *= 1.0 - s * damp[i];
      return v;
    });
    const EBPair start = fam.eb(0.0), end = fam.eb(1.0);
    if (!(end.b < 0.0)) throw NoWitness("damping the seed on {b > 0} does not make B negative");
    auto b_of = [&](double s) { return fam.eb(s).b; };
    const double s0 = solve_on(b_of, 0.0, 1.0, start.b, end.b);
    if (!(fam.eb(s0).e < 0.0)) {
      throw NoWitness("E is not negative where B vanishes; lambda too small for this seed");
    }
    double hi = s0;
    double bhi = b_of(hi);
    for (int k = 0; bhi >= 0.0 && k < 60; ++k) {
      hi = std::min(1.0, hi + std::ldexp(1e-12, k));
      bhi = b_of(hi);
    }
    for (int k = 1; k <= opts.points; ++k) {
      const double target = end.b * std::pow(10.0, -k);
      auto g = [&](double s) { return b_of(s) - target; };
      const double s = solve_on(g, hi, 1.0, bhi - target, end.b - target);
      const auto pt = fam.project(s, Branch::NPlus);
      if (!pt) throw NoWitness("damped direction left E < 0");
      out.points.push_back(*pt);
    }
  }
  out.strictly_decreasing = strictly_decreasing(out.points);
  return out;
}

WitnessSequence vanishing_infimum_witness(const BWeight& b, const ProblemParams& params,
                                          const WeightTable& w, const EigenResult& eig,
                                          const WitnessOptions& opts) {
  check_same_grid(b.grid(), w.grid());
  if (params.regime != Regime::Superlinear) {
    throw InvalidArgument("vanishing infimum witness is for the superlinear regime");
  }
  if (!(opts.target > 0.0)) throw InvalidArgument("witness target must be > 0");
  const auto seed = find_seed(b, params, w, eig, opts.seed);
  if (!seed) throw NoWitness("no direction with E < 0 < B found");
  const Family fam = sawtooth_family(b, params, w, seed->values);
  WitnessSequence out;
  out.seed = seed->name;
  out.branch = Branch::NMinus;
  const double target = opts.target;
  out.points = approach_e_zero(fam, Branch::NMinus, std::min(3, opts.max_points), opts.max_points,
                               [target](const WitnessPoint& pt) { return pt.j_value < target; });
  if (!(out.points.back().j_value < target)) {
    throw NoWitness("J did not drop below the target within the allotted points");
  }
  out.strictly_decreasing = strictly_decreasing(out.points);
  return out;
}

std::vector<WitnessPoint> sample_sawtooth_family(const BWeight& b, const ProblemParams& params,
                                                 const WeightTable& w, const GridFunction& u,
                                                 Branch branch, int count) {
  check_same_grid(u.grid(), w.grid());
  if (count < 1) throw InvalidArgument("sample count must be >= 1");
  std::vector<double> base(u.values().begin(), u.values().end());
  const auto saw = sawtooth(w.grid(), u.max_abs());
  const Family fam(b, params, w, [base, saw](double s) {
    std::vector<double> v(base);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * saw[i];
    return v;
  });
  std::vector<WitnessPoint> out;
  for (int k = 0; k < count; ++k) {
    const double s = count == 1 ? 1.0 : std::pow(10.0, -3.0 + 3.0 * k / (count - 1));
    if (auto pt = fam.project(s, branch)) out.push_back(*pt);
  }
  return out;
}

}  // namespace nehari
