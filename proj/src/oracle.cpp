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

#include "nehari/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nehari/eigen.hpp"
#include "nehari/error.hpp"

namespace nehari {

namespace bq = boost::math::quadrature;

OracleReport make_oracle_report(std::string name, double max_rel_error, int samples, double tolerance) {
  OracleReport r;
  r.name = std::move(name);
  r.max_rel_error = max_rel_error;
  r.samples = samples;
  r.tolerance = tolerance;
  r.passed = std::isfinite(max_rel_error) && max_rel_error <= tolerance;
  return r;
}

namespace {

// tanh-sinh halves its step at most kMaxRefinements times; each halving
// doubles the node count.
constexpr std::size_t kMaxRefinements = 15;

// The rule grows its abscissa tables lazily, so an inner integral must not
// share the instance of the outer one.
bq::tanh_sinh<double>& ts_rule(int nesting) {
  thread_local bq::tanh_sinh<double> outer(kMaxRefinements), inner(kMaxRefinements);
  return nesting == 0 ? outer : inner;
}

// Largest error estimate of an inner integral since the enclosing outer
// integral started. Inner errors are judged in absolute terms against the
// outer result, since a tiny inner integral may not reach relative accuracy.
thread_local double inner_error = 0.0;

struct Quad {
  double value = 0.0, error = 0.0, l1 = 0.0;
};

Quad integrate_raw(const std::function<double(double)>& f, double a, double b, double tol, int nesting) {
  Quad q;
  if (a == b) return q;
  if (std::abs(b - a) < 1e-12) {
    // Sliver next to a singular point: the integrand is bounded, so a
    // fixed rule is more than accurate enough (and tanh-sinh cannot map it).
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    const double x = 0.5773502691896257;  // two-point Gauss
    q.value = r * (f(m - r * x) + f(m + r * x));
    q.l1 = std::abs(q.value);
  } else {
    std::size_t levels = 0;
    q.value = ts_rule(nesting).integrate(f, a, b, tol, &q.error, &q.l1, &levels);
  }
  return q;
}

// Inner integral over [a, b] split at the given points.
double integrate_inner(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> cuts, double tol) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], a), hi = std::min(cuts[i + 1], b);
    if (!(hi > lo)) continue;
    const Quad q = integrate_raw(f, lo, hi, tol, 1);
    inner_error = std::max(inner_error, q.error);
    v += q.value;
  }
  return v;
}

// Outer integral over [a, b] split at `cuts`. Throws OracleFailed when the
// combined error estimate misses the tolerance once the refinement caps are
// exhausted.
double integrate_outer(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> cuts, double tol) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double v = 0.0, err = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], a), hi = std::min(cuts[i + 1], b);
    if (!(hi > lo)) continue;
    inner_error = 0.0;
    const Quad q = integrate_raw(f, lo, hi, tol, 0);
    v += q.value;
    err += q.error + inner_error * (hi - lo);
    l1 += q.l1;
  }
  if (l1 > 0.0 && !(err <= tol * 1e2 * l1)) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not reach tolerance (error " << err << ", L1 " << l1 << ")";
    throw OracleFailed(msg.str());
  }
  return v;
}

double interp(const Grid& grid, std::span<const double> ext, int c, double x) {
  const double t = (x - grid.cell_left(c)) / grid.h();
  return ext[static_cast<std::size_t>(c)] * (1.0 - t) + ext[static_cast<std::size_t>(c) + 1] * t;
}

}  // namespace

double adaptive_pair_quadrature(const Grid& grid, int a, int b, std::span<const double> ext,
                                const KernelSpec& kernel, double tol) {
  kernel.validate();
  if (a < 0 || b < 0 || a >= grid.n_cells() || b >= grid.n_cells()) {
    throw InvalidArgument("cell index out of range");
  }
  if (ext.size() != static_cast<std::size_t>(grid.n_interior()) + 2) {
    throw InvalidArgument("grid mismatch");
  }
  const double p = kernel.p, q = (1.0 + kernel.p_alpha()) / p;
  const double h = grid.h();
  const double xa = grid.cell_left(a), xb = xa + h;
  const double ya = grid.cell_left(b), yb = ya + h;
  // u = u0 + s (x - left) on each cell.
  const double u0a = ext[static_cast<std::size_t>(a)], u0b = ext[static_cast<std::size_t>(b)];
  const double sa = (ext[static_cast<std::size_t>(a) + 1] - u0a) / h;
  const double sb = (ext[static_cast<std::size_t>(b) + 1] - u0b) / h;
  const int d = std::abs(a - b);
  // u(x) - u(y) measured from a point both pieces share, if any, so it does
  // not cancel down to rounding noise next to the singular diagonal.
  double xr = xa, yr = ya, dr = u0a - u0b;
  if (d == 1) {
    xr = yr = a < b ? xb : xa;
    dr = 0.0;
  }
  // The inner variable is the offset r = y - x, so |x - y| is exact even on
  // short pieces next to the diagonal.
  auto integrand = [&](double x, double r) {
    if (r == 0.0) return 0.0;
    const double du = d == 0 ? std::abs(sa * r) : std::abs(dr + sa * (x - xr) - sb * (x + r - yr));
    if (du == 0.0) return 0.0;
    // |du|^p / |r|^{1 + p alpha} as one power, so nearly coincident points
    // do not produce 0 * inf.
    return kernel.theta * std::pow(du / std::pow(std::abs(r), q), p);
  };
  // |u(x) - u(y)|^p is only finitely smooth on the line u(x) = u(y), i.e.
  // y = level(x). Cut the inner range there, and the outer range where the
  // line enters or leaves the y-cell, so every piece is smooth inside.
  auto level = [&](double x) { return ya + (u0a + sa * (x - xa) - u0b) / sb; };
  const double inner_tol = tol * 1e-2;
  std::vector<double> outer_cuts;
  if (sb != 0.0 && sa != 0.0 && d != 0) {
    for (double yk : {ya, yb}) outer_cuts.push_back(xa + (u0b + sb * (yk - ya) - u0a) / sa);
  }
  auto outer = [&](double x) {
    auto f = [&](double r) { return integrand(x, r); };
    std::vector<double> cuts;
    // Same cell: the kernel singularity sits on the diagonal, which is also
    // the level line.
    if (d == 0) {
      cuts.push_back(0.0);
    } else if (sb != 0.0) {
      cuts.push_back(level(x) - x);
    }
    return integrate_inner(f, ya - x, yb - x, std::move(cuts), inner_tol);
  };
  return integrate_outer(outer, xa, xb, std::move(outer_cuts), tol);
}

double adaptive_same_cell_constant(const KernelSpec& kernel) {
  kernel.validate();
  const double g = kernel.p - 1.0 - kernel.p_alpha();
  auto outer = [&](double x) {
    auto f = [&](double y) { return x == y ? 0.0 : std::pow(std::abs(x - y), g); };
    return integrate_inner(f, 0.0, 1.0, {x}, 1e-13);
  };
  return kernel.theta * integrate_outer(outer, 0.0, 1.0, {}, 1e-11);
}

double adaptive_exterior_term(const Grid& grid, std::span<const double> ext, const KernelSpec& kernel) {
  kernel.validate();
  if (ext.size() != static_cast<std::size_t>(grid.n_interior()) + 2) {
    throw InvalidArgument("grid mismatch");
  }
  const double p = kernel.p, s = kernel.p_alpha();
  double total = 0.0;
  for (int c = 0; c < grid.n_cells(); ++c) {
    auto f = [&](double x) {
      const double u = std::abs(interp(grid, ext, c, x));
      if (u == 0.0) return 0.0;
      // w(x) written with the distances to the endpoints, which stay exact
      // near x = +-1.
      const double dl = x - (-1.0), dr = 1.0 - x;
      if (dl <= 0.0 || dr <= 0.0) return 0.0;
      const double w = kernel.theta * (std::pow(dl, -s) + std::pow(dr, -s)) / s;
      return 2.0 * std::pow(u, p) * w;
    };
    // Cut at a sign change, where |u|^p is only finitely smooth.
    std::vector<double> cuts;
    const double u0 = ext[static_cast<std::size_t>(c)], u1 = ext[static_cast<std::size_t>(c) + 1];
    if (u0 * u1 < 0.0) cuts.push_back(grid.cell_left(c) + grid.h() * u0 / (u0 - u1));
    total += integrate_outer(f, grid.cell_left(c), grid.cell_left(c) + grid.h(), std::move(cuts), 1e-13);
  }
  return total;
}

double adaptive_seminorm_p(const Grid& grid, std::span<const double> ext, const KernelSpec& kernel) {
  double total = adaptive_exterior_term(grid, ext, kernel);
  for (int a = 0; a < grid.n_cells(); ++a) {
    for (int b = 0; b < grid.n_cells(); ++b) {
      total += adaptive_pair_quadrature(grid, a, b, ext, kernel, 1e-11);
    }
  }
  return total;
}

DenseForms dense_forms_p2(const WeightTable& w) {
  if (w.kernel().p != 2.0) throw InvalidArgument("dense forms need p = 2");
  const int n = w.grid().n_interior();
  const double h = w.grid().h();
  DenseForms f;
  f.n = n;
  f.stiffness.assign(static_cast<std::size_t>(n * n), 0.0);
  f.mass.assign(static_cast<std::size_t>(n * n), 0.0);
  std::vector<double> ext(static_cast<std::size_t>(n) + 2, 0.0);
  auto energy = [&](int i, int j, double sj) {
    std::fill(ext.begin(), ext.end(), 0.0);
    ext[static_cast<std::size_t>(i) + 1] += 1.0;
    if (j >= 0) ext[static_cast<std::size_t>(j) + 1] += sj;
    return w.seminorm_p(ext);
  };
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = energy(i, -1, 0.0);
  for (int i = 0; i < n; ++i) {
    f.stiffness[static_cast<std::size_t>(i * n + i)] = diag[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      // Polarization: S(e_i + e_j) - S(e_i - e_j) = 4 S_ij.
      const double sij = 0.25 * (energy(i, j, 1.0) - energy(i, j, -1.0));
      f.stiffness[static_cast<std::size_t>(i * n + j)] = sij;
      f.stiffness[static_cast<std::size_t>(j * n + i)] = sij;
    }
    f.mass[static_cast<std::size_t>(i * n + i)] = 2.0 * h / 3.0;
    if (i + 1 < n) {
      f.mass[static_cast<std::size_t>(i * n + i + 1)] = h / 6.0;
      f.mass[static_cast<std::size_t>((i + 1) * n + i)] = h / 6.0;
    }
  }
  return f;
}

int count_below(const DenseForms& forms, double mu) {
  const int n = forms.n;
  std::vector<double> a(static_cast<std::size_t>(n * n));
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = forms.stiffness[k] - mu * forms.mass[k];
  // Symmetric Gaussian elimination; the signs of the pivots give the
  // inertia (Sylvester), and M > 0 turns it into an eigenvalue count.
  int negative = 0;
  for (int k = 0; k < n; ++k) {
    double piv = a[static_cast<std::size_t>(k * n + k)];
    if (piv == 0.0) piv = -std::numeric_limits<double>::min();
    if (piv < 0.0) ++negative;
    for (int i = k + 1; i < n; ++i) {
      const double l = a[static_cast<std::size_t>(i * n + k)] / piv;
      for (int j = k + 1; j < n; ++j) {
        a[static_cast<std::size_t>(i * n + j)] -= l * a[static_cast<std::size_t>(k * n + j)];
      }
    }
  }
  return negative;
}

double dense_eigen_p2(const WeightTable& w) {
  if (w.kernel().p != 2.0) throw InvalidArgument("dense eigen oracle needs p = 2");
  const int n = w.grid().n_interior();
  if (n > 6) throw InvalidArgument("dense eigen oracle is limited to 6 interior nodes");
  const DenseForms f = dense_forms_p2(w);
  double lo = 0.0;
  // Rayleigh quotient of e_1 bounds the smallest eigenvalue from above.
  double hi = f.stiffness[0] / f.mass[0];
  while (count_below(f, hi) < 1) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(f, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

OracleReport fd_gradient_check(std::string name, const ValueFn& f, const GradFn& grad,
                               std::span<const double> u,
                               const std::vector<std::vector<double>>& directions, double eps,
                               double tol) {
  if (!(eps >= 1e-8 && eps <= 1e-4)) throw InvalidArgument("finite-difference step must lie in [1e-8, 1e-4]");
  const std::vector<double> g = grad(u);
  if (g.size() != u.size()) throw InvalidArgument("gradient length differs from the point");
  double worst = 0.0;
  std::vector<double> up(u.size()), um(u.size());
  for (const auto& v : directions) {
    if (v.size() != u.size()) throw InvalidArgument("direction length differs from the point");
    double an = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] = u[i] + eps * v[i];
      um[i] = u[i] - eps * v[i];
      an += g[i] * v[i];
    }
    const double fd = (f(up) - f(um)) / (2.0 * eps);
    const double denom = std::max(std::abs(an), std::abs(fd));
    const double err = denom > 0.0 ? std::abs(fd - an) / denom : 0.0;
    worst = std::max(worst, std::isfinite(err) ? err : std::numeric_limits<double>::infinity());
  }
  return make_oracle_report(std::move(name), worst, static_cast<int>(directions.size()), tol);
}

TScan t_scan(const GridFunction& u, const BWeight& b, const ProblemParams& params, const WeightTable& w,
             int points, double lo_factor, double hi_factor) {
  if (points < 3 || !(lo_factor > 0.0) || !(hi_factor > lo_factor)) {
    throw InvalidArgument("invalid t-scan grid");
  }
  const FiberDiagnosis d = classify(u, b, params, w);
  if (!d.t_star || d.target_branch == Branch::None) {
    throw NoCriticalPoint("t-scan needs a direction whose fiber has a critical point");
  }
  // phi_u(t) = J(t u) from the three integrals of u and homogeneity.
  const EnergyReport r = energy_report(u, b, params, w);
  const double p = params.p(), beta = params.beta, lam = params.lambda;
  auto phi = [&](double t) {
    const double tp = std::pow(t, p);
    return tp * r.seminorm_p / p - lam * tp * r.lp_p / p - std::pow(t, beta) * r.b_term / beta;
  };
  const double sign = d.target_branch == Branch::NPlus ? 1.0 : -1.0;  // minimize sign * phi
  TScan out;
  out.ts.resize(static_cast<std::size_t>(points));
  out.values.resize(out.ts.size());
  const double l0 = std::log(lo_factor * *d.t_star), l1 = std::log(hi_factor * *d.t_star);
  const double dl = (l1 - l0) / (points - 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < out.ts.size(); ++i) {
    out.ts[i] = std::exp(l0 + dl * static_cast<double>(i));
    out.values[i] = phi(out.ts[i]);
    if (sign * out.values[i] < sign * out.values[best]) best = i;
  }
  out.t_grid = out.ts[best];
  out.t_opt = out.t_grid;
  if (best > 0 && best + 1 < out.ts.size()) {
    const double fm = sign * out.values[best - 1], f0 = sign * out.values[best],
                 fp = sign * out.values[best + 1];
    const double curv = fm - 2.0 * f0 + fp;
    if (curv > 0.0) {
      const double shift = 0.5 * (fm - fp) / curv;
      out.t_opt = std::exp(std::log(out.t_grid) + shift * dl);
    }
  }
  return out;
}

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = uni(rng);
  return v;
}

std::vector<double> random_smooth(std::mt19937_64& rng, const Grid& grid) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> c(6);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = uni(rng) / static_cast<double>(m + 1);
  c[0] = std::abs(c[0]) + 0.2;
  std::vector<double> v(static_cast<std::size_t>(grid.n_interior()));
  for (int i = 0; i < grid.n_interior(); ++i) {
    const double y = 0.5 * (grid.node(i) + 1.0);
    double s = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * std::sin(static_cast<double>(m + 1) * std::numbers::pi * y);
    v[static_cast<std::size_t>(i)] = s;
  }
  return v;
}

double rel_err(double a, double ref) {
  const double d = std::max(std::abs(a), std::abs(ref));
  return d > 0.0 ? std::abs(a - ref) / d : 0.0;
}

struct FdCase {
  double p, alpha, beta;
};

}  // namespace

std::vector<OracleReport> run_oracle_suite(std::uint64_t seed) {
  std::vector<OracleReport> out;
  std::mt19937_64 rng(seed);

  // Same-cell closed form against 2-D adaptive quadrature.
  {
    double worst = 0.0;
    int n = 0;
    for (const KernelSpec k : {KernelSpec{2.0, 0.25, 1.0}, KernelSpec{3.0, 0.2, 1.0}, KernelSpec{2.0, 0.4, 2.0}}) {
      worst = std::max(worst, rel_err(same_cell_constant(k), adaptive_same_cell_constant(k)));
      ++n;
    }
    out.push_back(make_oracle_report("same_cell_constant", worst, n, 1e-8));
  }

  // Discrete energy of the centre hat against fully adaptive integration.
  {
    const GridPtr grid = make_grid(7);
    const KernelSpec k{2.0, 0.25, 1.0};
    const WeightTable w(grid, k);
    std::vector<double> ext(9, 0.0);
    ext[4] = 1.0;
    out.push_back(make_oracle_report("seminorm_hat_n7",
                                     rel_err(w.seminorm_p(ext), adaptive_seminorm_p(*grid, ext, k)), 1, 1e-6));
  }

  // Pair symmetry.
  {
    const GridPtr grid = make_grid(9);
    const WeightTable w(grid, KernelSpec{3.0, 0.2, 1.0});
    std::vector<double> ext(11, 0.0);
    const auto v = random_values(rng, 9);
    std::copy(v.begin(), v.end(), ext.begin() + 1);
    double worst = 0.0;
    int n = 0;
    for (int a = 0; a < grid->n_cells(); ++a) {
      for (int b = a + 1; b < grid->n_cells(); ++b, ++n) {
        worst = std::max(worst, rel_err(w.pair_energy(a, b, ext), w.pair_energy(b, a, ext)));
      }
    }
    out.push_back(make_oracle_report("pair_symmetry", worst, n, 0.0));
  }

  // Gradients by central differences.
  {
    const GridPtr grid = make_grid(16);
    const std::vector<double> bc{0.3, 1.0};
    const BWeight b = BWeight::preset(grid, "cosine", bc);
    double worst_j = 0.0, worst_jp = 0.0;
    int nj = 0;
    for (const FdCase c : {FdCase{2.0, 0.25, 1.5}, FdCase{2.0, 0.25, 3.0}, FdCase{3.0, 0.2, 2.0}}) {
      const KernelSpec k{c.p, c.alpha, 1.0};
      const WeightTable w(grid, k);
      const ProblemParams params = ProblemParams::make(k, c.beta, 5.0);
      for (int s = 0; s < 20; ++s, ++nj) {
        const auto u = random_values(rng, 16);
        const std::vector<std::vector<double>> dirs{random_values(rng, 16)};
        auto fj = [&](std::span<const double> x) {
          return j_lambda(GridFunction(grid, {x.begin(), x.end()}), b, params, w);
        };
        auto gj = [&](std::span<const double> x) {
          const auto g = grad_j(GridFunction(grid, {x.begin(), x.end()}), b, params, w);
          return std::vector<double>(g.values().begin(), g.values().end());
        };
        auto fp = [&](std::span<const double> x) {
          return j_plus(GridFunction(grid, {x.begin(), x.end()}), b, params, w);
        };
        auto gp = [&](std::span<const double> x) {
          const auto g = grad_j_plus(GridFunction(grid, {x.begin(), x.end()}), b, params, w);
          return std::vector<double>(g.values().begin(), g.values().end());
        };
        worst_j = std::max(worst_j, fd_gradient_check("j", fj, gj, u, dirs, 1e-6, 1e-5).max_rel_error);
        worst_jp = std::max(worst_jp, fd_gradient_check("j+", fp, gp, u, dirs, 1e-6, 1e-5).max_rel_error);
      }
    }
    out.push_back(make_oracle_report("fd_grad_j", worst_j, nj, 1e-5));
    out.push_back(make_oracle_report("fd_grad_j_plus", worst_jp, nj, 1e-5));

    // p = 2 with b = 0 is quadratic: central differences are exact.
    const KernelSpec k{2.0, 0.25, 1.0};
    const WeightTable w(grid, k);
    const BWeight zero = BWeight::from_function(grid, [](double) { return 0.0; }, "zero");
    const ProblemParams params = ProblemParams::make(k, 1.5, 3.0);
    auto fq = [&](std::span<const double> x) {
      return j_lambda(GridFunction(grid, {x.begin(), x.end()}), zero, params, w);
    };
    auto gq = [&](std::span<const double> x) {
      const auto g = grad_j(GridFunction(grid, {x.begin(), x.end()}), zero, params, w);
      return std::vector<double>(g.values().begin(), g.values().end());
    };
    std::vector<std::vector<double>> dirs;
    for (int s = 0; s < 20; ++s) dirs.push_back(random_values(rng, 16));
    OracleReport q = fd_gradient_check("fd_quadratic", fq, gq, random_values(rng, 16), dirs, 1e-4, 1e-9);
    out.push_back(q);
  }

  // Descent eigenvalue against the dense p = 2 solve.
  {
    double worst = 0.0;
    int n = 0;
    for (double alpha : {0.2, 0.25, 0.4}) {
      for (int nodes = 3; nodes <= 6; ++nodes, ++n) {
        const WeightTable w(make_grid(nodes), KernelSpec{2.0, alpha, 1.0});
        worst = std::max(worst, rel_err(principal_eigenpair(w).lambda1, dense_eigen_p2(w)));
      }
    }
    out.push_back(make_oracle_report("dense_eigen_p2", worst, n, 1e-8));
  }

  // Closed-form t* against brute-force scans, and phi'(t*) = 0.
  {
    const GridPtr grid = make_grid(16);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const Regime regime : {Regime::Sublinear, Regime::Superlinear}) {
      const KernelSpec k{2.0, 0.25, 1.0};
      const WeightTable w(grid, k);
      const double beta = regime == Regime::Sublinear ? 1.5 : 3.0;
      double worst_t = 0.0, worst_d1 = 0.0;
      int found = 0;
      for (int tries = 0; found < 50 && tries < 5000; ++tries) {
        const std::vector<double> bc{uni(rng) - 0.5, 1.0};
        const BWeight b = BWeight::preset(grid, "cosine", bc);
        const ProblemParams params = ProblemParams::make(k, beta, 1.0 + 19.0 * uni(rng));
        const GridFunction u(grid, random_smooth(rng, *grid));
        const FiberDiagnosis d = classify(u, b, params, w);
        if (!d.t_star) continue;
        ++found;
        const TScan scan = t_scan(u, b, params, w);
        worst_t = std::max(worst_t, std::abs(scan.t_opt - *d.t_star) / *d.t_star);
        const double t = *d.t_star;
        const double scale = std::abs(std::pow(t, params.p() - 1.0) * d.e_value) +
                             std::abs(std::pow(t, beta - 1.0) * d.b_value);
        worst_d1 = std::max(worst_d1, std::abs(fiber_d1(d.e_value, d.b_value, t, params)) / scale);
      }
      const std::string tag = regime == Regime::Sublinear ? "sublinear" : "superlinear";
      if (found < 50) worst_t = std::numeric_limits<double>::infinity();
      out.push_back(make_oracle_report("t_scan_" + tag, worst_t, found, 1e-3));
      out.push_back(make_oracle_report("fiber_d1_at_t_star_" + tag, worst_d1, found, 1e-10));
    }
  }
  return out;
}

}  // namespace nehari
