// Copyright (c) 2026 The casim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "casim/fdweights.hpp"
#include "casim/greenfn.hpp"
#include "casim/medium.hpp"
#include "casim/quadrature.hpp"
#include "casim/renorm.hpp"
#include "casim/scalar.hpp"

namespace casim {

enum class RenormKind { quadratic, linear_control };

// Spectral integration settings. lambda_u/lambda_kappa are the initial
// cutoffs; convergence is certified by doubling them until the change in
// sigma drops below doubling_threshold (relative), which also bounds the
// reported error. Subtraction cancellation escalates the working precision
// from `precision` in steps of `escalation_step` up to `max_precision`.
struct QuadratureConfig {
  double lambda_u = 8;
  double lambda_kappa = 8;
  double rel_tol = 1e-6;
  unsigned precision = 30;
  unsigned max_precision = 500;
  double doubling_threshold = 0.01;
  double sigma_abs_floor = 1e-12;
  int max_doublings = 6;
  unsigned escalation_step = 20;
  int min_kept_digits = 10;
  int max_quad_level = 8;
  DensityMethod method = DensityMethod::automatic;
  RenormKind renorm = RenormKind::quadratic;

  void validate() const {
    if (precision > max_precision)
      throw std::invalid_argument("precision exceeds max_precision");
    if (!(rel_tol > std::pow(10.0, -(static_cast<double>(precision) - 10))))
      throw std::invalid_argument(
          "rel_tol must stay above the working precision floor 10^-(P-10)");
    if (lambda_u <= 0 || lambda_kappa <= 0)
      throw std::invalid_argument("cutoffs must be positive");
    if (doubling_threshold <= 0)
      throw std::invalid_argument("doubling threshold must be positive");
  }
};

namespace detail {

template <class Real>
Real round_to_digits(Real x, unsigned digits) {
  if constexpr (scalar_traits<Real>::is_big) {
    if (x.precision() > digits) x.precision(digits);
  }
  return x;
}

}  // namespace detail

// W - W0 at one spectral node, with automatic precision escalation when the
// subtraction cancels. Returns a value carrying at least min_kept_digits
// significant digits, unless the difference is below abs_floor (negligible
// for the surrounding quadrature) or exactly zero.
template <class Real>
Real renormalized_integrand(const MediumProfile& profile, const Real& z,
                            const Real& kappa, const Real& u,
                            const QuadratureConfig& cfg,
                            double abs_floor = 0,
                            unsigned* digits_used = nullptr) {
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0) excluded from the spectrum");

  if constexpr (!scalar_traits<Real>::is_big) {
    const Real W = spectral_density(profile, kappa, u, z, cfg.method);
    const Real W0 = cfg.renorm == RenormKind::quadratic
                        ? renormalizer_density(profile, kappa, u, z)
                        : linear_renormalizer_density(profile, kappa, u, z);
    return W - W0;
  } else {
    unsigned P = std::max(cfg.precision, scalar_traits<Real>::digits10());
    for (;;) {
      Real diff;
      double loss;
      {
        PrecisionScope scope(P);
        const Real zz = extended(z), kk = extended(kappa), uu = extended(u);
        RiccatiOptions ropt;
        ropt.rel_tol = std::pow(10.0, -(static_cast<double>(P) - 8));
        const Real W = spectral_density(profile, kk, uu, zz, cfg.method, ropt);
        const Real W0 = cfg.renorm == RenormKind::quadratic
                            ? renormalizer_density(profile, kk, uu, zz)
                            : linear_renormalizer_density(profile, kk, uu, zz);
        diff = W - W0;
        if (digits_used) *digits_used = std::max(*digits_used, P);
        if (diff == 0) return detail::round_to_digits(diff, cfg.precision);
        loss = magnitude_log10(W) - magnitude_log10(diff);
      }
      const double kept = static_cast<double>(P) - 6 - std::max(loss, 0.0);
      if (kept >= cfg.min_kept_digits)
        return detail::round_to_digits(diff, cfg.precision);
      if (std::fabs(to_double(diff)) <= abs_floor)
        return detail::round_to_digits(diff, cfg.precision);
      if (P >= cfg.max_precision)
        throw PrecisionError(
            "precision ceiling " + std::to_string(cfg.max_precision) +
            " reached with ~" + std::to_string(std::max(kept, 0.0)) +
            " digits retained in W - W0");
      P = std::min<unsigned>(P + cfg.escalation_step, cfg.max_precision);
    }
  }
}

// Renormalized stress at one z: sigma and its certified error.
template <class Real>
struct StressPoint {
  Real sigma{};
  Real error{};
  bool converged = false;
  double lambda_u = 0, lambda_kappa = 0;
  long evals = 0;
  unsigned digits_used = 0;
};

namespace detail {

// One tensor-product panel of the (kappa, u) integral: nested adaptive
// tanh-sinh, inner axis u (with the u-weight of the measure).
template <class Real, class F>
QuadResult<Real> panel_product(F&& f, double klo, double khi, double ulo,
                               double uhi, const QuadratureConfig& cfg,
                               const Real& abs_goal, long& evals) {
  Real inner_err = 0;
  auto outer_fn = [&](const Real& kap) {
    auto inner_fn = [&](const Real& uu) {
      ++evals;
      return Real(f(kap, uu) * uu);
    };
    auto r = tanh_sinh_panel(inner_fn, Real(ulo), Real(uhi), cfg.rel_tol / 4,
                             Real(abs_goal / (4 * (khi - klo))),
                             cfg.max_quad_level);
    inner_err += r.error * Real(khi - klo);
    return r.value;
  };
  auto out = tanh_sinh_panel(outer_fn, Real(klo), Real(khi), cfg.rel_tol,
                             abs_goal, cfg.max_quad_level);
  out.error += inner_err / 8;
  return out;
}

}  // namespace detail

// sigma_zz(z) = -(1/(2 pi)^2) iint (W - W0) u du dkappa over [0, L_k] x
// [0, L_u], certified by doubling both cutoffs until the change falls below
// the threshold. Units of hbar c (lengths dimensionless).
template <class Real>
StressPoint<Real> stress_zz(const MediumProfile& profile, double z,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(scalar_traits<Real>::is_big ? cfg.precision
                                                   : scalar_traits<Real>::digits10());
  StressPoint<Real> out;
  const Real zz(z);

  auto f = [&](const Real& kap, const Real& uu) {
    return renormalized_integrand(profile, zz, kap, uu, cfg,
                                  cfg.sigma_abs_floor / 100, &out.digits_used);
  };

  const Real pref = -1 / (4 * pi_value<Real>() * pi_value<Real>());
  Real sigma = 0, quad_err = 0, abs_goal = 0;
  Real last_inc = 0;
  // panel s covers [L 2^{s-1}, L 2^s] on its axis ([0, L] for s = 0)
  auto k_edges = [&](int s) {
    return s == 0 ? std::pair<double, double>(0, cfg.lambda_kappa)
                  : std::pair<double, double>(cfg.lambda_kappa * std::ldexp(1.0, s - 1),
                                              cfg.lambda_kappa * std::ldexp(1.0, s));
  };
  auto u_edges = [&](int s) {
    return s == 0 ? std::pair<double, double>(0, cfg.lambda_u)
                  : std::pair<double, double>(cfg.lambda_u * std::ldexp(1.0, s - 1),
                                              cfg.lambda_u * std::ldexp(1.0, s));
  };
  auto product = [&](int i, int j) {
    const auto [klo, khi] = k_edges(i);
    const auto [ulo, uhi] = u_edges(j);
    auto r = detail::panel_product(f, klo, khi, ulo, uhi, cfg, abs_goal,
                                   out.evals);
    quad_err += r.error;
    return r.value;
  };

  for (int stage = 0; stage <= cfg.max_doublings; ++stage) {
    Real inc = 0;
    if (stage == 0) {
      inc = product(0, 0);
    } else {
      for (int j = 0; j <= stage; ++j) inc += product(stage, j);
      for (int i = 0; i < stage; ++i) inc += product(i, stage);
    }
    sigma += inc;
    last_inc = inc;
    out.lambda_kappa = k_edges(stage).second;
    out.lambda_u = u_edges(stage).second;
    using std::fabs;
    abs_goal = Real(cfg.rel_tol / 8) * fabs(sigma);
    const double inc_mag = std::fabs(to_double(inc)) * std::fabs(to_double(pref));
    const double sig_mag = std::fabs(to_double(sigma)) * std::fabs(to_double(pref));
    if (stage > 0 &&
        inc_mag <= std::max(cfg.doubling_threshold * sig_mag,
                            cfg.sigma_abs_floor)) {
      out.converged = true;
      break;
    }
  }
  using std::fabs;
  out.sigma = pref * sigma;
  out.error = fabs(pref) * (quad_err + fabs(last_inc));
  return out;
}

// sigma as a function of the cutoff, over stages L, 2L, 4L, ...: the raw
// material of the divergence diagnostics (log growth has equal increments per
// doubling, convergent spectra have vanishing ones).
template <class Real>
struct LambdaTable {
  std::vector<double> lambda;
  std::vector<Real> sigma;
  std::vector<Real> increment;
};

template <class Real>
LambdaTable<Real> stress_lambda_table(const MediumProfile& profile, double z,
                                      const QuadratureConfig& cfg, int stages) {
  cfg.validate();
  PrecisionScope scope(scalar_traits<Real>::is_big ? cfg.precision
                                                   : scalar_traits<Real>::digits10());
  LambdaTable<Real> table;
  const Real zz(z);
  unsigned digits_used = 0;
  long evals = 0;
  auto f = [&](const Real& kap, const Real& uu) {
    return renormalized_integrand(profile, zz, kap, uu, cfg,
                                  cfg.sigma_abs_floor / 100, &digits_used);
  };
  const Real pref = -1 / (4 * pi_value<Real>() * pi_value<Real>());
  Real sigma = 0, abs_goal = 0;
  for (int stage = 0; stage < stages; ++stage) {
    auto edges = [&](double base, int s) {
      return s == 0 ? std::pair<double, double>(0, base)
                    : std::pair<double, double>(base * std::ldexp(1.0, s - 1),
                                                base * std::ldexp(1.0, s));
    };
    Real inc = 0;
    const int jmax = stage;
    for (int j = 0; j <= jmax; ++j) {
      const auto [klo, khi] = edges(cfg.lambda_kappa, stage);
      const auto [ulo, uhi] = edges(cfg.lambda_u, j);
      inc += detail::panel_product(f, klo, khi, ulo, uhi, cfg, abs_goal, evals)
                 .value;
    }
    for (int i = 0; i < stage; ++i) {
      const auto [klo, khi] = edges(cfg.lambda_kappa, i);
      const auto [ulo, uhi] = edges(cfg.lambda_u, stage);
      inc += detail::panel_product(f, klo, khi, ulo, uhi, cfg, abs_goal, evals)
                 .value;
    }
    sigma += inc;
    using std::fabs;
    abs_goal = Real(cfg.rel_tol / 8) * fabs(sigma);
    table.lambda.push_back(cfg.lambda_kappa * std::ldexp(1.0, stage));
    table.sigma.push_back(pref * sigma);
    table.increment.push_back(pref * inc);
  }
  return table;
}

// Stress on a z-grid with the force density appended.
template <class Real>
struct StressResult {
  std::vector<double> zgrid;
  std::vector<StressPoint<Real>> points;
  std::vector<Real> f_z;  // empty unless the grid supports differentiation
  bool has_force = false;
  std::vector<std::string> warnings;
};

// f_z = d sigma_zz / dz by 4th-order finite differences (5-point stencils,
// one-sided at the edges). Needs at least 3 grid points.
template <class Real>
std::vector<Real> force_density(const std::vector<double>& zgrid,
                                const std::vector<Real>& sigma) {
  const int n = static_cast<int>(zgrid.size());
  if (n < 3) throw DomainError("force density needs at least 3 grid points");
  std::vector<Real> f(n);
  const int width = std::min(5, n);
  for (int i = 0; i < n; ++i) {
    int lo = std::max(0, std::min(i - width / 2, n - width));
    std::vector<Real> xs(width);
    for (int j = 0; j < width; ++j) xs[j] = Real(zgrid[lo + j]);
    const auto wts = finite_difference_weights(Real(zgrid[i]), xs, 1);
    Real acc = 0;
    for (int j = 0; j < width; ++j) acc += wts[1][j] * sigma[lo + j];
    f[i] = acc;
  }
  return f;
}

template <class Real>
StressResult<Real> stress_profile(const MediumProfile& profile,
                                  const std::vector<double>& zgrid,
                                  const QuadratureConfig& cfg) {
  StressResult<Real> res;
  res.zgrid = zgrid;
  for (double z : zgrid) res.points.push_back(stress_zz<Real>(profile, z, cfg));
  if (zgrid.size() >= 3) {
    std::vector<Real> sig;
    for (auto& p : res.points) sig.push_back(p.sigma);
    res.f_z = force_density(zgrid, sig);
    res.has_force = true;
    // flag grids too coarse for the error bars to support differentiation
    double min_dz = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < zgrid.size(); ++i)
      min_dz = std::min(min_dz, zgrid[i] - zgrid[i - 1]);
    double max_err = 0, max_f = 0;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
      max_err = std::max(max_err, std::fabs(to_double(res.points[i].error)));
      max_f = std::max(max_f, std::fabs(to_double(res.f_z[i])));
    }
    if (max_err / min_dz > 0.5 * max_f && max_f > 0)
      res.warnings.push_back(
          "grid too coarse: stress error bars are comparable to f_z increments");
  }
  for (auto& p : res.points)
    if (!p.converged)
      res.warnings.push_back("cutoff doubling did not converge (divergent or "
                             "under-resolved spectral tail)");
  return res;
}

// Independent cross-check: renormalized stress inside the vacuum gap between
// two homogeneous dielectric half-spaces, from the standard two-interface
// reflection-coefficient formula at imaginary frequency. Fully separate code
// path from the Green-function solver (fixed-order Gauss-Legendre panels).
// Sign convention matches the pipeline (f = d sigma / dz): identical mirrors
// attract, sigma in the gap is positive, +pi^2/(240 a^4) for perfect mirrors.
template <class Real>
Real mirror_oracle(double gap, double eps_mirror,
                   const QuadratureConfig& cfg = {}) {
  if (!(gap > 0)) throw DomainError("mirror gap must be positive");
  if (!(eps_mirror >= 1)) throw DomainError("mirror permittivity must be >= 1");
  PrecisionScope scope(scalar_traits<Real>::is_big ? cfg.precision
                                                   : scalar_traits<Real>::digits10());
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  const Real eps(eps_mirror), a(gap);
  const Real pi = pi_value<Real>();

  // polar coordinates kappa = w sin t, u = w cos t; the Fresnel coefficients
  // depend on the angle only
  auto theta_fn = [&](const Real& t) {
    const Real st = sin(t), ct = cos(t);
    const Real m = sqrt(eps * st * st + ct * ct);
    const Real rE = (1 - m) / (1 + m);
    const Real rM = (eps - m) / (eps + m);
    const Real xE = rE * rE, xM = rM * rM;
    auto w_fn = [&](const Real& w) {
      const Real e = exp(-2 * w * a);
      const Real w3 = w * w * w;
      return w3 * (xE * e / (1 - xE * e) + xM * e / (1 - xM * e));
    };
    // dyadic panels in w until the exponential tail is exhausted
    Real acc = 0;
    double lo = 0, hi = 1.0 / gap;
    for (int p = 0; p < 40; ++p) {
      const Real piece = gauss_legendre_panel(w_fn, Real(lo), Real(hi));
      acc += piece;
      if (p > 4 && std::fabs(to_double(piece)) <
                       1e-18 * std::fabs(to_double(acc)) + 1e-300)
        break;
      lo = hi;
      hi *= 2;
    }
    return ct * acc;
  };
  const Real theta_int = gauss_legendre_panel(theta_fn, Real(0), Real(pi / 2));
  return theta_int / (2 * pi * pi);
}

}  // namespace casim
