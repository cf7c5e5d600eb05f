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
#include <vector>

#include "casim/medium.hpp"
#include "casim/quadrature.hpp"
#include "casim/scalar.hpp"

namespace casim {

// Large-wavenumber asymptotics of the homogeneous solutions
// h = exp(-(s_0 + s_1 + s_2 + ...)), generated by the recurrence
//   s'_m = ( s''_{m-1} - (nu'/nu) s'_{m-1} - sum_{k=1}^{m-1} s'_k s'_{m-k} )
//          / (2 s'_0),       s'_0 = sqrt(u^2 + n^2 kappa^2).
// Even-m coefficients flip sign with s'_0 and build the decaying envelope;
// odd-m coefficients are shared between the two solutions (amplitude factor).

template <class Real>
struct WkbSeries {
  int order = 0;
  Real kappa{}, u{};
  // coefficient jets s'_m; entry m is valid to derivative order (3 - m)
  std::vector<Jet<Real>> sprime;

  // even partial sum s_E' (bookkeeping parameter q fixed to 1)
  Real even_prime() const {
    Real acc = 0;
    for (std::size_t m = 0; m < sprime.size(); m += 2) acc += sprime[m].f;
    return acc;
  }
  // odd partial sum s_O'
  Real odd_prime() const {
    Real acc = 0;
    for (std::size_t m = 1; m < sprime.size(); m += 2) acc += sprime[m].f;
    return acc;
  }
};

namespace detail {

// d/dz of a jet, one derivative order shorter
template <class Real>
Jet<Real> shift_jet(const Jet<Real>& j) {
  return Jet<Real>(j.d1, j.d2, j.d3, Real(0));
}

}  // namespace detail

// WKB coefficients s'_0 .. s'_M at (z; kappa, u). Built-in profiles provide
// three exact derivative orders, which supports M <= 3.
template <class Real>
WkbSeries<Real> wkb_coefficients(const MediumProfile& profile, Polarization p,
                                 const Real& kappa, const Real& u,
                                 const Real& z, int order) {
  if (order < 0) throw DomainError("wkb order must be nonnegative");
  if (order > 3)
    throw DomainError(
        "wkb order > 3 needs more derivative orders than profiles provide");
  const auto pt = profile.eval(z, kappa);
  const auto nu = pt.nu(p);
  const auto G = detail::shift_jet(log(nu));  // nu'/nu and two derivatives

  WkbSeries<Real> s;
  s.order = order;
  s.kappa = kappa;
  s.u = u;
  s.sprime.push_back(pt.w_jet(u));
  for (int m = 1; m <= order; ++m) {
    Jet<Real> acc = detail::shift_jet(s.sprime[m - 1]) - G * s.sprime[m - 1];
    for (int k = 1; k <= m - 1; ++k)
      acc = acc - s.sprime[k] * s.sprime[m - k];
    s.sprime.push_back(acc / (2 * s.sprime[0]));
  }
  return s;
}

// Asymptotic Green function
//   g ~ -(1/2) sqrt(nu(z) nu(z0) / (s_E'(z) s_E'(z0))) exp(-|int s_E' dz|),
// with s_E' truncated at the given even order. Order 0 is the ad hoc
// regularizer; only even orders enter.
template <class Real>
Real asymptotic_green(const MediumProfile& profile, Polarization p,
                      const Real& kappa, const Real& u, const Real& z,
                      const Real& z0, int order) {
  using std::exp;
  using std::fabs;
  using std::sqrt;
  if (order % 2 != 0) throw DomainError("asymptotic green uses even orders");
  auto se = [&](const Real& zz) {
    return wkb_coefficients(profile, p, kappa, u, zz, order).even_prime();
  };
  const Real nu = profile.eval(z, kappa).nu(p).f;
  const Real nu0 = profile.eval(z0, kappa).nu(p).f;
  const Real se_z = se(z), se_z0 = se(z0);
  Real phase = 0;
  if (to_double(z) != to_double(z0)) {
    const double digits = scalar_traits<Real>::digits10();
    const Real lo = to_double(z) < to_double(z0) ? z : z0;
    const Real hi = to_double(z) < to_double(z0) ? z0 : z;
    const auto q = tanh_sinh_panel(se, lo, hi,
                                   std::pow(10.0, -(digits - 2.0)), Real(0), 10);
    phase = fabs(q.value);
  }
  return -sqrt(nu * nu0 / (se_z * se_z0)) / 2 * exp(-phase);
}

// Divergence structure of the bare stress: integrands of the quartic,
// quadratic and logarithmic pieces, plus optional partial integrals.
template <class Real>
struct DivergenceReport {
  Real I4{};    // 2w, the quartic piece
  Real I2{};    // quadratic piece (enters the stress with a minus sign)
  Real Ilog{};  // logarithmic piece (vanishes identically with dispersion)
  double lambda = 0;
  Real alpha4_term{};  // (1/(2pi)^2) iint_{[0,L]^2} I4 u du dk
  Real alpha2_term{};  // (1/(2pi)^2) iint_{[0,L]^2} I2 u du dk
  Real log_shell{};    // (1/(2pi)^2) iint_{[L/2,L]^2} Ilog u du dk
};

namespace detail {

// The logarithmic-divergence bracket; Ilog = bracket / (16 w^11 n^4 Z^4).
// Transcribed once and guarded by a regression test against an independent
// second transcription.
template <class Real>
Real alpha_log_bracket(const Real& u, const Real& w, const Real& n,
                       const Real& n1, const Real& n2, const Real& n3,
                       const Real& Z, const Real& Z1, const Real& Z2,
                       const Real& Z3) {
  const Real u2 = u * u, u4 = u2 * u2, u6 = u4 * u2, u8 = u4 * u4;
  const Real w2 = w * w, w4 = w2 * w2, w6 = w4 * w2, w8 = w4 * w4;

  const Real term_u8 = -20 * u8 * Z * Z * Z * Z * n1 * n1 * n1 * n1;

  const Real block_u2 =
      2 * Z * Z *
          (5 * n * n1 * n1 * Z2 + 19 * n1 * n1 * n1 * Z1 +
           n * n * (n3 * Z1 - 2 * n2 * Z2) +
           n * n1 * (n * Z3 - 12 * n2 * Z1)) +
      5 * n * n * n1 * Z1 * Z1 * Z1 +
      n * Z * Z1 * (n * n2 * Z1 - 10 * n * n1 * Z2 + 6 * n1 * n1 * Z1);
  const Real term_u2 = u2 * w6 * n * Z * block_u2;

  const Real term_u6 =
      u6 * w2 * Z * Z * Z * n1 * n1 *
      (35 * n * n1 * Z1 + 9 * Z * (4 * n1 * n1 - n * n2));

  const Real block_u4 =
      -5 * n * n1 * (-4 * n * n2 * Z1 + n * n1 * Z2 + 15 * n1 * n1 * Z1) -
      2 * Z *
          (-n * n * n2 * n2 + 8 * n1 * n1 * n1 * n1 + n * n * n3 * n1 -
           5 * n * n1 * n1 * n2);
  const Real term_u4 = u4 * w4 * Z * Z * Z * block_u4;

  const Real block_w8 =
      3 * n * Z * Z1 * Z1 * (n * Z2 - n1 * Z1) - 2 * n * n * Z1 * Z1 * Z1 * Z1 +
      2 * Z * Z *
          (n * (n2 * Z1 * Z1 + n * Z2 * Z2 - n * Z3 * Z1) -
           2 * n1 * n1 * Z1 * Z1 + n * n1 * Z1 * Z2);
  const Real term_w8 = w8 * n * n * block_w8;

  return term_u8 + term_u2 + term_u6 + term_u4 + term_w8;
}

}  // namespace detail

template <class Real>
DivergenceReport<Real> divergence_integrands(const MediumProfile& profile,
                                             const Real& kappa, const Real& u,
                                             const Real& z) {
  const auto pt = profile.eval(z, kappa);
  const Real w = pt.w(u);
  const Real n = pt.n.f, Z = pt.Z.f;
  DivergenceReport<Real> r;
  r.I4 = 2 * w;
  const Real w2 = w * w, u2 = u * u;
  r.I2 = (n * n * pt.Z.d1 * pt.Z.d1 * w2 * w2 +
          pt.n.d1 * pt.n.d1 * Z * Z * u2 * u2) /
         (4 * n * n * Z * Z * w2 * w2 * w);
  const Real bracket = detail::alpha_log_bracket(
      u, w, n, pt.n.d1, pt.n.d2, pt.n.d3, Z, pt.Z.d1, pt.Z.d2, pt.Z.d3);
  Real w11 = w;
  for (int i = 0; i < 5; ++i) w11 *= w2;
  r.Ilog = bracket / (16 * w11 * n * n * n * n * Z * Z * Z * Z);
  return r;
}

// Partial integrals over [0, L]^2 (quartic, quadratic) and the [L/2, L]^2
// shell of the logarithmic integrand, in stress units (1/(2 pi)^2 included).
template <class Real>
DivergenceReport<Real> divergence_partial_integrals(const MediumProfile& profile,
                                                    const Real& z,
                                                    double lambda) {
  DivergenceReport<Real> r = divergence_integrands(profile, Real(1), Real(1), z);
  r.lambda = lambda;
  const double digits = scalar_traits<Real>::digits10();
  const double rtol = std::pow(10.0, -std::min(digits - 4.0, 10.0));
  const Real pref = 1 / (4 * pi_value<Real>() * pi_value<Real>());

  auto integrate2d = [&](auto&& pick, double klo, double khi, double ulo,
                         double uhi) {
    auto outer = [&](const Real& kap) {
      auto inner = [&](const Real& uu) {
        const auto rep = divergence_integrands(profile, kap, uu, z);
        return Real(pick(rep) * uu);
      };
      return tanh_sinh_panel(inner, Real(ulo), Real(uhi), rtol / 4, Real(0), 9)
          .value;
    };
    return tanh_sinh_panel(outer, Real(klo), Real(khi), rtol, Real(0), 9).value;
  };

  r.alpha4_term =
      pref * integrate2d([](const DivergenceReport<Real>& rep) { return rep.I4; },
                         0, lambda, 0, lambda);
  r.alpha2_term =
      pref * integrate2d([](const DivergenceReport<Real>& rep) { return rep.I2; },
                         0, lambda, 0, lambda);
  r.log_shell =
      pref * integrate2d([](const DivergenceReport<Real>& rep) { return rep.Ilog; },
                         lambda / 2, lambda, lambda / 2, lambda);
  return r;
}

}  // namespace casim
