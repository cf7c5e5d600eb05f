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

#include "casim/medium.hpp"
#include "casim/quadrature.hpp"
#include "casim/scalar.hpp"

namespace casim {

// Renormalizer density: the spectral stress density of the outgoing wave in
// quadratic expansion,
//   W0 = -2w + (n^2 Z'^2 w^4 + n'^2 Z^2 u^4) / (4 n^2 Z^2 w^5).
// Subtracted pointwise from the bare density before integration. Second
// derivatives cancel between the three outgoing-wave contributions, so W0
// depends on n, Z and their first derivatives only.
template <class Real>
Real renormalizer_density_point(const MediumPoint<Real>& pt, const Real& u) {
  const Real w = pt.w(u);
  const Real w2 = w * w;
  const Real u2 = u * u;
  const Real n = pt.n.f, np = pt.n.d1;
  const Real Z = pt.Z.f, Zp = pt.Z.d1;
  const Real num = n * n * Zp * Zp * w2 * w2 + np * np * Z * Z * u2 * u2;
  return -2 * w + num / (4 * n * n * Z * Z * w2 * w2 * w);
}

template <class Real>
Real renormalizer_density(const MediumProfile& profile, const Real& kappa,
                          const Real& u, const Real& z) {
  return renormalizer_density_point(profile.eval(z, kappa), u);
}

// The three outgoing-wave contributions in Fourier space. Their sum is the
// renormalizer; the n'' terms of W1 and W2 cancel exactly.
template <class Real>
struct CountertermSet {
  Real W1{}, W2{}, W3{}, W0{};
  Real kappa{}, u{};
  Real n0{}, n0p{}, n0pp{};  // quadratic expansion around the evaluation point

  // chi(dz) = n0 + n0' dz / 2 + n0'' dz^2 / 6
  Real chi(const Real& dz) const {
    return n0 + n0p * dz / 2 + n0pp * dz * dz / 6;
  }
  // geodesic factor W(dz) = sqrt(u^2 + chi^2 kappa^2)
  Real w_geo(const Real& dz) const {
    using std::sqrt;
    const Real c = chi(dz);
    return sqrt(u * u + c * c * kappa * kappa);
  }
};

template <class Real>
CountertermSet<Real> outgoing_wave_densities_point(const MediumPoint<Real>& pt,
                                                   const Real& u) {
  const Real w = pt.w(u);
  const Real w2 = w * w, w3 = w2 * w, w5 = w2 * w3;
  const Real u2 = u * u;
  const Real k2 = pt.kappa * pt.kappa;
  const Real n = pt.n.f, np = pt.n.d1, npp = pt.n.d2;
  const Real Z = pt.Z.f, Zp = pt.Z.d1;

  CountertermSet<Real> c;
  c.kappa = pt.kappa;
  c.u = u;
  c.n0 = n;
  c.n0p = np;
  c.n0pp = npp;
  c.W1 = -2 * w + Zp * Zp / (4 * w * Z * Z) +
         (w2 * w2 / (n * n) - 3 * u2 * k2) * np * np / (4 * w5) -
         k2 * n * npp / (6 * w3);
  c.W2 = k2 * (2 * n * npp - np * np) / (12 * w3);
  c.W3 = k2 * np * np * (3 * u2 - w2) / (6 * w5);
  c.W0 = c.W1 + c.W2 + c.W3;
  return c;
}

template <class Real>
CountertermSet<Real> outgoing_wave_densities(const MediumProfile& profile,
                                             const Real& kappa, const Real& u,
                                             const Real& z) {
  return outgoing_wave_densities_point(profile.eval(z, kappa), u);
}

// Negative control: the density obtained from a linear expansion of the
// outgoing wave. It carries a second derivative of n and fails to compensate
// the quadratic divergence; used only to demonstrate that failure.
template <class Real>
Real linear_renormalizer_density_point(const MediumPoint<Real>& pt,
                                       const Real& u) {
  const Real w = pt.w(u);
  const Real w2 = w * w, w3 = w2 * w, w5 = w2 * w3;
  const Real u2 = u * u;
  const Real k2 = pt.kappa * pt.kappa;
  const Real n = pt.n.f, np = pt.n.d1, npp = pt.n.d2;
  const Real Z = pt.Z.f, Zp = pt.Z.d1;
  return -2 * w + Zp * Zp / (4 * w * Z * Z) +
         (w2 * w2 / (n * n) - 3 * u2 * k2) * np * np / (4 * w5) -
         k2 * n * npp / (2 * w3);
}

template <class Real>
Real linear_renormalizer_density(const MediumProfile& profile,
                                 const Real& kappa, const Real& u,
                                 const Real& z) {
  return linear_renormalizer_density_point(profile.eval(z, kappa), u);
}

// The reciprocal regularizing Green function
//   g0 = -(1/2) sqrt(nu(z) nu(z0)) / sqrt(w(z) w(z0)) exp(-|int_z0^z w dz'|),
// the zeroth WKB order. The exponent integral is done adaptively.
template <class Real>
Real adhoc_green(const MediumProfile& profile, Polarization p,
                 const Real& kappa, const Real& u, const Real& z,
                 const Real& z0) {
  using std::exp;
  using std::fabs;
  using std::sqrt;
  const auto pt = profile.eval(z, kappa);
  const auto pt0 = profile.eval(z0, kappa);
  const Real nu = pt.nu(p).f, nu0 = pt0.nu(p).f;
  const Real w = pt.w(u), w0 = pt0.w(u);
  Real phase = 0;
  if (to_double(z) != to_double(z0)) {
    auto integrand = [&](const Real& zz) { return profile.eval(zz, kappa).w(u); };
    const double digits = scalar_traits<Real>::digits10();
    const auto q = tanh_sinh_panel(integrand, std::min(z, z0, [](const Real& a, const Real& b) {
                                     return to_double(a) < to_double(b);
                                   }),
                                   std::max(z, z0, [](const Real& a, const Real& b) {
                                     return to_double(a) < to_double(b);
                                   }),
                                   std::pow(10.0, -(digits - 2.0)), Real(0), 10);
    phase = fabs(q.value);
  }
  return -sqrt(nu * nu0) / (2 * sqrt(w * w0)) * exp(-phase);
}

// Coincidence-limit spectral density of the ad hoc Green function, using its
// exact z-derivatives: per polarization -(2w^2 - A^2)/(2w) with
// A = nu'/(2 nu) - w'/(2w). Equals the renormalizer identically; kept as an
// independent route for the consistency tests.
template <class Real>
Real adhoc_density(const MediumProfile& profile, const Real& kappa,
                   const Real& u, const Real& z) {
  const auto pt = profile.eval(z, kappa);
  const auto wj = pt.w_jet(u);
  const Real w = wj.f;
  Real total = 0;
  for (auto p : kPolarizations) {
    const auto nu = pt.nu(p);
    const Real A = nu.d1 / (2 * nu.f) - wj.d1 / (2 * w);
    total += -(2 * w * w - A * A) / (2 * w);
  }
  return total;
}

}  // namespace casim
