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
#include "casim/riccati.hpp"
#include "casim/scalar.hpp"
#include "casim/secant.hpp"

namespace casim {

// Coordinate of one spectral evaluation.
template <class Real>
struct SpectralPoint {
  Real z, kappa, u;
  Real w;  // sqrt(eps mu kappa^2 + u^2)
  Polarization p = Polarization::E;
};

template <class Real>
SpectralPoint<Real> make_spectral_point(const MediumProfile& profile,
                                        const Real& z, const Real& kappa,
                                        const Real& u, Polarization p) {
  SpectralPoint<Real> s{z, kappa, u, profile.eval(z, kappa).w(u), p};
  return s;
}

// Fourier-space Green function data at (z, z0); all real on the imaginary
// frequency axis. The mixed derivative is the branch value (z != z0 side).
template <class Real>
struct GreenSample {
  Real g, dz, dz0, dzdz0;
};

// Green function from the log-derivative pair: h+ and h- are reconstructed by
// quadrature of y+- and normalized through the generalized Wronskian
//   W = (1/nu) (h+' h- - h+ h-'),
// evaluated where both are normalized to one. Decay away from the source
// keeps every exponential bounded.
template <class Real>
GreenSample<Real> green_value(const MediumProfile& profile, Polarization p,
                              const Real& kappa, const Real& u, const Real& z,
                              const Real& z0, const RiccatiOptions& opt = {}) {
  using std::exp;
  const bool swapped = z < z0;
  const Real& zg = swapped ? z0 : z;
  const Real& zl = swapped ? z : z0;
  const auto pair = riccati_solve(profile, p, kappa, u, {zl, zg}, opt);
  const auto& yp_l = pair.y_plus.front();
  const auto& ym_l = pair.y_minus.front();
  const auto& yp_g = pair.y_plus.back();

  const Real nu_l = profile.eval(zl, kappa).nu(p).f;
  // normalize h+(zl) = h-(zl) = 1:  W = (y+(zl) - y-(zl)) / nu(zl)
  const Real W = (yp_l - ym_l) / nu_l;
  // h+(zg) = exp(int_zl^zg y+), a decaying factor
  const Real hp_g = exp(pair.S_plus.back() - pair.S_plus.front());

  GreenSample<Real> s;
  s.g = hp_g / W;
  const Real d_upper = yp_g * s.g;   // d/dz at the greater coordinate
  const Real d_lower = ym_l * s.g;   // d/dz at the lesser coordinate
  s.dz = swapped ? d_lower : d_upper;
  s.dz0 = swapped ? d_upper : d_lower;
  s.dzdz0 = yp_g * ym_l * s.g;
  return s;
}

enum class DensityMethod { automatic, closed_form, riccati };

// Single-polarization spectral stress density at coincidence,
//   (1/nu)(w^2 - d_z d_z0) g | z0 -> z  =  (w^2 - y+ y-) / (y+ - y-),
// the exact z0 -> z limit taken before any integration.
template <class Real>
Real spectral_density_pol(const MediumProfile& profile, Polarization p,
                          const Real& kappa, const Real& u, const Real& z,
                          DensityMethod method = DensityMethod::automatic,
                          const RiccatiOptions& opt = {}) {
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0): no decay scale");
  if (method == DensityMethod::automatic) {
    if (profile.is_homogeneous()) {
      return -profile.eval(z, kappa).w(u);
    }
    if (profile.has_secant_closed_form())
      return secant_spectral_density(profile, kappa, u, z) / 2;
    method = DensityMethod::riccati;
  }
  if (method == DensityMethod::closed_form) {
    if (profile.is_homogeneous()) return -profile.eval(z, kappa).w(u);
    if (!profile.has_secant_closed_form())
      throw DomainError("no closed-form density for this profile");
    return secant_spectral_density(profile, kappa, u, z) / 2;
  }
  const auto pair = riccati_solve(profile, p, kappa, u, {z}, opt);
  const Real w = profile.eval(z, kappa).w(u);
  const auto& yp = pair.y_plus.front();
  const auto& ym = pair.y_minus.front();
  return (w * w - yp * ym) / (yp - ym);
}

// Both polarizations summed; the bare integrand of the stress formula.
template <class Real>
Real spectral_density(const MediumProfile& profile, const Real& kappa,
                      const Real& u, const Real& z,
                      DensityMethod method = DensityMethod::automatic,
                      const RiccatiOptions& opt = {}) {
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0): no decay scale");
  if (method != DensityMethod::riccati) {
    if (profile.is_homogeneous()) return -2 * profile.eval(z, kappa).w(u);
    if (profile.has_secant_closed_form())
      return secant_spectral_density(profile, kappa, u, z);
    if (method == DensityMethod::closed_form)
      throw DomainError("no closed-form density for this profile");
  }
  if (profile.impedance_matched()) {
    // nu_E = nu_M: the polarizations are degenerate
    return 2 * spectral_density_pol(profile, Polarization::E, kappa, u, z,
                                    DensityMethod::riccati, opt);
  }
  return spectral_density_pol(profile, Polarization::E, kappa, u, z,
                              DensityMethod::riccati, opt) +
         spectral_density_pol(profile, Polarization::M, kappa, u, z,
                              DensityMethod::riccati, opt);
}

}  // namespace casim
