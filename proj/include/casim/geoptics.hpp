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

#include <array>
#include <cmath>
#include <vector>

#include "casim/medium.hpp"
#include "casim/scalar.hpp"
#include "casim/secant.hpp"

namespace casim {

// Quadratic-expansion data of the outgoing wave at an emission point z0.
// The wave to quadratic order is purely geometric: geodesic length s,
// transport amplitude A0 with the curvature scalar R, and the geometric
// dispersion pair (beta1, b) one order beyond geometrical optics.
template <class Real>
struct GeoExpansion {
  Real z0{};
  Real n0{}, n0p{}, n0pp{};
  Real nu0{}, nu0p{}, nu0pp{};
  Real curvature_R{};   // R = -4 n0''/n0^3 + 2 n0'^2/n0^4 (3D scalar)
  Real ricci_zz{};      // R_z^z = 2 nu'^2/(n^2 nu^2) - 2 nu''/(n^2 nu)
  Real beta1{};
  Real b{};
};

template <class Real>
GeoExpansion<Real> make_geo_expansion(const MediumProfile& profile,
                                      Polarization p, const Real& kappa,
                                      const Real& z0) {
  const auto pt = profile.eval(z0, kappa);
  const auto nu = pt.nu(p);
  GeoExpansion<Real> g;
  g.z0 = z0;
  g.n0 = pt.n.f;
  g.n0p = pt.n.d1;
  g.n0pp = pt.n.d2;
  g.nu0 = nu.f;
  g.nu0p = nu.d1;
  g.nu0pp = nu.d2;
  const Real n2 = g.n0 * g.n0;
  g.curvature_R = -4 * g.n0pp / (n2 * g.n0) + 2 * g.n0p * g.n0p / (n2 * n2);
  g.ricci_zz = 2 * g.nu0p * g.nu0p / (n2 * g.nu0 * g.nu0) -
               2 * g.nu0pp / (n2 * g.nu0);
  g.beta1 = ((g.n0p * g.n0p - 2 * g.n0 * g.n0pp) / n2 +
             (6 * g.nu0 * g.nu0pp - 9 * g.nu0p * g.nu0p) / (g.nu0 * g.nu0)) /
            (24 * n2);
  g.b = -g.n0 / (4 * pi_value<Real>() * g.nu0) * g.beta1;
  return g;
}

// Geodesic length and amplitude of the outgoing wave in quadratic expansion
// around (r=0, z0). The amplitude has the near-field pole -1/(4 pi nu rho);
// rho_A0 carries the finite product rho * A0.
template <class Real>
struct QuadraticOutgoing {
  Real s{};       // optical path length
  Real A0{};      // transport amplitude (pole at rho = 0)
  Real rho_A0{};  // rho * A0, finite at the emission point
  Real rho{};
};

template <class Real>
QuadraticOutgoing<Real> quadratic_outgoing(const MediumProfile& profile,
                                           Polarization p, const Real& kappa,
                                           const Real& z0, const Real& r,
                                           const Real& z) {
  using std::sqrt;
  const auto g = make_geo_expansion(profile, p, kappa, z0);
  const Real dz = z - z0;
  const Real rho = sqrt(r * r + dz * dz);
  QuadraticOutgoing<Real> q;
  q.rho = rho;
  q.s = rho * (g.n0 + g.n0p * dz / 2 + g.n0pp * dz * dz / 6 -
               g.n0p * g.n0p * r * r / (24 * g.n0));
  const Real nu_z = profile.eval(z, kappa).nu(p).f;
  const Real pref = -1 / (4 * pi_value<Real>() * sqrt(g.nu0 * nu_z));
  q.rho_A0 = pref * (1 + g.n0 * g.n0 * g.curvature_R * rho * rho / 48);
  if (to_double(rho) == 0)
    throw DomainError("amplitude pole at the emission point; use rho_A0");
  q.A0 = q.rho_A0 / rho;
  return q;
}

// Geometric-dispersion coefficients at the emission point (zeroth order).
template <class Real>
struct DispersionAmplitude {
  Real beta1{}, b{};
};

template <class Real>
DispersionAmplitude<Real> dispersion_amplitude(const MediumProfile& profile,
                                               Polarization p,
                                               const Real& kappa,
                                               const Real& z0) {
  const auto g = make_geo_expansion(profile, p, kappa, z0);
  return {g.beta1, g.b};
}

// ---------------------------------------------------------------------------
// Wavefront snapshots (plot output). Rays solve the eikonal equation in a
// meridional plane; n depends on z only, so the transverse momentum is
// conserved along each ray.

struct RayPath {
  std::vector<std::array<double, 2>> points;  // (r, z)
  std::vector<double> path_s;                 // optical length at each point
};

struct WavefrontResult {
  std::vector<double> front_times;
  std::vector<std::vector<std::array<double, 2>>> fronts;
  std::vector<std::array<double, 3>> trail;  // (r, z, b) behind the flash
  std::vector<RayPath> rays;
};

inline WavefrontResult wavefront_snapshot(const MediumProfile& profile,
                                          double z0, double time,
                                          int ray_count, int front_count = 8) {
  WavefrontResult out;
  if (ray_count <= 0 || time <= 0) return out;

  const bool secant_b = profile.has_secant_closed_form() &&
                        profile.spec().amplitude == 1.0;
  const double a_len = profile.spec().scale;
  const double shift = profile.spec().shift;
  const double b_const = to_double(
      dispersion_amplitude(profile, Polarization::E, 0.0, z0).b);

  auto n_of = [&](double z) { return to_double(profile.eval(z, 0.0).n.f); };
  auto np_of = [&](double z) { return to_double(profile.eval(z, 0.0).n.d1); };
  auto inside = [&](double z) {
    return z > profile.domain_lo() && z < profile.domain_hi();
  };

  for (int j = 1; j <= front_count; ++j)
    out.front_times.push_back(time * j / front_count);
  out.fronts.resize(front_count);

  const double n0 = n_of(z0);
  for (int i = 0; i < ray_count; ++i) {
    const double theta =
        -3.14159265358979324 + 2 * 3.14159265358979324 * (i + 0.5) / ray_count;
    // state: (r, z, pz, s); pr is conserved
    const double pr = n0 * std::sin(theta);
    double r = 0, z = z0, pz = n0 * std::cos(theta), s = 0;
    RayPath path;
    path.points.push_back({r, z});
    path.path_s.push_back(0);

    const int max_steps = 4000;
    const double ds_goal = time / 1500;
    for (int step = 0; step < max_steps && s < time; ++step) {
      if (!inside(z)) break;  // truncate rays leaving the domain
      const double dl = ds_goal / n_of(z);
      auto deriv = [&](double zz, double pzz, double& dr, double& dz,
                       double& dpz, double& dss) {
        const double n = n_of(zz);
        dr = pr / n;
        dz = pzz / n;
        dpz = np_of(zz);
        dss = n;
      };
      double k1r, k1z, k1p, k1s, k2r, k2z, k2p, k2s, k3r, k3z, k3p, k3s, k4r,
          k4z, k4p, k4s;
      deriv(z, pz, k1r, k1z, k1p, k1s);
      if (!inside(z + dl / 2 * k1z)) break;
      deriv(z + dl / 2 * k1z, pz + dl / 2 * k1p, k2r, k2z, k2p, k2s);
      if (!inside(z + dl / 2 * k2z)) break;
      deriv(z + dl / 2 * k2z, pz + dl / 2 * k2p, k3r, k3z, k3p, k3s);
      if (!inside(z + dl * k3z)) break;
      deriv(z + dl * k3z, pz + dl * k3p, k4r, k4z, k4p, k4s);
      r += dl / 6 * (k1r + 2 * k2r + 2 * k3r + k4r);
      z += dl / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
      pz += dl / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
      s += dl / 6 * (k1s + 2 * k2s + 2 * k3s + k4s);
      path.points.push_back({r, z});
      path.path_s.push_back(s);
    }

    // fronts: interpolate the s = t_j crossings
    for (int j = 0; j < front_count; ++j) {
      const double target = out.front_times[j];
      for (std::size_t k = 1; k < path.path_s.size(); ++k) {
        if (path.path_s[k - 1] <= target && target <= path.path_s[k]) {
          const double f = (target - path.path_s[k - 1]) /
                           (path.path_s[k] - path.path_s[k - 1]);
          out.fronts[j].push_back(
              {path.points[k - 1][0] +
                   f * (path.points[k][0] - path.points[k - 1][0]),
               path.points[k - 1][1] +
                   f * (path.points[k][1] - path.points[k - 1][1])});
          break;
        }
      }
    }

    // trailing amplitude samples behind the flash
    for (std::size_t k = 0; k < path.points.size(); k += 40) {
      const double rr = std::fabs(path.points[k][0]);
      const double zz = path.points[k][1];
      double b = b_const;
      if (secant_b) {
        b = to_double(secant_dispersion(rr / a_len, (zz - shift) / a_len,
                                        (z0 - shift) / a_len)) /
            a_len;
      }
      out.trail.push_back({path.points[k][0], zz, b});
    }
    out.rays.push_back(std::move(path));
  }
  return out;
}

}  // namespace casim
