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

#include <algorithm>
#include <cmath>

#include "casim/medium.hpp"
#include "casim/scalar.hpp"
#include "casim/specfun.hpp"

namespace casim {

// Exact closed forms for the constant-negative-curvature profile n = sec z
// on (-pi/2, pi/2): Legendre-function Green function, Poincare-disk
// geodesics, transport amplitude and geometric dispersion. Everything here
// is the oracle the numerical pipeline is validated against.

// ---------------------------------------------------------------------------
// Legendre machinery

template <class Real>
struct LegendreParams {
  Complex<Real> degree;  // nu(u) = (-1 + sqrt(1-4u^2))/2, complex for u > 1/2
  Real order;            // -kappa <= 0
  // K = -Gamma(kappa-nu) Gamma(kappa+nu+1) / 2, real. The constant is pinned
  // by the Wronskian W{P(x), P(-x)} = -2/(Gamma(kappa-nu) Gamma(kappa+nu+1))
  // /(1-x^2), equivalently by the unit delta jump of the Green function.
  Real prefactor;
};

template <class Real>
LegendreParams<Real> legendre_params(const Real& kappa, const Real& u) {
  using std::sqrt;
  LegendreParams<Real> p;
  p.order = -kappa;
  const Real disc = 1 - 4 * u * u;
  if (to_double(disc) >= 0) {
    p.degree = Complex<Real>{(-1 + sqrt(disc)) / 2};
    const Real g1 = real_gamma(kappa - p.degree.re);
    const Real g2 = real_gamma(kappa + p.degree.re + 1);
    p.prefactor = -g1 * g2 / 2;
  } else {
    p.degree = Complex<Real>{Real(-1) / 2, sqrt(-disc) / 2};
    // kappa+nu+1 is the conjugate of kappa-nu, so K = -|Gamma(kappa-nu)|^2/2
    const Complex<Real> g = gamma_complex(Complex<Real>{
        kappa - p.degree.re, -p.degree.im});
    p.prefactor = -(g.re * g.re + g.im * g.im) / 2;
  }
  return p;
}

// Legendre function on the cut, P_degree^{order}(x) for |x| < 1, order <= 0:
//   P = (1/Gamma(1+kappa)) ((1-x)/(1+x))^{kappa/2} F(-nu, nu+1; 1+kappa; (1-x)/2)
// with kappa = -order. Real output for the conjugate-symmetric degree family.
template <class Real>
Complex<Real> legendre_P_cut(const Complex<Real>& degree, const Real& order,
                             const Real& x) {
  using std::exp;
  using std::log1p;
  if (!(to_double(order) <= 0)) throw DomainError("legendre order must be <= 0");
  if (!(std::fabs(to_double(x)) < 1)) throw DomainError("legendre |x| must be < 1");
  const Real kappa = -order;
  const Real zeta = (1 - x) / 2;
  Complex<Real> F, dF;
  hyp2f1_legendre_complex(degree, kappa, zeta, F, dF);
  const Real pref =
      exp((kappa / 2) * (log1p(-x) - log1p(x))) / real_gamma(1 + kappa);
  return pref * F;
}

// Real fast path for the physical family nu(nu+1) = -u^2. Returns P and dP/dx.
template <class Real>
struct LegendreValue {
  Real P, dPdx;
};

template <class Real>
LegendreValue<Real> legendre_P_physical(const Real& u2, const Real& kappa,
                                        const Real& x) {
  using std::exp;
  using std::log1p;
  const Real zeta = (1 - x) / 2;
  Real F, dF;
  hyp2f1_legendre(u2, kappa, zeta, F, dF);
  const Real pref =
      exp((kappa / 2) * (log1p(-x) - log1p(x))) / real_gamma(1 + kappa);
  LegendreValue<Real> out;
  out.P = pref * F;
  // d/dx of the prefactor contributes -kappa/(1-x^2); the series -dF/2
  out.dPdx = out.P * (-kappa / (1 - x * x)) - pref * dF / 2;
  return out;
}

// ---------------------------------------------------------------------------
// Green function of the unit secant profile (n = sec z, z in (-pi/2, pi/2))

template <class Real>
void check_secant_args(const Real& z, const Real& z0) {
  const double halfpi = 1.5707963267948966;
  if (std::fabs(to_double(z)) >= halfpi || std::fabs(to_double(z0)) >= halfpi)
    throw DomainError("secant oracle requires z, z0 in (-pi/2, pi/2)");
}

template <class Real>
Real secant_green(const Real& kappa, const Real& u, const Real& z,
                  const Real& z0) {
  using std::sin;
  check_secant_args(z, z0);
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0) has no decaying solutions");
  const Real& zg = z < z0 ? z0 : z;
  const Real& zl = z < z0 ? z : z0;
  const auto params = legendre_params(kappa, u);
  const Real u2 = u * u;
  const auto hp = legendre_P_physical(u2, kappa, sin(zg));
  const auto hm = legendre_P_physical(u2, kappa, Real(-sin(zl)));
  return params.prefactor * hp.P * hm.P;
}

// Green function with first and mixed derivatives; the mixed derivative is
// taken on the stated branch (z > z0 unless swapped).
template <class Real>
struct SecantGreenSample {
  Real g, dz, dz0, dzdz0;
};

template <class Real>
SecantGreenSample<Real> secant_green_sample(const Real& kappa, const Real& u,
                                            const Real& z, const Real& z0) {
  using std::cos;
  using std::sin;
  check_secant_args(z, z0);
  const bool swapped = z < z0;
  const Real& zg = swapped ? z0 : z;
  const Real& zl = swapped ? z : z0;
  const auto params = legendre_params(kappa, u);
  const Real u2 = u * u;
  const auto hp = legendre_P_physical(u2, kappa, sin(zg));
  const auto hm = legendre_P_physical(u2, kappa, Real(-sin(zl)));
  const Real dhp = cos(zg) * hp.dPdx;   // d/dz P(sin z) at zg
  const Real dhm = -cos(zl) * hm.dPdx;  // d/dz P(-sin z) at zl
  SecantGreenSample<Real> s;
  s.g = params.prefactor * hp.P * hm.P;
  const Real d_upper = params.prefactor * dhp * hm.P;
  const Real d_lower = params.prefactor * hp.P * dhm;
  s.dz = swapped ? d_lower : d_upper;
  s.dz0 = swapped ? d_upper : d_lower;
  s.dzdz0 = params.prefactor * dhp * dhm;
  return s;
}

// Logarithmic derivatives of the decaying solutions, h+ = P(sin z) decaying
// at +pi/2 and h- = P(-sin z) decaying at -pi/2; no Gamma factors involved.
template <class Real>
struct SecantLogDerivs {
  Real y_plus, y_minus;
};

template <class Real>
SecantLogDerivs<Real> secant_log_derivatives(const Real& kappa, const Real& u,
                                             const Real& z) {
  using std::cos;
  using std::sin;
  check_secant_args(z, z);
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0) has no decaying solutions");
  const Real u2 = u * u;
  const Real x = sin(z);
  const Real c = cos(z);
  Real Fp, dFp, Fm, dFm;
  hyp2f1_legendre(u2, kappa, (1 - x) / 2, Fp, dFp);
  hyp2f1_legendre(u2, kappa, (1 + x) / 2, Fm, dFm);
  SecantLogDerivs<Real> out;
  out.y_plus = -kappa / c - c * dFp / (2 * Fp);
  out.y_minus = kappa / c + c * dFm / (2 * Fm);
  return out;
}

// Spectral stress density of the unit secant profile (both polarizations;
// eps = mu makes them equal): W = 2 (w^2 - y+ y-) / (y+ - y-).
template <class Real>
Real secant_density_unit(const Real& kappa, const Real& u, const Real& z) {
  using std::cos;
  const auto y = secant_log_derivatives(kappa, u, z);
  const Real sec = 1 / cos(z);
  const Real w2 = u * u + kappa * kappa * sec * sec;
  return 2 * (w2 - y.y_plus * y.y_minus) / (y.y_plus - y.y_minus);
}

// ---------------------------------------------------------------------------
// Rescaling onto a general secant profile n = A sec((z-z1)/a) with the
// kappa-dependent length scale a(kappa) of the dispersive model. The unit
// closed forms apply per kappa with (kappa~, u~) = (A a kappa, a u).

template <class Real>
struct SecantMap {
  Real a_eff;         // effective length scale at this kappa
  Real kappa_scaled;  // A a kappa
  Real u_scaled;      // a u
  Real zeta0;         // profile center offset (z1)
};

template <class Real>
SecantMap<Real> secant_map(const MediumProfile& profile, const Real& kappa,
                           const Real& u) {
  using std::sqrt;
  if (!profile.has_secant_closed_form())
    throw DomainError("profile has no secant closed form");
  const auto& s = profile.spec();
  SecantMap<Real> m;
  m.a_eff = Real(s.scale);
  if (s.dispersion.kind == DispersionKind::secant_scale) {
    const Real r = kappa / Real(s.dispersion.kappa0);
    m.a_eff = m.a_eff * sqrt(1 + r * r);
  }
  m.kappa_scaled = Real(s.amplitude) * m.a_eff * kappa;
  m.u_scaled = m.a_eff * u;
  m.zeta0 = Real(s.shift);
  return m;
}

// Spectral density of a (possibly dispersive) secant profile by the exact
// Legendre route; the workhorse of the high-precision stress pipeline.
template <class Real>
Real secant_spectral_density(const MediumProfile& profile, const Real& kappa,
                             const Real& u, const Real& z) {
  const auto m = secant_map(profile, kappa, u);
  const Real zeta = (z - m.zeta0) / m.a_eff;
  return secant_density_unit(m.kappa_scaled, m.u_scaled, zeta) / m.a_eff;
}

// Green-function sample of a general secant profile (physical coordinates).
template <class Real>
SecantGreenSample<Real> secant_profile_green_sample(const MediumProfile& profile,
                                                    const Real& kappa,
                                                    const Real& u, const Real& z,
                                                    const Real& z0) {
  const auto m = secant_map(profile, kappa, u);
  const Real A(profile.spec().amplitude);
  auto s = secant_green_sample(m.kappa_scaled, m.u_scaled,
                               Real((z - m.zeta0) / m.a_eff),
                               Real((z0 - m.zeta0) / m.a_eff));
  // g_physical = A a g_unit; each z-derivative trades one factor of a
  s.g = s.g * A * m.a_eff;
  s.dz = s.dz * A;
  s.dz0 = s.dz0 * A;
  s.dzdz0 = s.dzdz0 * A / m.a_eff;
  return s;
}

// ---------------------------------------------------------------------------
// Poincare-disk geometry of the secant profile

template <class Real>
struct PoincareCoords {
  Real xi, eta;        // disk coordinates
  Real c_plus, c_minus;
  Real sigma;          // disk radius c-/c+
  Real disk_index() const { return 2 / (1 - sigma * sigma); }
};

template <class Real>
PoincareCoords<Real> secant_poincare(const Real& r, const Real& z,
                                     const Real& z0) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  check_secant_args(z, z0);
  PoincareCoords<Real> p;
  const Real denom = cosh(r) + cos(z + z0);
  p.xi = (sin(z) - cosh(r) * sin(z0)) / denom;
  // cos(z0), not cos(z): only then xi^2 + eta^2 = (c-/c+)^2 holds identically
  p.eta = (sinh(r) * cos(z0)) / denom;
  // cancellation-free half-angle forms of cosh r -+ cos(...)
  const Real sh = sinh(r / 2), ssum = cos((z + z0) / 2), sdif = sin((z - z0) / 2);
  p.c_plus = sqrt(2 * (sh * sh + ssum * ssum));
  p.c_minus = sqrt(2 * (sh * sh + sdif * sdif));
  p.sigma = p.c_minus / p.c_plus;
  return p;
}

// Geodesic (optical) length from the emission point (r=0, z0) to (r, z).
template <class Real>
Real secant_geodesic(const Real& r, const Real& z, const Real& z0) {
  using std::atanh;
  if (to_double(r) < 0) throw DomainError("radius must be nonnegative");
  const auto p = secant_poincare(r, z, z0);
  return 2 * atanh(p.sigma);
}

namespace detail {

// sqrt(sinh r / r), exact limit 1 at r = 0
template <class Real>
Real sqrt_sinh_ratio(const Real& r) {
  using std::sinh;
  using std::sqrt;
  if (to_double(r) == 0) return Real(1);
  return sqrt(sinh(r) / r);
}

// (r coth r - 1) / r^2, exact limit 1/3 at r = 0. Small r is evaluated with
// enough extra precision to absorb the cancellation.
inline double r_coth_r_minus1_over_r2(double r) {
  if (r == 0) return 1.0 / 3.0;
  if (std::fabs(r) < 0.2) {
    const double r2 = r * r;
    return 1.0 / 3.0 + r2 * (-1.0 / 45.0 + r2 * (2.0 / 945.0 - r2 / 4725.0));
  }
  const double E = std::expm1(2 * r);
  return (E * (r - 1) + 2 * r) / (E * r * r);
}

inline BigFloat r_coth_r_minus1_over_r2(const BigFloat& r) {
  if (r.is_zero()) return BigFloat(1) / 3;
  const double rd = std::fabs(to_double(r));
  unsigned boost_digits = 0;
  if (rd < 0.1) boost_digits = static_cast<unsigned>(2 * -std::log10(rd)) + 12;
  PrecisionScope scope(BigFloat::default_precision() + boost_digits);
  BigFloat rr = extended(r);
  const BigFloat E = boost::multiprecision::expm1(2 * rr);
  return (E * (rr - 1) + 2 * rr) / (E * rr * rr);
}

}  // namespace detail

// Transport amplitude of the outgoing wave in the secant profile.
template <class Real>
Real secant_amplitude(const Real& r, const Real& z, const Real& z0) {
  using std::cos;
  if (to_double(r) == 0 && to_double(z) == to_double(z0))
    throw DomainError("amplitude diverges at the emission point");
  const auto p = secant_poincare(r, z, z0);
  return -cos(z) * cos(z0) / (4 * pi_value<Real>() * p.c_plus * p.c_minus) *
         detail::sqrt_sinh_ratio(r);
}

// The phase correction beta of geometric dispersion (closed form used by the
// gradient identity test).
template <class Real>
Real secant_beta(const Real& r, const Real& z, const Real& z0) {
  using std::sinh;
  const auto p = secant_poincare(r, z, z0);
  const Real q = detail::r_coth_r_minus1_over_r2(r);  // (r coth r - 1)/r^2
  // (r^2 + r coth r - 1) / (8 r sinh r) = r (1 + q) / (8 sinh r)
  if (to_double(r) == 0) return p.c_plus * p.c_minus * (1 + q) / 8;
  return p.c_plus * p.c_minus * r * (1 + q) / (8 * sinh(r));
}

// Geometric-dispersion amplitude b(r; z, z0), finite everywhere and
// exponentially localized around the z-axis.
template <class Real>
Real secant_dispersion(const Real& r, const Real& z, const Real& z0) {
  using std::cos;
  if (to_double(r) < 0) throw DomainError("radius must be nonnegative");
  check_secant_args(z, z0);
  const Real n0_inv = cos(z0), n_inv = cos(z);  // 1/sec
  const Real q = detail::r_coth_r_minus1_over_r2(r);
  Real ratio;  // sqrt(r / sinh r)
  if (to_double(r) == 0) {
    ratio = 1;
  } else {
    ratio = 1 / detail::sqrt_sinh_ratio(r);
  }
  return -n0_inv * n_inv * ratio * (1 + q) / (32 * pi_value<Real>());
}

}  // namespace casim
