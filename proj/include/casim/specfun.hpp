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
#include <map>
#include <vector>

#include "casim/scalar.hpp"

namespace casim {

namespace detail {

// Spouge coefficients for a given target precision. The alternating sum loses
// about 0.44*a digits, so the table carries its own working precision.
template <class Real>
struct SpougeTable {
  unsigned a = 0;
  unsigned work_digits = 0;
  std::vector<Real> c;  // c[0] = sqrt(2 pi), c[k] for k = 1..a-1
};

template <class Real>
const SpougeTable<Real>& spouge_table() {
  thread_local std::map<unsigned, SpougeTable<Real>> cache;
  const unsigned digits = scalar_traits<Real>::digits10();
  auto it = cache.find(digits);
  if (it != cache.end()) return it->second;

  SpougeTable<Real> t;
  t.a = static_cast<unsigned>(std::ceil(1.2528 * (digits + 10))) + 2;
  t.work_digits = static_cast<unsigned>(std::ceil(1.7 * digits)) + 25;
  {
    PrecisionScope scope(scalar_traits<Real>::is_big ? t.work_digits : digits);
    using std::exp;
    using std::pow;
    using std::sqrt;
    t.c.resize(t.a);
    const Real two_pi = 2 * pi_value<Real>();
    t.c[0] = sqrt(two_pi);
    Real factorial = 1;  // (k-1)!
    for (unsigned k = 1; k < t.a; ++k) {
      if (k > 1) factorial *= Real(k - 1);
      const Real ak = Real(t.a - k);
      Real ck = pow(ak, Real(k) - Real(1) / 2) * exp(ak) / factorial;
      if (k % 2 == 0) ck = -ck;
      t.c[k] = ck;
    }
  }
  return cache.emplace(digits, std::move(t)).first->second;
}

}  // namespace detail

// Real gamma at working precision (backend-native implementations).
inline double real_gamma(double x) { return std::tgamma(x); }
inline BigFloat real_gamma(const BigFloat& x) {
  return boost::multiprecision::tgamma(extended(x));
}

// Gamma for complex argument by the Spouge approximation at the current
// working precision; reflection handles Re z < 1/2.
template <class Real>
Complex<Real> gamma_complex(Complex<Real> z) {
  const auto& table = detail::spouge_table<Real>();
  PrecisionScope scope(scalar_traits<Real>::is_big ? table.work_digits
                                                   : scalar_traits<Real>::digits10());
  scalar_traits<Real>::extend(z.re);
  scalar_traits<Real>::extend(z.im);

  const Real pi = pi_value<Real>();
  if (to_double(z.re) < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const Complex<Real> sin_piz{sin(pi * z.re) * cosh(pi * z.im),
                                cos(pi * z.re) * sinh(pi * z.im)};
    const Complex<Real> one_minus{Real(1) - z.re, -z.im};
    return Complex<Real>{pi} / (sin_piz * gamma_complex(one_minus));
  }

  Complex<Real> sum{table.c[0]};
  for (unsigned k = 1; k < table.a; ++k) {
    Complex<Real> term = Complex<Real>{table.c[k]} /
                         Complex<Real>{z.re - 1 + Real(k), z.im};
    sum += term;
  }
  const Complex<Real> base{z.re - 1 + Real(table.a), z.im};
  const Complex<Real> expo{z.re - Real(1) / 2, z.im};
  return pow(base, expo) * exp(-base) * sum;
}

// The alternating Spouge sum needs guard digits the double backend cannot
// supply; delegate through the big-float backend.
inline Complex<double> gamma_complex(const Complex<double>& z) {
  PrecisionScope scope(25);
  const auto g = gamma_complex(Complex<BigFloat>{BigFloat(z.re), BigFloat(z.im)});
  return {to_double(g.re), to_double(g.im)};
}

// Gauss hypergeometric series F(-nu, nu+1; 1+kappa; zeta) for the Legendre
// functions on the cut, in the real parameterization nu(nu+1) = -u^2 where
// every term of the series is positive:
//   term ratio  c_{m+1}/c_m = zeta (m(m+1)+u^2) / ((m+1)(m+1+kappa)).
// Returns F and dF/dzeta. Truncation is certified by a geometric tail bound
// once the ratio has dropped below its limit zeta < 1.
template <class Real>
void hyp2f1_legendre(const Real& u2, const Real& kappa, const Real& zeta,
                     Real& F, Real& dF) {
  if (!(to_double(zeta) >= 0) || to_double(zeta) >= 1)
    throw DomainError("hypergeometric argument outside [0,1)");
  const double digits = scalar_traits<Real>::digits10();
  const double log_tol = -(digits + 5);
  F = 1;
  dF = 0;
  if (to_double(zeta) == 0) return;
  Real term = 1;  // c_m zeta^m
  // ratio < zeta holds for m > u^2/(1+kappa)
  const double m_geo = to_double(u2) / (1.0 + to_double(kappa));
  const double zd = to_double(zeta);
  const double tail_factor = zd / (1.0 - zd);
  const long max_terms =
      200000 + 4 * static_cast<long>(m_geo + digits / (1e-12 - std::log10(zd) + 1e-12));
  for (long m = 0;; ++m) {
    const Real mm(static_cast<double>(m));
    term *= zeta * (mm * (mm + 1) + u2) / ((mm + 1) * (mm + 1 + kappa));
    F += term;
    dF += Real(static_cast<double>(m + 1)) * term;  // accumulates m c_m zeta^{m}
    if (m > m_geo &&
        magnitude_log10(term) + std::log10(tail_factor + 1e-300) <
            magnitude_log10(F) + log_tol)
      break;
    if (m > max_terms)
      throw ConvergenceError("hypergeometric series did not converge");
  }
  dF /= zeta;  // sum m c_m zeta^{m-1}
}

// General complex-degree version of the same series (coefficients
// m(m+1) - nu(nu+1) are genuinely complex away from the conjugate-symmetric
// family). Used by the public Legendre evaluation; the real fast path above
// serves the spectral pipeline.
template <class Real>
void hyp2f1_legendre_complex(const Complex<Real>& degree, const Real& kappa,
                             const Real& zeta, Complex<Real>& F,
                             Complex<Real>& dF) {
  if (!(to_double(zeta) >= 0) || to_double(zeta) >= 1)
    throw DomainError("hypergeometric argument outside [0,1)");
  const double digits = scalar_traits<Real>::digits10();
  const double log_tol = -(digits + 5);
  const Complex<Real> nu_nu1 = degree * (degree + Complex<Real>{Real(1)});
  F = Complex<Real>{Real(1)};
  dF = Complex<Real>{};
  if (to_double(zeta) == 0) return;
  Complex<Real> term{Real(1)};
  const double m_geo = to_double(abs(nu_nu1)) / (1.0 + to_double(kappa));
  const double zd = to_double(zeta);
  const double tail_factor = zd / (1.0 - zd);
  const long max_terms =
      200000 + 4 * static_cast<long>(m_geo + digits / (1e-12 - std::log10(zd) + 1e-12));
  for (long m = 0;; ++m) {
    const Real mm(static_cast<double>(m));
    const Complex<Real> coeff =
        (Complex<Real>{mm * (mm + 1)} - nu_nu1) / Real((m + 1) * 1.0);
    term = term * coeff * (zeta / (mm + 1 + kappa));
    F += term;
    dF += Real(static_cast<double>(m + 1)) * term;
    if (m > m_geo &&
        magnitude_log10(abs(term)) + std::log10(tail_factor + 1e-300) <
            magnitude_log10(abs(F)) + log_tol)
      break;
    if (m > max_terms)
      throw ConvergenceError("hypergeometric series did not converge");
  }
  dF = dF / Complex<Real>{zeta};
}

}  // namespace casim
