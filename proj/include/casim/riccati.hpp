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
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "casim/medium.hpp"
#include "casim/scalar.hpp"

namespace casim {

// The Fourier-space wave equation for one polarization,
//   d/dz (1/nu) d/dz h = (w^2 / nu) h,     w^2 = eps mu kappa^2 + u^2,
// is solved in log-derivative form y = h'/h:
//   y' - (nu'/nu) y + y^2 = w^2.
// h grows or decays like exp(+-w z) and overflows; y stays O(w). The two
// decaying solutions give y+ < 0 (decay towards z_hi) and y- > 0 (decay
// towards z_lo), each integrated in its self-correcting direction.

namespace detail {

template <class Real>
struct GaussTableau {
  std::array<Real, 4> c, b;
  std::array<std::array<Real, 4>, 4> a;
};

// 4-stage Gauss-Legendre collocation (order 8, A-stable), computed at the
// working precision from the closed-form Legendre roots.
template <class Real>
const GaussTableau<Real>& gauss4() {
  thread_local std::map<unsigned, GaussTableau<Real>> cache;
  const unsigned digits = scalar_traits<Real>::digits10();
  auto it = cache.find(digits);
  if (it != cache.end()) return it->second;

  using std::sqrt;
  GaussTableau<Real> t;
  const Real s30 = sqrt(Real(30));
  const Real x_in = sqrt((15 - 2 * s30) / 35);   // inner root pair of P4
  const Real x_out = sqrt((15 + 2 * s30) / 35);  // outer root pair
  t.c = {Real((1 - x_out) / 2), Real((1 - x_in) / 2), Real((1 + x_in) / 2),
         Real((1 + x_out) / 2)};
  const Real w_in = (18 + s30) / 72;   // weights on [0,1]
  const Real w_out = (18 - s30) / 72;
  t.b = {w_out, w_in, w_in, w_out};

  // collocation conditions  sum_j a_ij c_j^{k-1} = c_i^k / k,  k = 1..4
  for (int i = 0; i < 4; ++i) {
    std::array<std::array<Real, 5>, 4> m{};
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < 4; ++j) {
        Real p = 1;
        for (int e = 0; e < k; ++e) p *= t.c[j];
        m[k][j] = p;
      }
      Real rhs = 1;
      for (int e = 0; e <= k; ++e) rhs *= t.c[i];
      m[k][4] = rhs / (k + 1);
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::fabs(to_double(m[r][col])) > std::fabs(to_double(m[piv][col])))
          piv = r;
      std::swap(m[col], m[piv]);
      for (int r = col + 1; r < 4; ++r) {
        const Real f = m[r][col] / m[col][col];
        for (int cc = col; cc <= 4; ++cc) m[r][cc] -= f * m[col][cc];
      }
    }
    std::array<Real, 4> sol;
    for (int r = 3; r >= 0; --r) {
      Real acc = m[r][4];
      for (int cc = r + 1; cc < 4; ++cc) acc -= m[r][cc] * sol[cc];
      sol[r] = acc / m[r][r];
    }
    for (int j = 0; j < 4; ++j) t.a[i][j] = sol[j];
  }
  return cache.emplace(digits, std::move(t)).first->second;
}

// Right-hand side coefficients at one z: y' = w2 + g y - y^2 with g = nu'/nu.
template <class Real>
struct RiccatiCoeffs {
  Real w2, g;
};

template <class Real>
RiccatiCoeffs<Real> riccati_coeffs(const MediumProfile& profile,
                                   Polarization p, const Real& kappa,
                                   const Real& u, const Real& z) {
  const auto pt = profile.eval(z, kappa);
  const auto nu = pt.nu(p);
  return {pt.n.f * pt.n.f * kappa * kappa + u * u, nu.d1 / nu.f};
}

// One implicit step of size h (signed). Returns false if the Newton
// iteration fails; quad_out accumulates the Gauss quadrature of y over the
// step (for the path integral of y).
template <class Real>
bool gauss_step(const MediumProfile& profile, Polarization p,
                const Real& kappa, const Real& u, const Real& z0,
                const Real& h, const Real& y0, Real& y_out, Real& quad_out,
                const Real& newton_tol) {
  const auto& t = gauss4<Real>();
  std::array<RiccatiCoeffs<Real>, 4> cf;
  for (int i = 0; i < 4; ++i)
    cf[i] = riccati_coeffs(profile, p, kappa, u, Real(z0 + t.c[i] * h));

  auto f = [&](int i, const Real& y) { return cf[i].w2 + cf[i].g * y - y * y; };
  auto fy = [&](int i, const Real& y) { return cf[i].g - 2 * y; };

  // predictor: frozen-coefficient values along the Euler path
  const Real f0 = f(0, y0);
  std::array<Real, 4> k;
  for (int i = 0; i < 4; ++i) k[i] = f(i, Real(y0 + t.c[i] * h * f0));

  for (int iter = 0; iter < 40; ++iter) {
    std::array<Real, 4> Y, G;
    std::array<std::array<Real, 5>, 4> m{};
    Real resid = 0;
    for (int i = 0; i < 4; ++i) {
      Y[i] = y0;
      for (int j = 0; j < 4; ++j) Y[i] += h * t.a[i][j] * k[j];
      G[i] = k[i] - f(i, Y[i]);
      using std::fabs;
      resid = std::max(resid, fabs(G[i]), [](const Real& a, const Real& b) {
        return to_double(a) < to_double(b);
      });
    }
    if (to_double(resid) <= to_double(newton_tol)) {
      Real y1 = y0, quad = 0;
      for (int i = 0; i < 4; ++i) {
        y1 += h * t.b[i] * k[i];
        quad += h * t.b[i] * Y[i];
      }
      y_out = y1;
      quad_out = quad;
      return true;
    }
    // Newton: (I - h A diag(f_y)) dk = -G
    for (int i = 0; i < 4; ++i) {
      const Real d = fy(i, Y[i]);
      for (int j = 0; j < 4; ++j)
        m[i][j] = (i == j ? Real(1) : Real(0)) - h * t.a[i][j] * d;
      m[i][4] = -G[i];
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      for (int r = col + 1; r < 4; ++r)
        if (std::fabs(to_double(m[r][col])) > std::fabs(to_double(m[piv][col])))
          piv = r;
      std::swap(m[col], m[piv]);
      if (to_double(m[col][col]) == 0) return false;
      for (int r = col + 1; r < 4; ++r) {
        const Real fac = m[r][col] / m[col][col];
        for (int cc = col; cc <= 4; ++cc) m[r][cc] -= fac * m[col][cc];
      }
    }
    std::array<Real, 4> dk;
    for (int r = 3; r >= 0; --r) {
      Real acc = m[r][4];
      for (int cc = r + 1; cc < 4; ++cc) acc -= m[r][cc] * dk[cc];
      dk[r] = acc / m[r][r];
    }
    for (int i = 0; i < 4; ++i) k[i] += dk[i];
  }
  return false;
}

}  // namespace detail

struct RiccatiOptions {
  double rel_tol = 0;   // 0 = derive from the working precision
  double abs_tol = 0;
  double step_cap = 0.1;  // enforce w |dz| <= step_cap
  long max_steps = 400000;

  double effective_rel_tol(unsigned digits) const {
    if (rel_tol > 0) return rel_tol;
    return std::max(std::pow(10.0, -(static_cast<double>(digits) - 8.0)), 1e-290);
  }
};

// Log-derivative pair on a z-grid: y+ decays towards z_hi (y+ < 0), y-
// towards z_lo (y- > 0). S+- are the path integrals of y+- accumulated from
// the edge each solution was initialized at.
template <class Real>
struct RiccatiPair {
  std::vector<Real> z;
  std::vector<Real> y_plus, y_minus;
  std::vector<Real> S_plus, S_minus;
};

namespace detail {

// WKB data through the first amplitude correction at a domain edge:
// y ~ -+ w - s1' with s1' = (w'/w - nu'/nu)/2.
template <class Real>
void wkb_edge(const MediumProfile& profile, Polarization p, const Real& kappa,
              const Real& u, const Real& z, int sign, Real& y) {
  const auto pt = profile.eval(z, kappa);
  const auto nu = pt.nu(p);
  const auto wj = pt.w_jet(u);
  const Real s1p = (wj.d1 / wj.f - nu.d1 / nu.f) / 2;
  y = Real(sign) * wj.f - s1p;
}

// Integrate one decaying solution from z_from towards the targets (sorted
// along the march direction), capturing y and S at each target exactly.
template <class Real>
void riccati_sweep(const MediumProfile& profile, Polarization p,
                   const Real& kappa, const Real& u, const Real& z_from,
                   const std::vector<Real>& targets, int sign_init,
                   const RiccatiOptions& opt, std::vector<Real>& y_at,
                   std::vector<Real>& S_at) {
  using std::fabs;
  const unsigned digits = scalar_traits<Real>::digits10();
  const double rtol = opt.effective_rel_tol(digits);
  const int dir = sign_init > 0 ? +1 : -1;  // y- marches up, y+ marches down
  auto at_or_past = [dir](const Real& a, const Real& b) {
    return dir > 0 ? a >= b : a <= b;
  };

  Real z = z_from;
  Real y;
  wkb_edge(profile, p, kappa, u, z, sign_init, y);
  Real S = 0;

  y_at.assign(targets.size(), Real(0));
  S_at.assign(targets.size(), Real(0));
  std::size_t next = 0;
  while (next < targets.size() && at_or_past(z, targets[next])) {
    y_at[next] = y;
    S_at[next] = S;
    ++next;
  }
  if (next >= targets.size()) return;

  const double span = profile.domain_hi() - profile.domain_lo();
  const double w_here = to_double(profile.eval(z, kappa).w(u));
  double h_want = std::min(opt.step_cap / std::max(w_here, 1e-12), span / 16);
  long steps = 0;
  while (next < targets.size()) {
    if (++steps > opt.max_steps)
      throw ConvergenceError("riccati: step budget exhausted (stiffness)");
    Real h = Real(dir) * Real(h_want);
    bool clipped = false;
    if (at_or_past(z + h, targets[next])) {
      h = targets[next] - z;
      clipped = true;
    }
    const auto pt = profile.eval(z, kappa);
    const Real w_scale = pt.w(u);
    const Real scale = to_double(w_scale) > std::fabs(to_double(y))
                           ? w_scale
                           : Real(fabs(y));
    const Real tol_step = Real(rtol) * scale + Real(opt.abs_tol);
    const Real newton_tol = tol_step / 100;

    Real y_full = 0, q_full = 0;
    Real y_half = 0, q_half = 0, y_mid = 0, q_mid = 0;
    const bool ok_full = gauss_step(profile, p, kappa, u, z, h, y, y_full,
                                    q_full, newton_tol);
    const Real h2 = h / 2;
    const bool ok_half =
        ok_full &&
        gauss_step(profile, p, kappa, u, z, h2, y, y_mid, q_mid, newton_tol) &&
        gauss_step(profile, p, kappa, u, Real(z + h2), h2, y_mid, y_half,
                   q_half, newton_tol);
    Real err = 0;
    if (ok_half) err = fabs(y_full - y_half) / 255;

    if (ok_half && err <= tol_step) {
      z = clipped ? targets[next] : Real(z + h);
      y = y_half;
      S += q_mid + q_half;
      while (next < targets.size() && at_or_past(z, targets[next])) {
        y_at[next] = y;
        S_at[next] = S;
        ++next;
      }
      if (next >= targets.size()) break;
      double grow = 4.0;
      if (to_double(err) > 0)
        grow = std::min(
            4.0, 0.9 * std::pow(to_double(tol_step) / to_double(err), 1.0 / 9));
      const double w_now = to_double(profile.eval(z, kappa).w(u));
      h_want = std::max(h_want, std::abs(to_double(h))) *
               std::max(0.25, grow);
      h_want = std::min(h_want, opt.step_cap / std::max(w_now, 1e-12));
    } else {
      h_want = std::abs(to_double(h)) * (ok_half ? 0.3 : 0.2);
      if (h_want < 1e-14 * span)
        throw ConvergenceError("riccati: step size underflow (stiffness)");
    }
  }
}

}  // namespace detail

// Solve for both decaying log-derivative solutions on zgrid (ascending).
template <class Real>
RiccatiPair<Real> riccati_solve(const MediumProfile& profile, Polarization p,
                                const Real& kappa, const Real& u,
                                std::vector<Real> zgrid,
                                const RiccatiOptions& opt = {}) {
  if (to_double(kappa) == 0 && to_double(u) == 0)
    throw DomainError("(kappa, u) = (0, 0): no decay scale");
  std::sort(zgrid.begin(), zgrid.end(),
            [](const Real& a, const Real& b) { return to_double(a) < to_double(b); });
  for (const auto& z : zgrid)
    if (to_double(z) < profile.domain_lo() || to_double(z) > profile.domain_hi())
      throw DomainError("riccati: grid point outside profile domain");

  RiccatiPair<Real> out;
  out.z = zgrid;
  // y- marches upward from z_lo
  detail::riccati_sweep(profile, p, kappa, u, Real(profile.domain_lo()), zgrid,
                        +1, opt, out.y_minus, out.S_minus);
  // y+ marches downward from z_hi; targets in descending order
  std::vector<Real> desc(zgrid.rbegin(), zgrid.rend());
  std::vector<Real> yp, sp;
  detail::riccati_sweep(profile, p, kappa, u, Real(profile.domain_hi()), desc,
                        -1, opt, yp, sp);
  out.y_plus.assign(yp.rbegin(), yp.rend());
  out.S_plus.assign(sp.rbegin(), sp.rend());
  return out;
}

}  // namespace casim
