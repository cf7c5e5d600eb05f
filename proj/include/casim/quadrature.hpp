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
#include <utility>
#include <vector>

#include "casim/scalar.hpp"

namespace casim {

template <class Real>
struct QuadResult {
  Real value{};
  Real error{};
  long evals = 0;
  bool converged = false;
};

namespace detail {

// tanh-sinh (double-exponential) abscissae on (-1, 1), stored one-sided with
// the complement 1-x kept explicitly so endpoint clustering survives rounding.
template <class Real>
struct DENode {
  Real x;       // abscissa in [0, 1)
  Real comp;    // 1 - x, computed without cancellation
  Real weight;  // dx/dt at this node
};

template <class Real>
struct DETable {
  // levels[0]: nodes at t = k (k = 0, 1, ...); levels[l>0]: odd multiples of
  // 2^-l. Halving the mesh only adds nodes, so refinement reuses every value.
  std::vector<std::vector<DENode<Real>>> levels;
};

template <class Real>
const DETable<Real>& de_table(int max_level) {
  thread_local std::map<std::pair<unsigned, int>, DETable<Real>> cache;
  const unsigned digits = scalar_traits<Real>::digits10();
  auto key = std::make_pair(digits, max_level);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  using std::cosh;
  using std::exp;
  using std::sinh;
  DETable<Real> t;
  const Real sigma = pi_value<Real>() / 2;
  // cutoff where the weight drops below the target precision
  const double t_max =
      std::asinh(std::log(10.0) * (digits + 8) / 2 / (to_double(sigma)));
  t.levels.resize(max_level + 1);
  for (int level = 0; level <= max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    for (long k = level == 0 ? 0 : 1;; k += level == 0 ? 1 : 2) {
      const double td = k * h;
      if (td > t_max) break;
      const Real tt = Real(td);
      const Real s = sigma * sinh(tt);
      // 1 - tanh(s) = 2 e^{-2s} / (1 + e^{-2s})
      const Real em = exp(-2 * s);
      DENode<Real> node;
      node.comp = 2 * em / (1 + em);
      node.x = 1 - node.comp;
      const Real sech = 2 * exp(-s) / (1 + em);
      node.weight = sigma * cosh(tt) * sech * sech;
      t.levels[level].push_back(std::move(node));
    }
  }
  return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace detail

// Adaptive tanh-sinh integration of f over [a, b]. Converges exponentially
// for analytic integrands, including integrable endpoint singularities.
template <class Real, class F>
QuadResult<Real> tanh_sinh_panel(F&& f, const Real& a, const Real& b,
                                 double rel_tol, const Real& abs_tol,
                                 int max_level = 9, int min_level = 3) {
  const auto& table = detail::de_table<Real>(max_level);
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;

  QuadResult<Real> out;
  Real sum = 0;  // sum of w_i f(x_i), mesh h implied
  Real prev = 0;
  double h = 1.0;
  for (int level = 0; level <= max_level; ++level, h /= 2) {
    for (const auto& node : table.levels[level]) {
      if (to_double(node.x) == 0) {
        sum += node.weight * f(mid);
        ++out.evals;
      } else {
        // evaluate symmetrically, placing points by endpoint distance
        const Real dx = half * node.comp;
        sum += node.weight * (f(Real(a + dx)) + f(Real(b - dx)));
        out.evals += 2;
      }
    }
    const Real integral = sum * Real(h) * half;
    if (level > 0) {
      const Real diff = integral - prev;
      using std::fabs;
      out.error = fabs(diff);
      out.value = integral;
      const Real goal =
          std::max(Real(fabs(integral)) * Real(rel_tol), abs_tol,
                   [](const Real& p, const Real& q) {
                     return to_double(p) < to_double(q);
                   });
      if (level >= min_level && to_double(out.error) <= to_double(goal)) {
        out.converged = true;
        return out;
      }
    }
    prev = integral;
  }
  out.value = prev;
  return out;
}

// Dyadic panels [0, base], [base, 2 base], ..., [span/2, span].
inline std::vector<std::pair<double, double>> dyadic_panels(double base,
                                                            double span) {
  std::vector<std::pair<double, double>> panels;
  panels.emplace_back(0.0, base);
  for (double lo = base; lo < span * 0.999999; lo *= 2)
    panels.emplace_back(lo, 2 * lo);
  return panels;
}

// Fixed-order Gauss-Legendre rule (used by code paths that must stay
// independent of the tanh-sinh machinery).
template <class Real>
const std::vector<std::pair<Real, Real>>& gauss_legendre_32() {
  thread_local std::map<unsigned, std::vector<std::pair<Real, Real>>> cache;
  const unsigned digits = scalar_traits<Real>::digits10();
  auto it = cache.find(digits);
  if (it != cache.end()) return it->second;
  using std::cos;
  const int n = 32;
  std::vector<std::pair<Real, Real>> nw;
  const Real pi = pi_value<Real>();
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev initial guess
    Real x = cos(pi * (Real(i) + Real(3) / 4) / (Real(n) + Real(1) / 2));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = Real(n) * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::fabs(to_double(dx)) < 1e-3 * std::pow(10.0, -(double)digits))
        break;
    }
    nw.emplace_back(x, Real(2) / ((1 - x * x) * dp * dp));
  }
  return cache.emplace(digits, std::move(nw)).first->second;
}

template <class Real, class F>
Real gauss_legendre_panel(F&& f, const Real& a, const Real& b) {
  const auto& nw = gauss_legendre_32<Real>();
  const Real half = (b - a) / 2, mid = (a + b) / 2;
  Real acc = 0;
  for (const auto& [x, w] : nw) acc += w * f(Real(mid + half * x));
  return acc * half;
}

}  // namespace casim
