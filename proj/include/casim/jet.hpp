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
#include <utility>

#include "casim/scalar.hpp"

namespace casim {

// Value and derivatives up to third order of a scalar function of z.
// Profiles are defined once as jet expressions, which keeps every closed-form
// derivative in the library consistent by construction.
template <class Real>
struct Jet {
  Real f{}, d1{}, d2{}, d3{};

  Jet() = default;
  explicit Jet(Real value) : f(std::move(value)) {}
  Jet(Real value, Real first, Real second = Real(0), Real third = Real(0))
      : f(std::move(value)), d1(std::move(first)), d2(std::move(second)),
        d3(std::move(third)) {}

  // Independent variable: f = z, f' = slope.
  static Jet variable(Real z, Real slope = Real(1)) {
    return Jet(std::move(z), std::move(slope));
  }
  static Jet constant(Real c) { return Jet(std::move(c)); }

  friend Jet operator+(const Jet& a, const Jet& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
  }
  friend Jet operator-(const Jet& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    // Leibniz through third order
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.f * b.d3};
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    // q = a/b from a = q b, solved order by order
    Jet q;
    q.f = a.f / b.f;
    q.d1 = (a.d1 - q.f * b.d1) / b.f;
    q.d2 = (a.d2 - q.f * b.d2 - 2 * q.d1 * b.d1) / b.f;
    q.d3 = (a.d3 - q.f * b.d3 - 3 * q.d1 * b.d2 - 3 * q.d2 * b.d1) / b.f;
    return q;
  }
  friend Jet operator+(const Jet& a, const Real& c) {
    return {a.f + c, a.d1, a.d2, a.d3};
  }
  friend Jet operator+(const Real& c, const Jet& a) { return a + c; }
  friend Jet operator-(const Jet& a, const Real& c) {
    return {a.f - c, a.d1, a.d2, a.d3};
  }
  friend Jet operator-(const Real& c, const Jet& a) {
    return {c - a.f, -a.d1, -a.d2, -a.d3};
  }
  friend Jet operator*(const Jet& a, const Real& c) {
    return {a.f * c, a.d1 * c, a.d2 * c, a.d3 * c};
  }
  friend Jet operator*(const Real& c, const Jet& a) { return a * c; }
  friend Jet operator/(const Jet& a, const Real& c) {
    return {a.f / c, a.d1 / c, a.d2 / c, a.d3 / c};
  }
  friend Jet operator/(const Real& c, const Jet& a) {
    return Jet::constant(c) / a;
  }
};

// f(g) with f given by its derivatives at g.f (Faa di Bruno through order 3).
template <class Real>
Jet<Real> compose(const Real& f0, const Real& f1, const Real& f2,
                  const Real& f3, const Jet<Real>& g) {
  Jet<Real> r;
  r.f = f0;
  r.d1 = f1 * g.d1;
  r.d2 = f2 * g.d1 * g.d1 + f1 * g.d2;
  r.d3 = f3 * g.d1 * g.d1 * g.d1 + 3 * f2 * g.d1 * g.d2 + f1 * g.d3;
  return r;
}

template <class Real>
Jet<Real> exp(const Jet<Real>& g) {
  using std::exp;
  Real e = exp(g.f);
  return compose(e, e, e, e, g);
}

template <class Real>
Jet<Real> log(const Jet<Real>& g) {
  using std::log;
  Real i1 = Real(1) / g.f;
  Real i2 = -i1 * i1;
  Real i3 = 2 * i1 * i1 * i1;
  return compose(log(g.f), i1, i2, i3, g);
}

template <class Real>
Jet<Real> sqrt(const Jet<Real>& g) {
  using std::sqrt;
  Real s = sqrt(g.f);
  Real f1 = Real(1) / (2 * s);
  Real f2 = -f1 / (2 * g.f);
  Real f3 = 3 * f1 / (4 * g.f * g.f);
  return compose(s, f1, f2, f3, g);
}

template <class Real>
Jet<Real> sin(const Jet<Real>& g) {
  using std::cos;
  using std::sin;
  Real s = sin(g.f), c = cos(g.f);
  return compose(s, c, -s, -c, g);
}

template <class Real>
Jet<Real> cos(const Jet<Real>& g) {
  using std::cos;
  using std::sin;
  Real s = sin(g.f), c = cos(g.f);
  return compose(c, -s, -c, s, g);
}

template <class Real>
Jet<Real> cosh(const Jet<Real>& g) {
  using std::cosh;
  using std::sinh;
  Real s = sinh(g.f), c = cosh(g.f);
  return compose(c, s, c, s, g);
}

template <class Real>
Jet<Real> sinh(const Jet<Real>& g) {
  using std::cosh;
  using std::sinh;
  Real s = sinh(g.f), c = cosh(g.f);
  return compose(s, c, s, c, g);
}

template <class Real>
Jet<Real> tanh(const Jet<Real>& g) {
  return sinh(g) / cosh(g);
}

}  // namespace casim
