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

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace casim {

// Arbitrary-precision real with runtime-selectable decimal precision.
// Expression templates are off so the type composes with generic code.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// Thrown when a requested precision/accuracy cannot be reached.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on invalid domain inputs (z outside profile domain, bad arguments).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown when an iteration fails to converge within its budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Real>
struct scalar_traits {
  static constexpr bool is_big = false;
  static unsigned digits10() { return std::numeric_limits<Real>::digits10; }
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  // Raise the precision of x to the current working precision (no-op here).
  static void extend(Real&) {}
};

template <>
struct scalar_traits<BigFloat> {
  static constexpr bool is_big = true;
  static unsigned digits10() { return BigFloat::default_precision(); }
  static BigFloat epsilon() {
    // ulp scale for the current working precision
    BigFloat e = 1;
    mpfr_div_2exp(e.backend().data(), e.backend().data(),
                  static_cast<unsigned long>(BigFloat::default_precision() * 3.3219281),
                  MPFR_RNDN);
    return e;
  }
  // Value-preserving precision extension: operands of lower precision would
  // otherwise cap the precision of every expression they enter.
  static void extend(BigFloat& x) {
    if (x.precision() < BigFloat::default_precision())
      x.precision(BigFloat::default_precision());
  }
};

// RAII working-precision switch for the big-float backend.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits)
      : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits);
  }
  ~PrecisionScope() { BigFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <class Real>
Real extended(Real x) {
  scalar_traits<Real>::extend(x);
  return x;
}

template <class Real>
Real pi_value() {
  using std::atan;
  return 4 * atan(Real(1));
}

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }

// Decimal string with the full working precision (CSV/manifest output).
inline std::string to_full_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}
inline std::string to_full_string(const BigFloat& x) {
  return x.str(0, std::ios_base::scientific);
}

// log10(|x|), -inf-safe; used for cancellation bookkeeping.
template <class Real>
double magnitude_log10(const Real& x) {
  using std::fabs;
  double d = std::fabs(to_double(x));
  if (d > 0 && std::isfinite(d)) return std::log10(d);
  if (d == 0) {
    // value may underflow double while being perfectly representable
    if constexpr (scalar_traits<Real>::is_big) {
      if (!x.is_zero()) {
        mpfr_exp_t e = mpfr_get_exp(x.backend().data());
        return static_cast<double>(e) * 0.30102999566398120;
      }
    }
    return -std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

// Minimal complex value over a generic real scalar. std::complex is pinned to
// builtin floating point, so the big-float gamma needs its own.
template <class Real>
struct Complex {
  Real re{}, im{};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator*(const Real& s, const Complex& a) {
    return {s * a.re, s * a.im};
  }
  friend Complex operator/(const Complex& a, const Real& s) {
    return {a.re / s, a.im / s};
  }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

template <class Real>
Complex<Real> conj(const Complex<Real>& z) {
  return {z.re, -z.im};
}

template <class Real>
Real abs(const Complex<Real>& z) {
  using std::hypot;
  using std::sqrt;
  return sqrt(z.re * z.re + z.im * z.im);
}

template <class Real>
Complex<Real> exp(const Complex<Real>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

template <class Real>
Complex<Real> log(const Complex<Real>& z) {
  using std::atan2;
  using std::log;
  return {log(abs(z)), atan2(z.im, z.re)};
}

template <class Real>
Complex<Real> pow(const Complex<Real>& base, const Complex<Real>& e) {
  return exp(e * log(base));
}

}  // namespace casim
