#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "casim/scalar.hpp"

namespace testutil {

template <class Real>
double rel_diff(const Real& a, const Real& b) {
  const double da = casim::to_double(a), db = casim::to_double(b);
  const double scale = std::max(std::fabs(da), std::fabs(db));
  if (scale == 0) return 0;
  return std::fabs(casim::to_double(Real(a - b))) / scale;
}

// 6th-order central first derivative of f at x with step h
template <class F, class Real>
Real fd6(F&& f, const Real& x, const Real& h) {
  const Real f1 = f(Real(x + h)), m1 = f(Real(x - h));
  const Real f2 = f(Real(x + 2 * h)), m2 = f(Real(x - 2 * h));
  const Real f3 = f(Real(x + 3 * h)), m3 = f(Real(x - 3 * h));
  return ((f1 - m1) * Real(3) / Real(4) - (f2 - m2) * Real(3) / Real(20) +
          (f3 - m3) / Real(60)) /
         h;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20260809u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testutil
