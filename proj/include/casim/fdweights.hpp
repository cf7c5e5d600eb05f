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

#include <cstddef>
#include <vector>

namespace casim {

// Fornberg weights: w[m][j] reproduces the m-th derivative at x0 from values
// at the (arbitrarily spaced) nodes x[j]. Works at the edges of a grid, which
// gives one-sided stencils for free.
template <class Real>
std::vector<std::vector<Real>> finite_difference_weights(
    const Real& x0, const std::vector<Real>& x, int max_order) {
  const int n = static_cast<int>(x.size()) - 1;
  const int m = max_order;
  std::vector<std::vector<Real>> c(m + 1, std::vector<Real>(n + 1, Real(0)));
  Real c1 = 1;
  Real c4 = x[0] - x0;
  c[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    const int mn = i < m ? i : m;
    Real c2 = 1;
    Real c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j <= i - 1; ++j) {
      const Real c3 = x[i] - x[j];
      c2 = c2 * c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (Real(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - Real(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

}  // namespace casim
