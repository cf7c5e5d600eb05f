#include <catch2/catch_amalgamated.hpp>

#include "casim/quadrature.hpp"
#include "helpers.hpp"

using namespace casim;

TEST_CASE("tanh-sinh handles smooth integrands") {
  auto r = tanh_sinh_panel([](const double& x) { return std::exp(-x); },
                           0.0, 10.0, 1e-12, 0.0);
  CHECK(r.converged);
  CHECK(r.value == Catch::Approx(1.0 - std::exp(-10.0)).epsilon(1e-11));
}

TEST_CASE("tanh-sinh handles integrable endpoint singularities") {
  auto r = tanh_sinh_panel([](const double& x) { return 1.0 / std::sqrt(x); },
                           0.0, 1.0, 1e-12, 0.0);
  CHECK(r.converged);
  CHECK(r.value == Catch::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("tanh-sinh reaches big-float precision") {
  PrecisionScope scope(40);
  auto r = tanh_sinh_panel(
      [](const BigFloat& x) { return 1 / (1 + x * x); }, BigFloat(0),
      BigFloat(1), 1e-35, BigFloat(0), 12);
  CHECK(r.converged);
  CHECK(testutil::rel_diff(r.value, BigFloat(pi_value<BigFloat>() / 4)) < 1e-33);
}

TEST_CASE("dyadic panels tile the axis") {
  const auto p = dyadic_panels(4.0, 32.0);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == std::pair<double, double>(0, 4));
  CHECK(p[3] == std::pair<double, double>(16, 32));
}

TEST_CASE("gauss-legendre panel integrates polynomials near-exactly") {
  auto f = [](const double& x) { return x * x * x * x * x - 2 * x * x + 1; };
  const double got = gauss_legendre_panel(f, -1.0, 2.0);
  // antiderivative x^6/6 - 2x^3/3 + x
  auto F = [](double x) { return x * x * x * x * x * x / 6 - 2 * x * x * x / 3 + x; };
  CHECK(got == Catch::Approx(F(2.0) - F(-1.0)).epsilon(1e-14));
}

TEST_CASE("quadrature is bitwise deterministic") {
  PrecisionScope scope(35);
  auto f = [](const BigFloat& x) { return exp(-x * x / 2); };
  const auto a = tanh_sinh_panel(f, BigFloat(0), BigFloat(3), 1e-25, BigFloat(0));
  const auto b = tanh_sinh_panel(f, BigFloat(0), BigFloat(3), 1e-25, BigFloat(0));
  CHECK(a.value == b.value);
  CHECK(a.evals == b.evals);
}
