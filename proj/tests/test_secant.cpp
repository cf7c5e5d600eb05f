#include <catch2/catch_amalgamated.hpp>

#include "casim/geoptics.hpp"
#include "casim/secant.hpp"
#include "helpers.hpp"

using namespace casim;

namespace {

// residual of d/dz (1/n) d/dz g - (u^2 + n^2 k^2)/n g at fixed z0, by
// 6th-order finite differences in z
double ode_residual(double kappa, double u, double z, double z0) {
  PrecisionScope scope(40);
  const BigFloat k(kappa), uu(u), zz0(z0);
  auto g = [&](const BigFloat& x) { return secant_green(k, uu, x, zz0); };
  const BigFloat h = BigFloat(1) / 100000;
  using std::cos;
  using std::tan;
  const BigFloat zb(z);
  // g'' and g' stencils
  BigFloat gp = testutil::fd6(g, zb, h);
  auto gprime = [&](const BigFloat& x) { return testutil::fd6(g, x, h); };
  BigFloat gpp = testutil::fd6(gprime, zb, h);
  const BigFloat n = 1 / cos(zb);
  const BigFloat np = tan(zb) / cos(zb);
  const BigFloat w2 = uu * uu + n * n * k * k;
  const BigFloat lhs = gpp / n - np / (n * n) * gp - w2 / n * g(zb);
  const BigFloat scale = w2 / n * fabs(g(zb));
  return std::fabs(to_double(lhs)) / to_double(scale);
}

}  // namespace

TEST_CASE("secant green solves the wave equation (finite-difference residual)") {
  for (auto [kappa, u, z, z0] :
       {std::array<double, 4>{1.0, 0.3, 0.2, -0.1},
        std::array<double, 4>{0.5, 0.8, -0.6, 0.4},
        std::array<double, 4>{2.0, 2.0, 0.9, 0.1},
        std::array<double, 4>{4.0, 1.0, -0.3, -1.1}}) {
    CHECK(ode_residual(kappa, u, z, z0) < 1e-8);
  }
}

TEST_CASE("secant green symmetry and realness") {
  PrecisionScope scope(30);
  const BigFloat k(1), u(0.8), z(0.2), z0(-0.1);
  CHECK(to_double(secant_green(k, u, z, z0)) ==
        to_double(secant_green(k, u, z0, z)));
  // u = 0.8 puts the Legendre degree on the complex branch; the value is real
  // by construction; cross-check against the complex-degree route
  const auto params = legendre_params(k, u);
  const auto pc = legendre_P_cut(params.degree, BigFloat(-1), BigFloat(sin(z)));
  const auto fast = legendre_P_physical(u * u, k, BigFloat(sin(z)));
  CHECK(testutil::rel_diff(pc.re, fast.P) < 1e-25);
  CHECK(std::fabs(to_double(pc.im)) < 1e-25 * std::fabs(to_double(pc.re)));
}

TEST_CASE("secant green delta jump fixes the Wronskian normalization") {
  PrecisionScope scope(40);
  for (auto [kappa, u, z0] : {std::array<double, 3>{1.0, 0.3, 0.2},
                              std::array<double, 3>{2.0, 1.5, -0.4},
                              std::array<double, 3>{0.7, 0.9, 0.8}}) {
    const BigFloat k(kappa), uu(u), zz(z0);
    // branch derivatives at coincidence: upper minus lower equals nu = sec z0
    const auto upper = secant_green_sample(k, uu, BigFloat(zz + BigFloat(1e-30)), zz);
    const auto lower = secant_green_sample(k, uu, BigFloat(zz - BigFloat(1e-30)), zz);
    const BigFloat jump = upper.dz - lower.dz;
    const BigFloat nu = 1 / cos(zz);
    CHECK(testutil::rel_diff(jump, nu) < 1e-20);
  }
}

TEST_CASE("secant green domain errors") {
  PrecisionScope scope(30);
  CHECK_THROWS_AS(secant_green(BigFloat(1), BigFloat(1), BigFloat(1.6), BigFloat(0)),
                  DomainError);
  CHECK_THROWS_AS(secant_green(BigFloat(0), BigFloat(0), BigFloat(0.5), BigFloat(0)),
                  DomainError);
}

TEST_CASE("dispersive secant closed form satisfies the kappa-scaled equation") {
  // profile n = sec(z/a), a = sqrt(1 + (kappa/kappa0)^2): the green sample of
  // the profile must solve the wave equation with the dispersive n(z, kappa)
  PrecisionScope scope(40);
  ProfileSpec spec;
  spec.kind = ProfileKind::secant;
  spec.dispersion.kind = DispersionKind::secant_scale;
  spec.dispersion.kappa0 = 3.0;
  const auto p = make_profile(spec);
  const BigFloat kappa(2), u(1), z0(BigFloat(1) / 10);
  auto g = [&](const BigFloat& x) {
    return secant_profile_green_sample(p, kappa, u, x, z0).g;
  };
  const BigFloat z = BigFloat(1) / 2;
  const BigFloat h = BigFloat(1) / 100000;
  auto gprime = [&](const BigFloat& x) { return testutil::fd6(g, x, h); };
  const BigFloat gp = gprime(z), gpp = testutil::fd6(gprime, z, h);
  const auto pt = p.eval(z, kappa);
  const BigFloat n = pt.n.f, np = pt.n.d1;
  const BigFloat w2 = u * u + n * n * kappa * kappa;
  const BigFloat lhs = gpp / n - np / (n * n) * gp - w2 / n * g(z);
  CHECK(std::fabs(to_double(lhs)) < 1e-9 * to_double(w2 / n * fabs(g(z))));
  // and the derivative fields match the finite differences
  const auto s = secant_profile_green_sample(p, kappa, u, z, z0);
  CHECK(testutil::rel_diff(s.dz, gp) < 1e-9);
}

TEST_CASE("geodesic length on the Poincare disk") {
  PrecisionScope scope(30);
  CHECK(to_double(secant_geodesic(BigFloat(0), BigFloat(0.3), BigFloat(0.3))) == 0.0);

  // straight vertical ray: s = |ln((sec z + tan z)/(sec z0 + tan z0))|
  for (auto [z, z0] : {std::array<double, 2>{0.7, -0.2},
                       std::array<double, 2>{-0.1, -0.9},
                       std::array<double, 2>{1.2, 0.3}}) {
    const double expected = std::fabs(
        std::log((1 / std::cos(z) + std::tan(z)) / (1 / std::cos(z0) + std::tan(z0))));
    const double got =
        to_double(secant_geodesic(BigFloat(0), BigFloat(z), BigFloat(z0)));
    CHECK(got == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("geodesic matches the quadratic expansion to second order") {
  // s_exact - s_quadratic = O(rho^3) relative to rho, so the relative error
  // drops at least quadratically
  ProfileSpec spec;
  spec.kind = ProfileKind::secant;
  const auto p = make_profile(spec);
  const double z0 = 0.4;
  auto rel_gap = [&](double rho) {
    const double r = rho * 0.6, dz = rho * 0.8;
    const auto q = quadratic_outgoing(p, Polarization::E, 0.0, z0, r, z0 + dz);
    const double exact = to_double(secant_geodesic(r, z0 + dz, z0));
    return std::fabs(to_double(q.s) - exact) / exact;
  };
  const double e2 = rel_gap(1e-2), e3 = rel_gap(1e-3);
  const double order = std::log10(e2 / e3);
  CHECK(order >= 2.0);
}

TEST_CASE("amplitude: reciprocity, near-field limit, finiteness on the axis") {
  PrecisionScope scope(30);
  const BigFloat r(0.4), z(0.3), z0(-0.5);
  CHECK(testutil::rel_diff(secant_amplitude(r, z, z0),
                           secant_amplitude(r, z0, z)) < 1e-28);

  // rho -> 0: rho * A0 -> -1/(4 pi nu0), nu0 = sec z0
  const double zz0 = 0.25;
  for (double rho : {1e-3, 1e-5}) {
    const double r_ = rho * 0.6, dz = rho * 0.8;
    const double a0 = to_double(
        secant_amplitude(BigFloat(r_), BigFloat(zz0 + dz), BigFloat(zz0)));
    const double target = -std::cos(zz0) / (4 * 3.14159265358979324);
    CHECK(std::fabs(rho * a0 - target) < 5 * rho * std::fabs(target));
  }

  // r -> 0 off the source point stays finite
  const double v = to_double(secant_amplitude(BigFloat(0), BigFloat(0.5), BigFloat(-0.2)));
  CHECK(std::isfinite(v));
  CHECK(v < 0);
}

TEST_CASE("geometric dispersion amplitude b") {
  PrecisionScope scope(30);
  const double pi = 3.14159265358979324;
  // r -> 0 at z = z0: b = -1/(24 pi n0^2)
  for (double z0 : {0.0, 0.4, 1.0}) {
    const double n0 = 1 / std::cos(z0);
    const double b0 = to_double(secant_dispersion(BigFloat(0), BigFloat(z0), BigFloat(z0)));
    CHECK(b0 == Catch::Approx(-1 / (24 * pi * n0 * n0)).epsilon(1e-12));
  }
  // exponential localization around the axis
  const double b4 = to_double(secant_dispersion(BigFloat(4), BigFloat(0), BigFloat(0)));
  const double b8 = to_double(secant_dispersion(BigFloat(8), BigFloat(0), BigFloat(0)));
  CHECK(std::fabs(b8) < std::exp(-1.0) * std::fabs(b4));

  // matches the quadratic-expansion coefficient at the emission point
  ProfileSpec spec;
  spec.kind = ProfileKind::secant;
  const auto p = make_profile(spec);
  for (double z0 : {0.0, 0.6}) {
    const auto da = dispersion_amplitude(p, Polarization::E, 0.0, z0);
    const double br0 =
        to_double(secant_dispersion(BigFloat(0), BigFloat(z0), BigFloat(z0)));
    CHECK(to_double(da.b) == Catch::Approx(br0).epsilon(1e-12));
  }
}

TEST_CASE("disk map is an isometry of the optical metric") {
  // pushforward of sec^2 (dr^2 + dz^2) through (xi, eta) reproduces
  // n_p^2 (d xi^2 + d eta^2)
  PrecisionScope scope(40);
  const BigFloat h = BigFloat(1) / 1000000;
  for (int i = 0; i < 100; ++i) {
    const double r = testutil::uniform(0.05, 2.0);
    const double z = testutil::uniform(-1.2, 1.2);
    const double z0 = testutil::uniform(-1.0, 1.0);
    const BigFloat rb(r), zb(z), z0b(z0);
    auto xi = [&](const BigFloat& rr, const BigFloat& zz) {
      return secant_poincare(rr, zz, z0b).xi;
    };
    auto eta = [&](const BigFloat& rr, const BigFloat& zz) {
      return secant_poincare(rr, zz, z0b).eta;
    };
    auto dr = [&](auto&& f) {
      return BigFloat((f(BigFloat(rb + h), zb) - f(BigFloat(rb - h), zb)) / (2 * h));
    };
    auto dz = [&](auto&& f) {
      return BigFloat((f(rb, BigFloat(zb + h)) - f(rb, BigFloat(zb - h))) / (2 * h));
    };
    const BigFloat xr = dr(xi), xz = dz(xi), er = dr(eta), ez = dz(eta);
    const auto pc = secant_poincare(rb, zb, z0b);
    const BigFloat np2 = pc.disk_index() * pc.disk_index();
    const BigFloat sec2 = 1 / (cos(zb) * cos(zb));
    CHECK(testutil::rel_diff(BigFloat(np2 * (xr * xr + er * er)), sec2) < 1e-6);
    CHECK(testutil::rel_diff(BigFloat(np2 * (xz * xz + ez * ez)), sec2) < 1e-6);
    CHECK(std::fabs(to_double(BigFloat(np2 * (xr * xz + er * ez)))) <
          1e-6 * to_double(sec2));
  }
}

TEST_CASE("beta gradient identity: grad s . grad beta = n^2 beta1") {
  PrecisionScope scope(40);
  const BigFloat h = BigFloat(1) / 1000000;
  for (auto [r, z, z0] : {std::array<double, 3>{0.5, 0.3, 0.0},
                          std::array<double, 3>{1.2, -0.4, 0.2},
                          std::array<double, 3>{0.8, 0.9, -0.3}}) {
    const BigFloat rb(r), zb(z), z0b(z0);
    auto s_of = [&](const BigFloat& rr, const BigFloat& zz) {
      return secant_geodesic(rr, zz, z0b);
    };
    auto beta_of = [&](const BigFloat& rr, const BigFloat& zz) {
      return secant_beta(rr, zz, z0b);
    };
    auto ddr = [&](auto&& f) {
      return BigFloat((f(BigFloat(rb + h), zb) - f(BigFloat(rb - h), zb)) / (2 * h));
    };
    auto ddz = [&](auto&& f) {
      return BigFloat((f(rb, BigFloat(zb + h)) - f(rb, BigFloat(zb - h))) / (2 * h));
    };
    const BigFloat lhs = ddr(s_of) * ddr(beta_of) + ddz(s_of) * ddz(beta_of);
    const BigFloat n2 = 1 / (cos(zb) * cos(zb));
    using std::sinh;
    const BigFloat beta1 =
        (1 + 1 / (rb * rb) - 1 / (sinh(rb) * sinh(rb))) / (8 * n2);
    CHECK(testutil::rel_diff(lhs, BigFloat(n2 * beta1)) < 1e-8);
  }
}

TEST_CASE("constant curvature: R_z^z is -2 for secant and +2 for sech") {
  ProfileSpec sec_spec;
  sec_spec.kind = ProfileKind::secant;
  const auto ps = make_profile(sec_spec);
  for (double z : {-1.0, 0.0, 0.7}) {
    const auto g = make_geo_expansion(ps, Polarization::E, 0.0, z);
    CHECK(to_double(g.ricci_zz) == Catch::Approx(-2.0).epsilon(1e-13));
  }
  ProfileSpec sech_spec;
  sech_spec.kind = ProfileKind::sech;
  const auto ph = make_profile(sech_spec);
  for (double z : {-2.0, 0.0, 1.3}) {
    const auto g = make_geo_expansion(ph, Polarization::E, 0.0, z);
    CHECK(to_double(g.ricci_zz) == Catch::Approx(2.0).epsilon(1e-13));
  }
}
