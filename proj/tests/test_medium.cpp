#include <catch2/catch_amalgamated.hpp>

#include "casim/medium.hpp"
#include "helpers.hpp"

using namespace casim;

namespace {

ProfileSpec secant_spec(double kappa0 = 0) {
  ProfileSpec s;
  s.kind = ProfileKind::secant;
  if (kappa0 > 0) {
    s.dispersion.kind = DispersionKind::secant_scale;
    s.dispersion.kappa0 = kappa0;
  }
  return s;
}

std::vector<ProfileSpec> builtin_specs() {
  std::vector<ProfileSpec> out;
  out.push_back(secant_spec());
  out.push_back(secant_spec(3.0));
  {
    ProfileSpec s;
    s.kind = ProfileKind::sech;
    s.amplitude = 1.5;
    s.scale = 0.8;
    s.shift = 0.2;
    out.push_back(s);
  }
  {
    ProfileSpec s;
    s.kind = ProfileKind::csch;
    out.push_back(s);
  }
  {
    ProfileSpec s;
    s.kind = ProfileKind::beltrami;
    s.amplitude = 2.0;
    s.shift = -1.0;
    out.push_back(s);
  }
  {
    ProfileSpec s;
    s.kind = ProfileKind::exponential;
    s.scale = 2.0;
    out.push_back(s);
  }
  {
    ProfileSpec s;
    s.kind = ProfileKind::two_slab;
    s.gap = 1.0;
    s.eps_wall = 4.0;
    s.steepness = 12.0;
    out.push_back(s);
  }
  {
    ProfileSpec s;
    s.kind = ProfileKind::sech;
    s.dispersion.kind = DispersionKind::lorentzian;
    s.dispersion.kappa0 = 2.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("secant profile basics") {
  const auto p = make_profile(secant_spec());
  const auto pt = eval_medium(p, 0.0, 0.0);
  CHECK(pt.n.f == Catch::Approx(1.0));
  CHECK(pt.n.d1 == Catch::Approx(0.0).margin(1e-15));
  CHECK(pt.n.d2 == Catch::Approx(1.0));  // sec''(0) = 1
  CHECK(pt.Z.f == Catch::Approx(1.0));
  CHECK(pt.Z.d1 == 0.0);

  const auto q = eval_medium(p, 1.0, 0.0);
  CHECK(q.n.f == Catch::Approx(1.0 / std::cos(1.0)));
}

TEST_CASE("homogeneous eps=4 mu=1") {
  ProfileSpec s;
  s.kind = ProfileKind::homogeneous;
  s.eps0 = 4;
  s.mu0 = 1;
  const auto p = make_profile(s);
  const auto pt = eval_medium(p, 0.3, 1.7);
  CHECK(pt.n.f == Catch::Approx(2.0));
  CHECK(pt.Z.f == Catch::Approx(0.5));
  CHECK(pt.n.d1 == 0.0);
  CHECK(pt.n.d2 == 0.0);
  CHECK(pt.eps == Catch::Approx(4.0));
  CHECK(pt.mu == Catch::Approx(1.0));
}

TEST_CASE("dispersive secant approaches vacuum at high kappa") {
  const auto p = make_profile(secant_spec(3.0));
  const auto pt = eval_medium(p, 1.0, 1e6);
  CHECK(std::fabs(pt.n.f - 1.0) < 1e-5);
  // the Fig.-5 scaling n = sec(z / a), a = sqrt(1 + (kappa/kappa0)^2)
  const double a = std::sqrt(1.0 + std::pow(1e6 / 3.0, 2));
  CHECK(pt.n.f == Catch::Approx(1.0 / std::cos(1.0 / a)).epsilon(1e-12));
}

TEST_CASE("dispersive tail decay: |n-1| at 10 kappa0 well below half that") {
  for (auto kind : {DispersionKind::secant_scale, DispersionKind::lorentzian}) {
    ProfileSpec s;
    s.kind = kind == DispersionKind::secant_scale ? ProfileKind::secant
                                                  : ProfileKind::sech;
    s.dispersion.kind = kind;
    s.dispersion.kappa0 = 3.0;
    const auto p = make_profile(s);
    const double k_hi = 10 * s.dispersion.kappa0;
    for (int i = 1; i <= 8; ++i) {
      const double z =
          p.domain_lo() + (p.domain_hi() - p.domain_lo()) * i / 9.0;
      const double dev_hi = std::fabs(eval_medium(p, z, k_hi).n.f - 1.0);
      const double dev_mid = std::fabs(eval_medium(p, z, k_hi / 2).n.f - 1.0);
      CHECK(dev_hi <= dev_mid / 3.0);
    }
  }
}

TEST_CASE("invariants: n^2 = eps mu, Z^2 = mu/eps, positivity") {
  for (const auto& spec : builtin_specs()) {
    const auto p = make_profile(spec);
    for (int i = 0; i < 40; ++i) {
      const double z = testutil::uniform(p.domain_lo(), p.domain_hi());
      const double kappa = testutil::uniform(0.0, 10.0);
      const auto pt = eval_medium(p, z, kappa);
      REQUIRE(pt.eps > 0);
      REQUIRE(pt.mu > 0);
      CHECK(testutil::rel_diff(pt.n.f * pt.n.f, pt.eps * pt.mu) < 1e-14);
      CHECK(testutil::rel_diff(pt.Z.f * pt.Z.f, pt.mu / pt.eps) < 1e-14);
    }
  }
}

TEST_CASE("impedance-matched profiles have Z identically one") {
  for (const auto& spec : builtin_specs()) {
    const auto p = make_profile(spec);
    if (!p.impedance_matched()) continue;
    for (int i = 0; i < 10; ++i) {
      const double z = testutil::uniform(p.domain_lo(), p.domain_hi());
      const auto pt = eval_medium(p, z, 0.7);
      CHECK(pt.Z.f == 1.0);
      CHECK(pt.Z.d1 == 0.0);
      CHECK(pt.Z.d2 == 0.0);
      CHECK(pt.Z.d3 == 0.0);
    }
  }
}

TEST_CASE("analytic derivatives match 6th-order finite differences") {
  for (const auto& spec : builtin_specs()) {
    const auto p = make_profile(spec);
    const double span = p.domain_hi() - p.domain_lo();
    for (int i = 0; i < 100; ++i) {
      const double z = testutil::uniform(p.domain_lo() + 0.05 * span,
                                         p.domain_hi() - 0.05 * span);
      const double kappa = testutil::uniform(0.0, 5.0);
      const auto pt = eval_medium(p, z, kappa);
      double feature = std::min(1.0, span / 4);
      if (spec.kind == ProfileKind::two_slab)
        feature = std::min(feature, 1.0 / spec.steepness);
      const double h = 3e-3 * feature;
      auto n_of = [&](double zz) { return eval_medium(p, zz, kappa).n.f; };
      auto n1_of = [&](double zz) { return eval_medium(p, zz, kappa).n.d1; };
      auto n2_of = [&](double zz) { return eval_medium(p, zz, kappa).n.d2; };
      auto Z_of = [&](double zz) { return eval_medium(p, zz, kappa).Z.f; };
      auto Z1_of = [&](double zz) { return eval_medium(p, zz, kappa).Z.d1; };
      auto Z2_of = [&](double zz) { return eval_medium(p, zz, kappa).Z.d2; };
      // relative agreement down to the finite-difference noise floor
      // (derivatives of order k live on the scale n / feature^k)
      auto close = [&](double a, double b, int order) {
        const double noise =
            1e-12 * std::fabs(pt.n.f) / std::pow(feature, order);
        return std::fabs(a - b) <=
               1e-8 * std::max(std::fabs(a), std::fabs(b)) + noise;
      };
      CHECK(close(pt.n.d1, testutil::fd6(n_of, z, h), 1));
      CHECK(close(pt.n.d2, testutil::fd6(n1_of, z, h), 2));
      CHECK(close(pt.n.d3, testutil::fd6(n2_of, z, h), 3));
      CHECK(close(pt.Z.d1, testutil::fd6(Z_of, z, h), 1));
      CHECK(close(pt.Z.d2, testutil::fd6(Z1_of, z, h), 2));
      CHECK(close(pt.Z.d3, testutil::fd6(Z2_of, z, h), 3));
    }
  }
}

TEST_CASE("big-float derivatives agree beyond double precision") {
  PrecisionScope scope(40);
  const auto p = make_profile(secant_spec(3.0));
  const BigFloat z = BigFloat(1) / 7, kappa = BigFloat(5) / 3;
  const auto pt = eval_medium(p, z, kappa);
  const BigFloat h = BigFloat(1) / 100000;
  auto n_of = [&](const BigFloat& zz) { return eval_medium(p, zz, kappa).n.f; };
  const auto fd = testutil::fd6(n_of, z, h);
  CHECK(testutil::rel_diff(pt.n.d1, fd) < 1e-28);
}

TEST_CASE("tabulated profile reproduces its source function") {
  ProfileSpec s;
  s.kind = ProfileKind::tabulated;
  for (int i = 0; i <= 200; ++i) {
    const double z = -1.0 + 2.0 * i / 200;
    s.tab_z.push_back(z);
    s.tab_n.push_back(1.0 + 0.3 * std::exp(-z * z));
    s.tab_Z.push_back(1.0 / std::sqrt(1.0 + 0.1 * z * z));
  }
  const auto p = make_profile(s);
  const auto pt = eval_medium(p, 0.37, 0.0);
  CHECK(testutil::rel_diff(pt.n.f, 1.0 + 0.3 * std::exp(-0.37 * 0.37)) < 1e-10);
  const double n1_exact = 0.3 * (-2 * 0.37) * std::exp(-0.37 * 0.37);
  CHECK(std::fabs(pt.n.d1 - n1_exact) < 1e-7);
  CHECK(p.impedance_matched() == false);
}

TEST_CASE("profile construction errors") {
  ProfileSpec bad;
  bad.kind = ProfileKind::secant;
  bad.scale = -1;
  CHECK_THROWS_AS(make_profile(bad), std::invalid_argument);

  ProfileSpec touching;
  touching.kind = ProfileKind::secant;
  touching.domain_hi = 1.5707963267948966;  // the singular rim
  CHECK_THROWS_AS(make_profile(touching), std::invalid_argument);

  CHECK_THROWS_AS(profile_kind_from_string("nope"), std::invalid_argument);

  ProfileSpec sparse;
  sparse.kind = ProfileKind::tabulated;
  sparse.tab_z = {0, 1, 2};
  sparse.tab_n = {1, 1, 1};
  CHECK_THROWS_AS(make_profile(sparse), std::invalid_argument);

  ProfileSpec amp;
  amp.kind = ProfileKind::secant;
  amp.amplitude = 2.0;
  amp.dispersion.kind = DispersionKind::secant_scale;
  CHECK_THROWS_AS(make_profile(amp), std::invalid_argument);

  const auto p = make_profile(secant_spec());
  CHECK_THROWS_AS(eval_medium(p, 3.0, 0.0), DomainError);   // outside domain
  CHECK_THROWS_AS(eval_medium(p, 0.0, -1.0), DomainError);  // negative kappa
}
