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
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casim/fdweights.hpp"
#include "casim/jet.hpp"
#include "casim/scalar.hpp"

namespace casim {

enum class Polarization { E, M };

inline constexpr Polarization kPolarizations[2] = {Polarization::E,
                                                   Polarization::M};

enum class ProfileKind {
  homogeneous,
  secant,       // n = A sec((z-z1)/a), eps = mu
  sech,         // n = A sech((z-z1)/a), eps = mu
  csch,         // n = A csch((z-z1)/a), eps = mu
  beltrami,     // n = A/(z-z1), eps = mu
  exponential,  // n = A exp(-(z-z1)/a), eps = mu
  two_slab,     // eps = 1 + (eps_wall-1) walls(z), mu = 1
  tabulated,
};

enum class DispersionKind {
  none,
  // secant length scale a -> a sqrt(1+(kappa/kappa0)^2); only for the secant
  // kind with unit amplitude, where the closed forms stay valid per kappa.
  secant_scale,
  // multiplicative Lorentzian tail: n-1 and Z-1 scaled by 1/(1+(kappa/kappa0)^2),
  // i.e. high-frequency tails n ~ 1 + n_inf(z)/kappa^2, Z ~ 1 + Z_inf(z)/kappa^2.
  lorentzian,
};

struct DispersionSpec {
  DispersionKind kind = DispersionKind::none;
  double kappa0 = 1.0;
};

struct ProfileSpec {
  ProfileKind kind = ProfileKind::homogeneous;
  double amplitude = 1.0;  // overall index factor A
  double scale = 1.0;      // length scale a
  double shift = 0.0;      // profile center z1
  double eps0 = 1.0;       // homogeneous only
  double mu0 = 1.0;        // homogeneous only
  // two-slab (smooth tanh walls around a vacuum gap)
  double gap = 1.0;
  double eps_wall = 4.0;
  double steepness = 20.0;
  double wall_depth = 0.0;  // 0 = auto
  DispersionSpec dispersion;
  double margin_frac = 1e-3;  // singularity margin as fraction of half-domain
  std::optional<double> domain_lo;
  std::optional<double> domain_hi;
  // tabulated profile samples (eps = mu when tab_Z empty)
  std::vector<double> tab_z, tab_n, tab_Z;
};

inline std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::homogeneous: return "homogeneous";
    case ProfileKind::secant: return "secant";
    case ProfileKind::sech: return "sech";
    case ProfileKind::csch: return "csch";
    case ProfileKind::beltrami: return "beltrami";
    case ProfileKind::exponential: return "exponential";
    case ProfileKind::two_slab: return "two-slab";
    case ProfileKind::tabulated: return "tabulated";
  }
  return "?";
}

inline std::string to_string(DispersionKind k) {
  switch (k) {
    case DispersionKind::none: return "none";
    case DispersionKind::secant_scale: return "secant-scale";
    case DispersionKind::lorentzian: return "lorentzian";
  }
  return "?";
}

inline ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "homogeneous") return ProfileKind::homogeneous;
  if (s == "secant") return ProfileKind::secant;
  if (s == "sech") return ProfileKind::sech;
  if (s == "csch") return ProfileKind::csch;
  if (s == "beltrami") return ProfileKind::beltrami;
  if (s == "exponential") return ProfileKind::exponential;
  if (s == "two-slab" || s == "two_slab") return ProfileKind::two_slab;
  if (s == "tabulated") return ProfileKind::tabulated;
  throw std::invalid_argument("unknown profile kind: " + s);
}

inline DispersionKind dispersion_kind_from_string(const std::string& s) {
  if (s == "none") return DispersionKind::none;
  if (s == "secant-scale" || s == "secant_scale")
    return DispersionKind::secant_scale;
  if (s == "lorentzian") return DispersionKind::lorentzian;
  throw std::invalid_argument("unknown dispersion kind: " + s);
}

// Medium data at one (z, kappa): index and impedance with z-derivatives to
// third order, on the imaginary frequency axis (everything real).
template <class Real>
struct MediumPoint {
  Real z{}, kappa{};
  Jet<Real> n;  // refractive index n = sqrt(eps mu)
  Jet<Real> Z;  // impedance Z = sqrt(mu/eps)
  Real eps{}, mu{};

  // polarization weight nu_E = mu, nu_M = eps, with derivatives
  Jet<Real> nu(Polarization p) const {
    return p == Polarization::E ? n * Z : n / Z;
  }
  // transverse wave scale w = sqrt(eps mu kappa^2 + u^2)
  Real w(const Real& u) const {
    using std::sqrt;
    return sqrt(n.f * n.f * kappa * kappa + u * u);
  }
  Jet<Real> w_jet(const Real& u) const {
    return sqrt(n * n * (kappa * kappa) + Jet<Real>::constant(u * u));
  }
};

class MediumProfile {
 public:
  MediumProfile() = default;

  const ProfileSpec& spec() const { return spec_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  bool impedance_matched() const {
    return spec_.kind != ProfileKind::two_slab &&
           !(spec_.kind == ProfileKind::homogeneous &&
             spec_.eps0 != spec_.mu0) &&
           !(spec_.kind == ProfileKind::tabulated && !spec_.tab_Z.empty());
  }
  bool is_homogeneous() const {
    return spec_.kind == ProfileKind::homogeneous;
  }
  // true when the exact secant pipeline applies
  bool has_secant_closed_form() const {
    return spec_.kind == ProfileKind::secant &&
           spec_.dispersion.kind != DispersionKind::lorentzian;
  }

  template <class Real>
  MediumPoint<Real> eval(const Real& z, const Real& kappa) const {
    if (to_double(kappa) < 0) throw DomainError("kappa must be nonnegative");
    const double zd = to_double(z);
    if (!(zd >= lo_ && zd <= hi_))
      throw DomainError("z = " + std::to_string(zd) + " outside domain [" +
                        std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    MediumPoint<Real> pt;
    pt.z = z;
    pt.kappa = kappa;
    base_index(z, kappa, pt.n, pt.Z);
    if (spec_.dispersion.kind == DispersionKind::lorentzian) {
      const Real L = Real(1) / (Real(1) + (kappa / Real(spec_.dispersion.kappa0)) *
                                              (kappa / Real(spec_.dispersion.kappa0)));
      pt.n = Jet<Real>((pt.n.f - 1) * L + 1, pt.n.d1 * L, pt.n.d2 * L, pt.n.d3 * L);
      pt.Z = Jet<Real>((pt.Z.f - 1) * L + 1, pt.Z.d1 * L, pt.Z.d2 * L, pt.Z.d3 * L);
    }
    pt.eps = (pt.n / pt.Z).f;
    pt.mu = (pt.n * pt.Z).f;
    return pt;
  }

  friend MediumProfile make_profile(const ProfileSpec& spec);

 private:
  ProfileSpec spec_;
  double lo_ = 0, hi_ = 0;

  // index/impedance jets before the Lorentzian dispersion wrapper
  template <class Real>
  void base_index(const Real& z, const Real& kappa, Jet<Real>& n,
                  Jet<Real>& Z) const {
    using std::sqrt;
    const Real one(1);
    Z = Jet<Real>::constant(one);
    switch (spec_.kind) {
      case ProfileKind::homogeneous: {
        n = Jet<Real>::constant(sqrt(Real(spec_.eps0) * Real(spec_.mu0)));
        Z = Jet<Real>::constant(sqrt(Real(spec_.mu0) / Real(spec_.eps0)));
        return;
      }
      case ProfileKind::secant: {
        Real a_eff = Real(spec_.scale);
        if (spec_.dispersion.kind == DispersionKind::secant_scale) {
          const Real r = kappa / Real(spec_.dispersion.kappa0);
          a_eff = a_eff * sqrt(one + r * r);
        }
        const auto t =
            Jet<Real>::variable((z - Real(spec_.shift)) / a_eff, one / a_eff);
        n = Real(spec_.amplitude) / cos(t);
        return;
      }
      case ProfileKind::sech: {
        const auto t = scaled_arg(z);
        n = Real(spec_.amplitude) / cosh(t);
        return;
      }
      case ProfileKind::csch: {
        const auto t = scaled_arg(z);
        n = Real(spec_.amplitude) / sinh(t);
        return;
      }
      case ProfileKind::beltrami: {
        n = Real(spec_.amplitude) /
            Jet<Real>::variable(z - Real(spec_.shift));
        return;
      }
      case ProfileKind::exponential: {
        const auto t = scaled_arg(z);
        n = Real(spec_.amplitude) * exp(-t);
        return;
      }
      case ProfileKind::two_slab: {
        const Real lam(spec_.steepness), half(spec_.gap / 2);
        const auto up = Jet<Real>::variable(lam * (z - half), lam);
        const auto dn = Jet<Real>::variable(lam * (z + half), lam);
        const auto walls = (tanh(up) - tanh(dn)) / Real(2) + one;
        const auto eps = Real(spec_.eps_wall - 1.0) * walls + one;
        n = sqrt(eps);
        Z = one / n;
        return;
      }
      case ProfileKind::tabulated: {
        n = tabulated_jet(z, spec_.tab_n);
        if (!spec_.tab_Z.empty()) Z = tabulated_jet(z, spec_.tab_Z);
        return;
      }
    }
    throw std::logic_error("unreachable profile kind");
  }

  template <class Real>
  Jet<Real> scaled_arg(const Real& z) const {
    const Real a(spec_.scale);
    return Jet<Real>::variable((z - Real(spec_.shift)) / a, Real(1) / a);
  }

  template <class Real>
  Jet<Real> tabulated_jet(const Real& z, const std::vector<double>& vals) const {
    constexpr int kStencil = 7;
    const auto& zs = spec_.tab_z;
    const int npts = static_cast<int>(zs.size());
    // nearest window of 7 nodes
    int lo = static_cast<int>(std::lower_bound(zs.begin(), zs.end(),
                                               to_double(z)) -
                              zs.begin());
    lo = std::clamp(lo - kStencil / 2, 0, npts - kStencil);
    std::vector<Real> xs(kStencil);
    for (int j = 0; j < kStencil; ++j) xs[j] = Real(zs[lo + j]);
    const auto w = finite_difference_weights(z, xs, 3);
    Jet<Real> out;
    Real acc[4] = {Real(0), Real(0), Real(0), Real(0)};
    for (int m = 0; m <= 3; ++m)
      for (int j = 0; j < kStencil; ++j)
        acc[m] += w[m][j] * Real(vals[lo + j]);
    return Jet<Real>(acc[0], acc[1], acc[2], acc[3]);
  }
};

inline MediumProfile make_profile(const ProfileSpec& spec) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(spec.scale > 0, "profile scale must be positive");
  require(spec.amplitude > 0, "profile amplitude must be positive");
  require(spec.margin_frac > 0, "singularity margin must be positive");
  if (spec.dispersion.kind != DispersionKind::none)
    require(spec.dispersion.kappa0 > 0, "dispersion kappa0 must be positive");
  if (spec.dispersion.kind == DispersionKind::secant_scale) {
    require(spec.kind == ProfileKind::secant,
            "secant-scale dispersion applies to the secant profile only");
    require(spec.amplitude == 1.0,
            "secant-scale dispersion requires unit amplitude (n -> 1 tail)");
  }

  const double halfpi = 1.5707963267948966;
  double lo = 0, hi = 0;
  double sing_lo = -std::numeric_limits<double>::infinity();
  double sing_hi = std::numeric_limits<double>::infinity();
  switch (spec.kind) {
    case ProfileKind::homogeneous:
      lo = -8 * spec.scale;
      hi = 8 * spec.scale;
      break;
    case ProfileKind::secant: {
      const double half = spec.scale * halfpi;
      sing_lo = spec.shift - half;
      sing_hi = spec.shift + half;
      const double delta = spec.margin_frac * half;
      lo = sing_lo + delta;
      hi = sing_hi - delta;
      break;
    }
    case ProfileKind::sech:
    case ProfileKind::exponential:
      lo = spec.shift - 6 * spec.scale;
      hi = spec.shift + 6 * spec.scale;
      break;
    case ProfileKind::csch:
    case ProfileKind::beltrami: {
      sing_lo = spec.shift;
      const double half = 3 * spec.scale;
      lo = spec.shift + spec.margin_frac * half;
      hi = spec.shift + 6 * spec.scale;
      break;
    }
    case ProfileKind::two_slab: {
      require(spec.gap > 0, "two-slab gap must be positive");
      require(spec.eps_wall >= 1.0, "two-slab wall permittivity must be >= 1");
      require(spec.steepness > 0, "two-slab steepness must be positive");
      const double depth = spec.wall_depth > 0
                               ? spec.wall_depth
                               : spec.gap / 2 + 8.0 / spec.steepness;
      lo = -(spec.gap / 2 + depth);
      hi = spec.gap / 2 + depth;
      break;
    }
    case ProfileKind::tabulated: {
      require(spec.tab_z.size() >= 7,
              "tabulated profile too sparse for third derivatives (need >= 7 points)");
      require(spec.tab_z.size() == spec.tab_n.size(),
              "tabulated z/n size mismatch");
      require(spec.tab_Z.empty() || spec.tab_Z.size() == spec.tab_z.size(),
              "tabulated z/Z size mismatch");
      require(std::is_sorted(spec.tab_z.begin(), spec.tab_z.end()),
              "tabulated z values must be increasing");
      lo = spec.tab_z.front();
      hi = spec.tab_z.back();
      break;
    }
  }
  if (spec.domain_lo) lo = *spec.domain_lo;
  if (spec.domain_hi) hi = *spec.domain_hi;
  if (!(lo < hi)) throw std::invalid_argument("empty profile domain");
  // keep a configurable margin away from the singular rim
  const double delta = spec.margin_frac * (hi - lo) / 2;
  if (lo - sing_lo < delta * 0.999999 || sing_hi - hi < delta * 0.999999)
    throw std::invalid_argument("profile domain touches a singularity");

  MediumProfile p;
  p.spec_ = spec;
  p.lo_ = lo;
  p.hi_ = hi;
  // positivity probe across the domain
  for (int i = 0; i <= 16; ++i) {
    const double z = lo + (hi - lo) * i / 16.0;
    const auto pt = p.eval(z, 0.0);
    if (!(pt.eps > 0) || !(pt.mu > 0))
      throw std::invalid_argument("profile not positive on domain");
  }
  return p;
}

// Convenience wrapper mirroring the per-point operation naming.
template <class Real>
MediumPoint<Real> eval_medium(const MediumProfile& profile, const Real& z,
                              const Real& kappa) {
  return profile.eval(z, kappa);
}

}  // namespace casim
