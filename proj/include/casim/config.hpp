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

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "casim/medium.hpp"
#include "casim/stress.hpp"

namespace casim {

using json = nlohmann::json;

// Everything needed to reproduce a run bit-exactly.
struct RunConfig {
  ProfileSpec profile;
  std::vector<double> zgrid{0.0};
  QuadratureConfig quad;
  std::string output_format = "csv";  // csv | json
  std::string output_dir = ".";
  // wavefront / geodesic plotting
  double wavefront_time = 1.0;
  int ray_count = 48;
  double emission_z = 0.0;
};

inline std::string to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::automatic: return "auto";
    case DensityMethod::closed_form: return "closed-form";
    case DensityMethod::riccati: return "riccati";
  }
  return "?";
}

inline DensityMethod density_method_from_string(const std::string& s) {
  if (s == "auto" || s == "automatic") return DensityMethod::automatic;
  if (s == "closed-form" || s == "closed_form") return DensityMethod::closed_form;
  if (s == "riccati") return DensityMethod::riccati;
  throw std::invalid_argument("unknown density method: " + s);
}

inline json emit_config(const RunConfig& c) {
  json p;
  p["kind"] = to_string(c.profile.kind);
  p["amplitude"] = c.profile.amplitude;
  p["scale"] = c.profile.scale;
  p["shift"] = c.profile.shift;
  p["eps"] = c.profile.eps0;
  p["mu"] = c.profile.mu0;
  p["gap"] = c.profile.gap;
  p["eps_wall"] = c.profile.eps_wall;
  p["steepness"] = c.profile.steepness;
  p["wall_depth"] = c.profile.wall_depth;
  p["margin_frac"] = c.profile.margin_frac;
  if (c.profile.domain_lo) p["domain_lo"] = *c.profile.domain_lo;
  if (c.profile.domain_hi) p["domain_hi"] = *c.profile.domain_hi;
  if (!c.profile.tab_z.empty()) {
    p["tab_z"] = c.profile.tab_z;
    p["tab_n"] = c.profile.tab_n;
    if (!c.profile.tab_Z.empty()) p["tab_Z"] = c.profile.tab_Z;
  }
  p["dispersion"] = {{"kind", to_string(c.profile.dispersion.kind)},
                     {"kappa0", c.profile.dispersion.kappa0}};

  json q;
  q["lambda_u"] = c.quad.lambda_u;
  q["lambda_kappa"] = c.quad.lambda_kappa;
  q["rel_tol"] = c.quad.rel_tol;
  q["precision"] = c.quad.precision;
  q["max_precision"] = c.quad.max_precision;
  q["doubling_threshold"] = c.quad.doubling_threshold;
  q["sigma_abs_floor"] = c.quad.sigma_abs_floor;
  q["max_doublings"] = c.quad.max_doublings;
  q["escalation_step"] = c.quad.escalation_step;
  q["min_kept_digits"] = c.quad.min_kept_digits;
  q["max_quad_level"] = c.quad.max_quad_level;
  q["density_method"] = to_string(c.quad.method);
  q["renorm"] =
      c.quad.renorm == RenormKind::quadratic ? "quadratic" : "linear-control";

  json j;
  j["profile"] = p;
  j["grid"] = {{"points", c.zgrid}};
  j["quadrature"] = q;
  j["output"] = {{"format", c.output_format}, {"dir", c.output_dir}};
  j["wavefront"] = {{"time", c.wavefront_time},
                    {"rays", c.ray_count},
                    {"z0", c.emission_z}};
  return j;
}

inline RunConfig parse_config(const json& j) {
  RunConfig c;
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    if (p.contains("kind"))
      c.profile.kind = profile_kind_from_string(p.at("kind").get<std::string>());
    auto get = [&](const char* key, double& out) {
      if (p.contains(key)) out = p.at(key).get<double>();
    };
    get("amplitude", c.profile.amplitude);
    get("scale", c.profile.scale);
    get("shift", c.profile.shift);
    get("eps", c.profile.eps0);
    get("mu", c.profile.mu0);
    get("gap", c.profile.gap);
    get("eps_wall", c.profile.eps_wall);
    get("steepness", c.profile.steepness);
    get("wall_depth", c.profile.wall_depth);
    get("margin_frac", c.profile.margin_frac);
    if (p.contains("domain_lo")) c.profile.domain_lo = p.at("domain_lo").get<double>();
    if (p.contains("domain_hi")) c.profile.domain_hi = p.at("domain_hi").get<double>();
    if (p.contains("tab_z")) c.profile.tab_z = p.at("tab_z").get<std::vector<double>>();
    if (p.contains("tab_n")) c.profile.tab_n = p.at("tab_n").get<std::vector<double>>();
    if (p.contains("tab_Z")) c.profile.tab_Z = p.at("tab_Z").get<std::vector<double>>();
    if (p.contains("dispersion")) {
      const auto& d = p.at("dispersion");
      if (d.contains("kind"))
        c.profile.dispersion.kind =
            dispersion_kind_from_string(d.at("kind").get<std::string>());
      if (d.contains("kappa0"))
        c.profile.dispersion.kappa0 = d.at("kappa0").get<double>();
    }
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("points")) {
      c.zgrid = g.at("points").get<std::vector<double>>();
    } else if (g.contains("lo") && g.contains("hi") && g.contains("count")) {
      const double lo = g.at("lo").get<double>(), hi = g.at("hi").get<double>();
      const int n = g.at("count").get<int>();
      if (n < 1) throw std::invalid_argument("grid count must be >= 1");
      c.zgrid.clear();
      for (int i = 0; i < n; ++i)
        c.zgrid.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    } else {
      throw std::invalid_argument("grid needs points[] or lo/hi/count");
    }
  }
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    auto get = [&](const char* key, auto& out) {
      if (q.contains(key)) out = q.at(key).get<std::decay_t<decltype(out)>>();
    };
    get("lambda_u", c.quad.lambda_u);
    get("lambda_kappa", c.quad.lambda_kappa);
    get("rel_tol", c.quad.rel_tol);
    get("precision", c.quad.precision);
    get("max_precision", c.quad.max_precision);
    get("doubling_threshold", c.quad.doubling_threshold);
    get("sigma_abs_floor", c.quad.sigma_abs_floor);
    get("max_doublings", c.quad.max_doublings);
    get("escalation_step", c.quad.escalation_step);
    get("min_kept_digits", c.quad.min_kept_digits);
    get("max_quad_level", c.quad.max_quad_level);
    if (q.contains("density_method"))
      c.quad.method =
          density_method_from_string(q.at("density_method").get<std::string>());
    if (q.contains("renorm")) {
      const auto r = q.at("renorm").get<std::string>();
      if (r == "quadratic")
        c.quad.renorm = RenormKind::quadratic;
      else if (r == "linear-control" || r == "linear")
        c.quad.renorm = RenormKind::linear_control;
      else
        throw std::invalid_argument("unknown renorm kind: " + r);
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("format")) c.output_format = o.at("format").get<std::string>();
    if (o.contains("dir")) c.output_dir = o.at("dir").get<std::string>();
    if (c.output_format != "csv" && c.output_format != "json")
      throw std::invalid_argument("output format must be csv or json");
  }
  if (j.contains("wavefront")) {
    const auto& w = j.at("wavefront");
    if (w.contains("time")) c.wavefront_time = w.at("time").get<double>();
    if (w.contains("rays")) c.ray_count = w.at("rays").get<int>();
    if (w.contains("z0")) c.emission_z = w.at("z0").get<double>();
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  in >> j;
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// Output writers. CSV: UTF-8, comma separator, '.' decimal, scientific
// notation at the full computed precision.

template <class Real>
void write_stress_csv(std::ostream& os, const StressResult<Real>& r) {
  os << "z,sigma_zz,error,f_z\n";
  for (std::size_t i = 0; i < r.zgrid.size(); ++i) {
    os << to_full_string(r.zgrid[i]) << "," << to_full_string(r.points[i].sigma)
       << "," << to_full_string(r.points[i].error) << ",";
    if (r.has_force) os << to_full_string(r.f_z[i]);
    os << "\n";
  }
}

template <class Real>
json stress_manifest(const RunConfig& cfg, const StressResult<Real>& r,
                     double wall_seconds) {
  json m;
  m["config"] = emit_config(cfg);
  m["wall_seconds"] = wall_seconds;
  json pts = json::array();
  long evals = 0;
  for (std::size_t i = 0; i < r.zgrid.size(); ++i) {
    const auto& p = r.points[i];
    pts.push_back({{"z", r.zgrid[i]},
                   {"sigma_zz", to_full_string(p.sigma)},
                   {"error", to_full_string(p.error)},
                   {"converged", p.converged},
                   {"lambda_u", p.lambda_u},
                   {"lambda_kappa", p.lambda_kappa},
                   {"digits_used", p.digits_used},
                   {"evals", p.evals}});
    evals += p.evals;
  }
  m["points"] = pts;
  m["total_evals"] = evals;
  m["warnings"] = r.warnings;
  return m;
}

inline void write_polyline_csv(std::ostream& os, const char* id_name,
                               const std::vector<std::vector<std::array<double, 2>>>& lines) {
  os << "r,z," << id_name << "\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (const auto& pt : lines[i])
      os << to_full_string(pt[0]) << "," << to_full_string(pt[1]) << "," << i
         << "\n";
}

}  // namespace casim
