/*
   Copyright 2026 The qcdeform Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// JSON conversions for the command-line front end.

#ifndef QCDEFORM_TOOLS_JSON_IO_HPP
#define QCDEFORM_TOOLS_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qcdeform/qcdeform.hpp"

namespace qcdeform::io {

using nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// A complex number is either a real or a [re, im] pair.
inline cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("json: expected a number or [re, im], got " + j.dump());
}

inline json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

inline std::vector<cplx> complex_list(const json& j) {
  if (!j.is_array()) throw DomainError("json: expected an array, got " + j.dump());
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(complex_from(e));
  return out;
}

inline json to_json(const HoloSeries& f) {
  json j;
  j["lowest"] = f.lowest();
  j["coeffs"] = to_json(std::vector<cplx>(f.coeffs().begin(), f.coeffs().end()));
  if (std::isfinite(f.radius())) j["radius"] = f.radius();
  if (f.center() != cplx(0.0)) j["center"] = to_json(f.center());
  return j;
}

/// Either a bare coefficient array or {"coeffs": [...], "radius": r}.
/// Coefficients are padded with zeros up to `degree`.
inline HoloSeries series_from(const json& j, int degree = -1) {
  const json& c = j.is_object() ? j.at("coeffs") : j;
  std::vector<cplx> v = complex_list(c);
  if (v.empty()) throw DomainError("json: empty coefficient list");
  if (degree >= 0 && static_cast<int>(v.size()) < degree + 1) v.resize(static_cast<std::size_t>(degree) + 1, 0.0);
  const double radius = j.is_object() && j.contains("radius") ? j["radius"].get<double>() : kInf;
  const cplx center = j.is_object() && j.contains("center") ? complex_from(j["center"]) : cplx(0.0);
  return HoloSeries(std::move(v), center, radius);
}

inline Disk disk_from(const json& j) {
  return Disk(complex_from(j.at("center")), j.at("radius").get<double>());
}

inline json to_json(const Disk& d) { return {{"center", to_json(d.center)}, {"radius", d.radius}}; }

inline json to_json(const RunConfig& c) {
  return {{"degree", c.degree},
          {"n_norm", c.n_norm},
          {"n_rad", c.quad.n_rad},
          {"n_ang", c.quad.n_ang},
          {"rho_s", c.rho_s},
          {"samples", c.samples},
          {"coeff_tol", c.coeff_tol},
          {"norm_tol", c.norm_tol},
          {"neumann_tol", c.neumann_tol},
          {"seed", c.seed},
          {"space", c.space},
          {"format", c.format == OutputFormat::json ? "json" : "csv"}};
}

inline OutputFormat format_from(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw DomainError("config: format must be json or csv");
}

/// Fields present in j override c; unknown keys are rejected.
inline void merge(RunConfig& c, const json& j) {
  for (const auto& [k, v] : j.items()) {
    if (k == "degree") c.degree = v.get<int>();
    else if (k == "n_norm") c.n_norm = v.get<int>();
    else if (k == "n_rad") c.quad.n_rad = v.get<int>();
    else if (k == "n_ang") c.quad.n_ang = v.get<int>();
    else if (k == "rho_s") c.rho_s = v.get<double>();
    else if (k == "samples") c.samples = v.get<int>();
    else if (k == "coeff_tol") c.coeff_tol = v.get<double>();
    else if (k == "norm_tol") c.norm_tol = v.get<double>();
    else if (k == "neumann_tol") c.neumann_tol = v.get<double>();
    else if (k == "seed") c.seed = v.get<std::uint64_t>();
    else if (k == "space") c.space = v.get<std::string>();
    else if (k == "format") c.format = format_from(v.get<std::string>());
    else throw DomainError("config: unknown key '" + k + "'");
  }
}

inline DensityTerm term_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const cplx coef = j.contains("coef") ? complex_from(j["coef"]) : cplx(1.0);
  if (kind == "constant") return {coef, Monomial{0, 0}};
  if (kind == "monomial") return {coef, Monomial{j.at("p").get<int>(), j.at("q").get<int>()}};
  if (kind == "conj_pole") return {coef, ConjPole{complex_from(j.at("pole")), j.at("order").get<int>()}};
  throw DomainError("json: unknown density term kind '" + kind + "'");
}

inline json to_json(const DeformationReport& r) {
  return {{"converged", r.converged},
          {"coef_residuals", to_json(r.coef_residuals)},
          {"max_coef_residual", r.max_coef_residual},
          {"norm_residual", r.norm_residual},
          {"target_norm", r.target_norm},
          {"achieved_norm", r.achieved_norm},
          {"mu_sup", r.mu_sup},
          {"m_est", r.m_est},
          {"newton_iterations", r.newton_iterations},
          {"residual_trace", r.residual_trace},
          {"origin_shift", to_json(r.origin_shift)},
          {"neumann_terms", r.neumann_terms},
          {"conformality_defect", r.conformality_defect},
          {"hypotheses",
           {{"f_not_polynomial_le_n", r.flags.f_not_polynomial_le_n},
            {"f_effective_degree", r.flags.f_effective_degree},
            {"gap", r.flags.gap},
            {"eps_below_eps0", r.flags.eps_below_eps0}}},
          {"mu0_sup", r.mu0_sup},
          {"mu0_mean", to_json(r.mu0_mean)},
          {"basis_condition", r.basis_condition}};
}

inline json to_json(const MapVerification& v) {
  return {{"max_mu_deviation", v.max_mu_deviation},
          {"max_conformality_defect", v.max_conformality_defect},
          {"sup_mu_h", v.sup_mu_h},
          {"min_jacobian", v.min_jacobian},
          {"interior_probes", v.interior_probes},
          {"exterior_probes", v.exterior_probes},
          {"homeomorphism_ok", v.homeomorphism_ok()},
          {"warnings", v.warnings}};
}

}  // namespace qcdeform::io

#endif  // QCDEFORM_TOOLS_JSON_IO_HPP
