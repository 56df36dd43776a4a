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

#ifndef QCDEFORM_CONFIG_HPP
#define QCDEFORM_CONFIG_HPP

#include <cstdint>
#include <string>

#include "deform.hpp"
#include "errors.hpp"
#include "spaces.hpp"

namespace qcdeform {

enum class OutputFormat { json, csv };

/// Resolved settings of one run. Defaults match the library defaults.
struct RunConfig {
  int degree = 64;          ///< series degree N
  int n_norm = kDefaultNormTruncation;
  Resolution quad;
  double rho_s = 0.9;
  int samples = 1024;       ///< M, points on the sampling circle
  double coeff_tol = 1e-8;
  double norm_tol = 1e-7;
  double neumann_tol = 1e-12;
  std::uint64_t seed = 1;
  std::string space = "hardy";
  OutputFormat format = OutputFormat::json;

  void validate() const {
    require(degree >= 1, "config: degree must be >= 1");
    require(n_norm >= degree, "config: n_norm must be >= degree");
    require(quad.n_rad >= 4 && quad.n_ang >= 8, "config: quadrature too coarse");
    require(rho_s > 0.0 && rho_s < 1.0, "config: rho_s must lie in (0, 1)");
    require(is_power_of_two(static_cast<std::size_t>(samples)) && samples >= 4 * degree,
            "config: samples must be a power of two >= 4 * degree");
    require(coeff_tol > 0.0 && norm_tol > 0.0 && neumann_tol > 0.0, "config: tolerances must be positive");
    make_space();
  }

  SpaceSpec make_space() const {
    if (space == "hardy") return SpaceSpec::hardy(n_norm);
    if (space == "bergman") return SpaceSpec::bergman(n_norm);
    if (space == "bergman_measure") return SpaceSpec::bergman_measure(n_norm);
    if (space == "dirichlet") return SpaceSpec::dirichlet(n_norm);
    throw DomainError("config: unknown space '" + space + "'");
  }

  NeumannOptions neumann_options() const {
    NeumannOptions o;
    o.tol = neumann_tol;
    return o;
  }

  DeformOptions deform_options() const {
    DeformOptions o;
    o.quad = quad;
    o.neumann = neumann_options();
    o.rho_s = rho_s;
    o.samples = samples;
    o.coef_tol = coeff_tol;
    o.norm_tol = norm_tol;
    return o;
  }
};

}  // namespace qcdeform

#endif  // QCDEFORM_CONFIG_HPP
