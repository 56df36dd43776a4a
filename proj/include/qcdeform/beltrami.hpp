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

#ifndef QCDEFORM_BELTRAMI_HPP
#define QCDEFORM_BELTRAMI_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integral_ops.hpp"

namespace qcdeform {

struct NeumannOptions {
  double tol = 1e-12;
  int max_terms = 20;
  double kappa_max = 0.5;  ///< largest admissible sup |mu|
};

struct NeumannResult {
  Density rho;
  int terms = 0;                   ///< number of summed terms
  double residual = 0.0;           ///< sup norm of the first dropped term
  std::vector<double> term_norms;  ///< sup norms of all computed terms
};

/// rho = mu + mu Pi mu + mu Pi (mu Pi mu) + ..., summed on mu's grid.
///
/// The first term keeps mu's closed form; later terms are carried as
/// samples. Stops at the first term whose sup norm is below tol, which is
/// not added.
inline NeumannResult solve_neumann(const Density& mu, const NeumannOptions& opt = {}) {
  const double kappa = mu.sup_bound();
  if (kappa > opt.kappa_max)
    throw DomainError("solve_neumann: sup |mu| = " + std::to_string(kappa) + " exceeds " +
                      std::to_string(opt.kappa_max));
  NeumannResult out;
  out.term_norms.push_back(kappa);
  if (kappa < opt.tol) {
    out.rho = Density::zero(mu.disk(), mu.resolution());
    out.residual = kappa;
    return out;
  }
  Grid acc = Grid::Zero(mu.resolution().n_rad, mu.resolution().n_ang);
  Density term = mu;
  out.terms = 1;
  for (;;) {
    const Grid next = mu.values().cwiseProduct(beurling_on_grid(term));
    const double norm = next.cwiseAbs().maxCoeff();
    out.term_norms.push_back(norm);
    const double prev = out.term_norms[out.term_norms.size() - 2];
    if (norm < opt.tol) {
      out.residual = norm;
      break;
    }
    if (norm >= prev)
      throw DivergenceError("solve_neumann: terms stopped decaying", out.term_norms);
    if (out.terms >= opt.max_terms)
      throw NonConvergence("solve_neumann: max_terms reached", out.term_norms);
    acc += next;
    ++out.terms;
    term = Density::from_grid(mu.disk(), mu.resolution(), next);
  }
  out.rho = out.terms > 1 ? mu.plus_samples(acc) : mu;
  return out;
}

/// h(w) = w + T rho(w): conformal off the disk, with Beltrami coefficient
/// mu_input inside and h(w) - w -> 0 at infinity.
class QcMap {
 public:
  QcMap() = default;
  QcMap(Density mu, NeumannResult sol)
      : mu_(std::move(mu)), rho_(std::move(sol.rho)), terms_(sol.terms),
        residual_(sol.residual), term_norms_(std::move(sol.term_norms)) {}

  cplx operator()(cplx w) const { return w + cauchy_T(rho_, w); }

  /// Analytic Wirtinger derivatives: h_w = 1 + Pi rho, h_wbar = rho (zero outside).
  cplx dw(cplx w) const { return 1.0 + beurling_Pi(rho_, w); }
  cplx dwbar(cplx w) const { return disk().contains(w) ? rho_(w) : cplx(0.0); }

  const Disk& disk() const { return rho_.disk(); }
  const Density& rho() const { return rho_; }
  const Density& mu_input() const { return mu_; }
  int neumann_terms() const { return terms_; }
  double series_residual() const { return residual_; }
  const std::vector<double>& term_norms() const { return term_norms_; }

 private:
  Density mu_;
  Density rho_;
  int terms_ = 0;
  double residual_ = 0.0;
  std::vector<double> term_norms_;
};

inline QcMap build_map(const Density& mu, const NeumannOptions& opt = {}) {
  return QcMap(mu, solve_neumann(mu, opt));
}

struct MapVerification {
  double max_mu_deviation = 0.0;       ///< interior |mu_h - mu_input|
  double max_conformality_defect = 0.0;  ///< exterior |dh/dwbar|
  double sup_mu_h = 0.0;
  double min_jacobian = 0.0;
  int interior_probes = 0;
  int exterior_probes = 0;
  std::vector<std::string> warnings;
  bool homeomorphism_ok() const { return min_jacobian > 0.0; }
};

/// Probe set: polar rings inside the disk at radii 0.1r..0.9r and outside at
/// 1.2r..3r, `per_ring` points each.
inline std::vector<cplx> default_probes(const Disk& disk, int per_ring = 12) {
  std::vector<cplx> p;
  for (double s : {0.1, 0.35, 0.6, 0.85, 1.2, 1.6, 2.2, 3.0})
    for (int k = 0; k < per_ring; ++k)
      p.push_back(disk.from_unit(std::polar(s, 2.0 * std::numbers::pi * (k + 0.25 * s) / per_ring)));
  return p;
}

/// Central finite-difference Beltrami coefficient of h at the probes.
/// Probes closer than 2 steps to the circle |w - w0| = r are skipped since
/// h is only Lipschitz across it.
inline MapVerification verify_map(const QcMap& h, const std::vector<cplx>& probes, double step = 1e-4) {
  MapVerification v;
  v.min_jacobian = std::numeric_limits<double>::infinity();
  const Disk& d = h.disk();
  const cplx I(0.0, 1.0);
  for (const cplx w : probes) {
    const double dist = std::abs(std::abs(w - d.center) - d.radius);
    if (dist < 2.0 * step) continue;
    const cplx hx = (h(w + step) - h(w - step)) / (2.0 * step);
    const cplx hy = (h(w + I * step) - h(w - I * step)) / (2.0 * step);
    const cplx hz = 0.5 * (hx - I * hy);
    const cplx hzb = 0.5 * (hx + I * hy);
    const double jac = std::norm(hz) - std::norm(hzb);
    v.min_jacobian = std::min(v.min_jacobian, jac);
    if (jac <= 0.0) v.warnings.push_back("non-positive Jacobian near w = " + std::to_string(w.real()) + "," + std::to_string(w.imag()));
    const cplx mu_h = hzb / hz;
    v.sup_mu_h = std::max(v.sup_mu_h, std::abs(mu_h));
    if (d.contains(w)) {
      ++v.interior_probes;
      v.max_mu_deviation = std::max(v.max_mu_deviation, std::abs(mu_h - h.mu_input()(w)));
    } else {
      ++v.exterior_probes;
      v.max_conformality_defect = std::max(v.max_conformality_defect, std::abs(hzb));
    }
  }
  if (v.interior_probes + v.exterior_probes == 0) v.min_jacobian = 0.0;
  return v;
}

}  // namespace qcdeform

#endif  // QCDEFORM_BELTRAMI_HPP
