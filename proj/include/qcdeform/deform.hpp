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

#ifndef QCDEFORM_DEFORM_HPP
#define QCDEFORM_DEFORM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beltrami.hpp"
#include "errors.hpp"
#include "integral_ops.hpp"
#include "parallel.hpp"
#include "series.hpp"
#include "spaces.hpp"

namespace qcdeform {

/// Find mu supported on `disk` so that h o f has Taylor coefficients
/// c_k + d_k for k = j+1..n and H-norm ||f|| + a.
struct DeformationProblem {
  HoloSeries f;
  SpaceSpec space = SpaceSpec::hardy();
  Disk disk;
  int j = 1;
  int n = 3;
  std::vector<cplx> d;  ///< shifts for k = j+1..n
  double a = 0.0;
  double eps = 0.0;     ///< bound on |d_k| and |a|
};

struct DeformOptions {
  Resolution quad;
  NeumannOptions neumann;
  double rho_s = 0.9;        ///< sampling circle for h o f
  int samples = 1024;        ///< points on the sampling circle
  double alias_tol = 1e-10;
  double coef_tol = 1e-8;
  double norm_tol = 1e-7;
  int max_newton = 30;
  double fd_step = 1e-7;     ///< relative forward-difference step
  double mu_cap = 0.5;       ///< steps with sup |mu| >= mu_cap are rejected
  double eps0 = 1e-2;
  double cond_max = 1e12;
};

struct HypothesisFlags {
  bool f_not_polynomial_le_n = false;
  int f_effective_degree = 0;
  double gap = 0.0;          ///< dist(f(closed disk), support disk), sampled
  bool eps_below_eps0 = false;
};

struct Mu0 {
  Density mu;
  std::vector<DensityTerm> terms;
  cplx mean = 0.0;              ///< disk average of mu0, unit modulus
  cplx first_variation = 0.0;   ///< (T mu0 o f, f)_H, real positive
  double sup = 0.0;
  double condition = 0.0;
};

struct DeformationReport {
  bool converged = false;
  std::vector<cplx> coef_residuals;
  double max_coef_residual = 0.0;
  double norm_residual = 0.0;
  double target_norm = 0.0;
  double achieved_norm = 0.0;
  double mu_sup = 0.0;
  double m_est = 0.0;           ///< sup |mu| / eps
  int newton_iterations = 0;
  std::vector<double> residual_trace;
  cplx origin_shift = 0.0;      ///< (h o f)(0) - f(0)
  int neumann_terms = 0;
  double conformality_defect = 0.0;  ///< sup |dh/dwbar| at probes on f(circle)
  HypothesisFlags flags;
  double mu0_sup = 0.0;
  cplx mu0_mean = 0.0;
  double basis_condition = 0.0;
};

struct DeformationResult {
  std::vector<cplx> xi;  ///< xi_{j+1..n}
  double tau = 0.0;
  Density mu;
  QcMap map;
  HoloSeries composed;   ///< recovered h o f
  DeformationReport report;
};

/// Newton failure; carries the best iterate found.
class DeformationNonConvergence : public NonConvergence {
 public:
  DeformationNonConvergence(const std::string& what, DeformationResult partial)
      : NonConvergence(what, partial.report.residual_trace), partial_(std::move(partial)) {}
  const DeformationResult& partial() const { return partial_; }

 private:
  DeformationResult partial_;
};

/// Taylor coefficients of g o f from samples on |z| = rho_s. Coefficients
/// whose sampled magnitude is below the round-off floor are set to zero.
template <class G>
HoloSeries composition_series(const HoloSeries& f, G&& g, const DeformOptions& opt = {}) {
  const auto s = sample_circle([&](cplx z) { return g(evaluate(f, z)); }, opt.rho_s,
                               static_cast<std::size_t>(opt.samples));
  const int nmax = opt.samples / 4;
  auto rec = coeffs_from_circle_samples(s, opt.rho_s, nmax, opt.alias_tol);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * rec.spectrum_max;
  std::vector<cplx> c(static_cast<std::size_t>(nmax) + 1);
  double rk = 1.0;
  for (int k = 0; k <= nmax; ++k) {
    const cplx v = rec.series[k];
    c[static_cast<std::size_t>(k)] = std::abs(v) * rk > floor ? v : cplx(0.0);
    rk *= opt.rho_s;
  }
  return HoloSeries(std::move(c), 0.0, opt.rho_s);
}

namespace detail {

inline double norm_of_recovered(const SpaceSpec& space, const HoloSeries& g) {
  const int eff = g.effective_degree();
  if (eff > space.n_norm())
    throw ResolutionError("norm: composed series has coefficients beyond the norm truncation");
  return hilbert_norm(space, g.truncated(std::max(eff, 1)).with_radius(kInf));
}

inline HoloSeries as_unbounded(const HoloSeries& g) { return g.with_radius(kInf); }

}  // namespace detail

inline double hnorm_of_composition(const SpaceSpec& space, const HoloSeries& f, const QcMap& h,
                                   const DeformOptions& opt = {}) {
  return detail::norm_of_recovered(space, composition_series(f, h, opt));
}

/// (T mu o f, f)_H; its real part over ||f|| is the first variation of the
/// norm of (id + T mu) o f.
inline cplx first_variation(const SpaceSpec& space, const HoloSeries& f, const Density& mu,
                            const DeformOptions& opt = {}) {
  const HoloSeries g = composition_series(f, [&](cplx w) { return cauchy_T(mu, w); }, opt);
  const int top = std::min(space.n_norm(), g.degree());
  const int fe = f.effective_degree();
  if (fe > space.n_norm()) throw DomainError("first_variation: f exceeds the norm truncation");
  cplx acc = 0.0;
  for (int k = 0; k <= std::min(top, fe); ++k) acc += space.weight(k) * g[k] * std::conj(f[k]);
  return acc;
}

namespace detail {

inline double norm_of_f(const DeformationProblem& p) {
  const int fe = p.f.effective_degree();
  if (fe > p.space.n_norm()) throw DomainError("deform: f exceeds the norm truncation");
  return hilbert_norm(p.space, p.f.truncated(std::max(fe, 1)).with_radius(kInf));
}

/// Rows R_k(b) = sum_{m=1..k} <b, phi_{m+1}> [z^k] (f - c0)^m for k = j+1..n:
/// the first-order change of the k-th coefficient of h o f.
inline Eigen::MatrixXcd response_rows(const DeformationProblem& p, const std::vector<Density>& basis) {
  const cplx c0 = p.f[0];
  const int rows = p.n - p.j;
  std::vector<HoloSeries> powers;  // (f - c0)^m, m = 1..n
  const HoloSeries g = add_constant(p.f.truncated(std::max(p.n, 1)).with_radius(kInf), -c0);
  HoloSeries pw = g;
  for (int m = 1; m <= p.n; ++m) {
    powers.push_back(pw);
    pw = pw * g;
  }
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    std::vector<cplx> pair(static_cast<std::size_t>(p.n) + 1);
    for (int m = 1; m <= p.n; ++m)
      pair[static_cast<std::size_t>(m)] = pairing(basis[b], PoleKernel{c0, m + 1}).value;
    for (int r = 0; r < rows; ++r) {
      const int k = p.j + 1 + r;
      cplx acc = 0.0;
      for (int m = 1; m <= k; ++m) acc += pair[static_cast<std::size_t>(m)] * powers[static_cast<std::size_t>(m - 1)][k];
      R(r, static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return R;
}

inline double condition_number(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Measured hypotheses of the deformation theorem; throws on violations of
/// the problem invariants that make the construction meaningless.
inline HypothesisFlags check_problem(const DeformationProblem& p, const DeformOptions& opt = {}) {
  if (p.j < 0 || p.n <= p.j) throw DomainError("deform: need 0 <= j < n");
  if (static_cast<int>(p.d.size()) != p.n - p.j) throw DomainError("deform: need n - j targets");
  if (p.f[p.j] == cplx(0.0)) throw DomainError("deform: leading coefficient c_j vanishes");
  if (p.f.is_laurent() || p.f.center() != cplx(0.0)) throw DomainError("deform: f must be a Taylor series at 0");
  if (!(p.f.radius() > opt.rho_s)) throw DomainError("deform: f must converge beyond the sampling circle");
  if (p.eps < 0.0) throw DomainError("deform: eps must be nonnegative");
  for (const cplx& x : p.d)
    if (std::abs(x) > p.eps * (1.0 + 1e-12)) throw DomainError("deform: |d_k| exceeds eps");
  if (std::abs(p.a) > p.eps * (1.0 + 1e-12)) throw DomainError("deform: |a| exceeds eps");
  HypothesisFlags h;
  h.f_effective_degree = p.f.effective_degree();
  h.f_not_polynomial_le_n = h.f_effective_degree > p.n;
  h.eps_below_eps0 = p.eps <= opt.eps0;
  // f - w0 zero-free on the closed disk => min modulus sits on the boundary.
  const double rb = std::isfinite(p.f.radius()) ? std::min(1.0, p.f.radius() * (1.0 - 1e-9)) : 1.0;
  const int m = 2048;
  double dmin = std::numeric_limits<double>::infinity(), winding = 0.0;
  cplx prev = evaluate(p.f, rb) - p.disk.center;
  for (int k = 1; k <= m; ++k) {
    const cplx cur = evaluate(p.f, std::polar(rb, 2.0 * std::numbers::pi * k / m)) - p.disk.center;
    dmin = std::min(dmin, std::abs(cur));
    winding += std::arg(cur / prev);
    prev = cur;
  }
  const int zeros = static_cast<int>(std::lround(winding / (2.0 * std::numbers::pi)));
  h.gap = zeros == 0 ? dmin - p.disk.radius : -p.disk.radius;
  if (!(h.gap > 0.0)) throw DomainError("deform: support disk meets the closure of f(D)");
  return h;
}

/// mu0 in span{conj(phi_l), l = j+1..n} + span{1} with zero first-order
/// effect on the constrained coefficients and unit-modulus disk average, so
/// that T mu0(w) = mean * r^2 / (w - w0) + O(|w - w0|^-2) off the disk. The
/// phase is chosen so the first norm variation is real positive.
inline Mu0 build_mu0(const DeformationProblem& p, const DeformOptions& opt = {}) {
  const cplx c0 = p.f[0];
  const double dist = std::abs(p.disk.center - c0);
  std::vector<DensityTerm> basis_terms;
  for (int l = p.j + 1; l <= p.n; ++l)
    basis_terms.push_back(DensityTerm{std::pow(dist, l), ConjPole{c0, l}});
  basis_terms.push_back(DensityTerm{1.0, Monomial{0, 0}});
  std::vector<Density> basis;
  for (const auto& t : basis_terms) basis.emplace_back(p.disk, opt.quad, std::vector<DensityTerm>{t});

  const auto nb = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd S(nb, nb);
  S.topRows(nb - 1) = detail::response_rows(p, basis);
  const auto mean = [&](const Density& x) {
    return -pairing(x, [](cplx) { return cplx(1.0); }).value / (p.disk.radius * p.disk.radius);
  };
  for (Eigen::Index b = 0; b < nb; ++b) S(nb - 1, b) = mean(basis[static_cast<std::size_t>(b)]);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nb);
  rhs(nb - 1) = 1.0;
  for (Eigen::Index r = 0; r < nb; ++r) {
    const double s = S.row(r).cwiseAbs().maxCoeff();
    if (s == 0.0) throw IllConditioned("build_mu0: vanishing constraint row");
    S.row(r) /= s;
    rhs(r) /= s;
  }
  Mu0 out;
  out.condition = detail::condition_number(S);
  if (!(out.condition <= opt.cond_max))
    throw IllConditioned("build_mu0: basis condition number " + std::to_string(out.condition));
  const Eigen::VectorXcd c = S.fullPivLu().solve(rhs);
  for (Eigen::Index b = 0; b < nb; ++b) {
    DensityTerm t = basis_terms[static_cast<std::size_t>(b)];
    t.coef *= c(b);
    out.terms.push_back(t);
  }
  Density mu0(p.disk, opt.quad, out.terms);
  const cplx v = first_variation(p.space, p.f, mu0, opt);
  if (!(std::abs(v) > 1e-14))
    throw IllConditioned("build_mu0: mu0 does not move the norm to first order");
  const cplx phase = std::conj(v) / std::abs(v);
  for (auto& t : out.terms) t.coef *= phase;
  out.mu = Density(p.disk, opt.quad, out.terms);
  out.first_variation = v * phase;
  out.mean = mean(out.mu);
  out.sup = out.mu.sup_bound();
  return out;
}

/// mu = sum xi_l conj(phi_l) + tau mu0.
inline Density ansatz_mu(const DeformationProblem& p, const Mu0& mu0, const std::vector<cplx>& xi,
                         double tau, const DeformOptions& opt = {}) {
  std::vector<DensityTerm> t;
  for (int l = p.j + 1; l <= p.n; ++l)
    t.push_back(DensityTerm{xi[static_cast<std::size_t>(l - p.j - 1)], ConjPole{p.f[0], l}});
  for (auto x : mu0.terms) {
    x.coef *= tau;
    t.push_back(x);
  }
  return Density(p.disk, opt.quad, std::move(t));
}

struct LinearStart {
  std::vector<cplx> xi;
  double tau = 0.0;
};

/// First-order solution: coefficients from R xi = d, then tau from the norm
/// equation Re(T mu o f, f)_H = a ||f||_H.
inline LinearStart linearized_init(const DeformationProblem& p, const Mu0& mu0, const DeformOptions& opt = {}) {
  std::vector<Density> basis;
  for (int l = p.j + 1; l <= p.n; ++l)
    basis.emplace_back(p.disk, opt.quad, std::vector<DensityTerm>{DensityTerm{1.0, ConjPole{p.f[0], l}}});
  const Eigen::MatrixXcd A = detail::response_rows(p, basis);
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(p.d.size()));
  for (std::size_t k = 0; k < p.d.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = p.d[k];
  const Eigen::VectorXcd xi = A.fullPivLu().solve(rhs);
  LinearStart s;
  s.xi.assign(xi.data(), xi.data() + xi.size());
  const Density mu_xi = ansatz_mu(p, mu0, s.xi, 0.0, opt);
  const double gx = first_variation(p.space, p.f, mu_xi, opt).real();
  s.tau = (p.a * detail::norm_of_f(p) - gx) / mu0.first_variation.real();
  return s;
}

namespace detail {

struct Evaluation {
  Eigen::VectorXd F;  // scaled residual: coefficients / coef_tol, norm / norm_tol
  std::vector<cplx> coef;
  double norm_res = 0.0;
  double achieved_norm = 0.0;
  double mu_sup = 0.0;
  bool admissible = false;
  Density mu;
  QcMap map;
  HoloSeries composed;
};

inline std::pair<std::vector<cplx>, double> unpack(const Eigen::VectorXd& x, int m) {
  std::vector<cplx> xi(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) xi[static_cast<std::size_t>(i)] = cplx(x(2 * i), x(2 * i + 1));
  return {xi, x(2 * m)};
}

inline Evaluation evaluate_residual(const DeformationProblem& p, const Mu0& mu0, const Eigen::VectorXd& x,
                                    double target_norm, const DeformOptions& opt, bool keep = false) {
  const int m = p.n - p.j;
  const auto [xi, tau] = unpack(x, m);
  Evaluation e;
  e.mu = ansatz_mu(p, mu0, xi, tau, opt);
  e.mu_sup = e.mu.sup_bound();
  e.admissible = e.mu_sup < opt.mu_cap;
  if (!e.admissible) return e;
  e.map = build_map(e.mu, opt.neumann);
  e.composed = composition_series(p.f, e.map, opt);
  e.F.resize(2 * m + 1);
  e.coef.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int k = p.j + 1 + i;
    const cplx r = e.composed[k] - (p.f[k] + p.d[static_cast<std::size_t>(i)]);
    e.coef[static_cast<std::size_t>(i)] = r;
    e.F(2 * i) = r.real() / opt.coef_tol;
    e.F(2 * i + 1) = r.imag() / opt.coef_tol;
  }
  e.achieved_norm = norm_of_recovered(p.space, e.composed);
  e.norm_res = e.achieved_norm - target_norm;
  e.F(2 * m) = e.norm_res / opt.norm_tol;
  if (!keep) e.map = QcMap();
  return e;
}

inline bool converged(const Evaluation& e) {
  return e.admissible && e.F.cwiseAbs().maxCoeff() < 1.0;
}

}  // namespace detail

/// Damped Newton on the real system (Re xi, Im xi, tau) -> residuals of the
/// constrained coefficients and of the norm, evaluated on the constructed h.
inline DeformationResult solve_deformation(const DeformationProblem& p, const DeformOptions& opt = {}) {
  DeformationReport rep;
  rep.flags = check_problem(p, opt);
  const Mu0 mu0 = build_mu0(p, opt);
  rep.mu0_sup = mu0.sup;
  rep.mu0_mean = mu0.mean;
  rep.basis_condition = mu0.condition;
  const double target_norm = detail::norm_of_f(p) + p.a;
  const int m = p.n - p.j;
  const int dim = 2 * m + 1;

  const LinearStart ls = linearized_init(p, mu0, opt);
  Eigen::VectorXd x(dim);
  for (int i = 0; i < m; ++i) {
    x(2 * i) = ls.xi[static_cast<std::size_t>(i)].real();
    x(2 * i + 1) = ls.xi[static_cast<std::size_t>(i)].imag();
  }
  x(2 * m) = ls.tau;
  {
    // keep the start admissible; sup |mu| is homogeneous in x
    const double s0 = ansatz_mu(p, mu0, detail::unpack(x, m).first, x(2 * m), opt).sup_bound();
    if (s0 >= opt.mu_cap) x *= 0.9 * opt.mu_cap / s0;
  }
  Eigen::VectorXd scale = x.cwiseAbs();
  const double smax = std::max(scale.maxCoeff(), 1e-300);
  for (int i = 0; i < dim; ++i) scale(i) = std::max(scale(i), 1e-3 * smax);

  auto cur = detail::evaluate_residual(p, mu0, x, target_norm, opt);
  rep.residual_trace.push_back(cur.F.norm());
  int iter = 0;
  std::string failure;
  while (!detail::converged(cur)) {
    if (iter >= opt.max_newton) {
      failure = "Newton iteration limit reached";
      break;
    }
    Eigen::MatrixXd J(dim, dim);
    std::vector<Eigen::VectorXd> cols(static_cast<std::size_t>(dim));
    std::vector<char> ok(static_cast<std::size_t>(dim), 1);
    parallel_for(dim, [&](int i) {
      Eigen::VectorXd xp = x;
      const double h = opt.fd_step * std::max(std::abs(x(i)), scale(i));
      xp(i) += h;
      const auto e = detail::evaluate_residual(p, mu0, xp, target_norm, opt);
      if (!e.admissible) {
        ok[static_cast<std::size_t>(i)] = 0;
        return;
      }
      cols[static_cast<std::size_t>(i)] = (e.F - cur.F) / h;
    });
    if (std::find(ok.begin(), ok.end(), 0) != ok.end()) {
      failure = "Jacobian probe left the admissible region";
      break;
    }
    for (int i = 0; i < dim; ++i) J.col(i) = cols[static_cast<std::size_t>(i)];
    const Eigen::VectorXd dx = J.fullPivLu().solve(-cur.F);
    double lambda = 1.0;
    bool accepted = false;
    for (int ls_it = 0; ls_it < 20; ++ls_it, lambda *= 0.5) {
      const Eigen::VectorXd xt = x + lambda * dx;
      auto trial = detail::evaluate_residual(p, mu0, xt, target_norm, opt);
      if (trial.admissible && trial.F.norm() < cur.F.norm()) {
        x = xt;
        cur = std::move(trial);
        accepted = true;
        break;
      }
    }
    ++iter;
    rep.residual_trace.push_back(cur.F.norm());
    if (!accepted) {
      failure = "line search failed (step rejected or sup |mu| reached the cap)";
      break;
    }
  }

  const auto fin = detail::evaluate_residual(p, mu0, x, target_norm, opt, true);
  DeformationResult res;
  const auto [xi, tau] = detail::unpack(x, m);
  res.xi = xi;
  res.tau = tau;
  res.mu = fin.mu;
  res.map = fin.map;
  res.composed = fin.composed;
  rep.converged = failure.empty();
  rep.newton_iterations = iter;
  rep.coef_residuals = fin.coef;
  for (const cplx& r : fin.coef) rep.max_coef_residual = std::max(rep.max_coef_residual, std::abs(r));
  rep.norm_residual = std::abs(fin.norm_res);
  rep.target_norm = target_norm;
  rep.achieved_norm = fin.achieved_norm;
  rep.mu_sup = fin.mu_sup;
  rep.m_est = p.eps > 0.0 ? fin.mu_sup / p.eps : 0.0;
  rep.neumann_terms = fin.map.neumann_terms();
  rep.origin_shift = fin.composed[0] - p.f[0];
  {
    // h must be conformal on f(D): probe dh/dwbar on f of the unit circle
    const double rb = std::isfinite(p.f.radius()) ? std::min(1.0, p.f.radius() * (1.0 - 1e-9)) : 1.0;
    std::vector<cplx> probes;
    for (int k = 0; k < 16; ++k) probes.push_back(evaluate(p.f, std::polar(rb, 2.0 * std::numbers::pi * k / 16)));
    rep.conformality_defect = verify_map(fin.map, probes).max_conformality_defect;
  }
  res.report = rep;
  if (!failure.empty()) throw DeformationNonConvergence("solve_deformation: " + failure, std::move(res));
  return res;
}

/// Same problem with every target and eps multiplied by s.
inline DeformationProblem scaled_targets(DeformationProblem p, double s) {
  for (auto& x : p.d) x *= s;
  p.a *= s;
  p.eps *= s;
  return p;
}

}  // namespace qcdeform

#endif  // QCDEFORM_DEFORM_HPP
