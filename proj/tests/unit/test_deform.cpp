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

#include <gtest/gtest.h>

#include <cmath>

#include "qcdeform/deform.hpp"

using namespace qcdeform;

namespace {

DeformationProblem identity_problem(double scale) {
  DeformationProblem p;
  p.f = HoloSeries(std::vector<cplx>{0.0, 1.0});
  p.disk = Disk(cplx(2.2, 0.0), 1.0);
  p.j = 1;
  p.n = 3;
  p.d = {0.01 * scale, 0.005 * scale};
  p.a = 0.001 * scale;
  p.eps = 0.01 * scale;
  return p;
}

// First-order coefficient response, computed by sampling T b o f on a circle.
cplx sampled_response(const DeformationProblem& p, const Density& b, int k) {
  return composition_series(p.f, [&](cplx w) { return cauchy_T(b, w); })[k];
}

}  // namespace

TEST(Deform, ZeroTargetsGiveIdentity) {
  auto p = identity_problem(0.0);
  const auto r = solve_deformation(p);
  EXPECT_EQ(r.report.newton_iterations, 0);
  EXPECT_EQ(r.report.mu_sup, 0.0);
  EXPECT_LT(r.report.max_coef_residual, 1e-14);
  EXPECT_LT(r.report.norm_residual, 1e-14);
  EXPECT_EQ(r.report.m_est, 0.0);
}

TEST(Deform, Mu0Constraints) {
  const auto p = identity_problem(1.0);
  const Mu0 m = build_mu0(p);
  for (int k = p.j + 1; k <= p.n; ++k) EXPECT_NEAR(std::abs(sampled_response(p, m.mu, k)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.mean), 1.0, 1e-12);
  EXPECT_GT(m.first_variation.real(), 0.0);
  EXPECT_NEAR(m.first_variation.imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(first_variation(p.space, p.f, m.mu) - m.first_variation), 0.0, 1e-14);
  // average of mu0 seen from far away: T mu0 ~ mean r^2 / (w - w0)
  const cplx w = p.disk.center + 1e4;
  EXPECT_NEAR(std::abs(cauchy_T(m.mu, w) * (w - p.disk.center) - m.mean), 0.0, 1e-3);
}

TEST(Deform, LinearizedInitSolvesFirstOrderSystem) {
  const auto p = identity_problem(1.0);
  const Mu0 m = build_mu0(p);
  const auto s = linearized_init(p, m);
  const Density mu = ansatz_mu(p, m, s.xi, s.tau);
  for (int k = p.j + 1; k <= p.n; ++k)
    EXPECT_NEAR(std::abs(sampled_response(p, mu, k) - p.d[static_cast<std::size_t>(k - p.j - 1)]), 0.0, 1e-13);
  const double fv = first_variation(p.space, p.f, mu).real();
  EXPECT_NEAR(fv, p.a * 1.0, 1e-13);  // ||f||_H2 = 1
  auto p2 = scaled_targets(p, 2.0);
  const auto s2 = linearized_init(p2, m);
  for (std::size_t i = 0; i < s.xi.size(); ++i) EXPECT_NEAR(std::abs(s2.xi[i] - 2.0 * s.xi[i]), 0.0, 1e-10);
  EXPECT_NEAR(s2.tau, 2.0 * s.tau, 1e-10);
}

TEST(Deform, SingleTargetIsOneByOneSolve) {
  DeformationProblem p = identity_problem(1.0);
  p.n = 2;
  p.d = {0.003};
  p.a = 0.0;
  const Mu0 m = build_mu0(p);
  const auto s = linearized_init(p, m);
  const Density basis(p.disk, {}, {DensityTerm{1.0, ConjPole{0.0, 2}}});
  EXPECT_NEAR(std::abs(s.xi[0] - 0.003 / sampled_response(p, basis, 2)), 0.0, 1e-10);
}

TEST(Deform, ConvergesOnFeasibleGeometry) {
  const auto p = identity_problem(0.25);
  const auto r = solve_deformation(p);
  const auto& rep = r.report;
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.newton_iterations, 15);
  EXPECT_LT(rep.max_coef_residual, 1e-8);
  EXPECT_LT(rep.norm_residual, 1e-7);
  EXPECT_LT(rep.mu_sup, 0.5);
  EXPECT_LT(rep.conformality_defect, 1e-6);
  // for f = z the Taylor coefficients of h o f are those of h, i.e. pairings of rho
  for (int k = 2; k <= 3; ++k) {
    const cplx hk = pairing(r.map.rho(), PoleKernel{0.0, k + 1}).value;
    EXPECT_NEAR(std::abs(hk - p.d[static_cast<std::size_t>(k - 2)]), 0.0, 1e-8);
  }
  EXPECT_NEAR(std::abs(rep.origin_shift), std::abs(cauchy_T(r.map.rho(), 0.0)), 1e-12);
  EXPECT_FALSE(rep.flags.f_not_polynomial_le_n);
  EXPECT_NEAR(rep.flags.gap, 0.2, 1e-6);
}

TEST(Deform, LinearScalingOfSupNorm) {
  std::vector<double> m;
  for (double s : {0.25, 0.125, 0.0625}) m.push_back(solve_deformation(identity_problem(s)).report.m_est);
  EXPECT_NEAR(m[1] / m[0], 1.0, 0.25);
  EXPECT_NEAR(m[2] / m[0], 1.0, 0.25);
}

TEST(Deform, RoundTripRestoresCoefficients) {
  const auto p = identity_problem(0.125);
  const auto r = solve_deformation(p);
  DeformationProblem back = p;
  back.f = r.composed.truncated(std::max(r.composed.effective_degree(), 4)).with_radius(kInf);
  back.d = {-p.d[0], -p.d[1]};
  back.a = -p.a;
  back.disk = Disk(cplx(2.3, 0.0), 1.0);
  const auto r2 = solve_deformation(back);
  for (int k = 2; k <= 3; ++k) EXPECT_NEAR(std::abs(r2.composed[k] - p.f[k]), 0.0, 1e-8);
  EXPECT_NEAR(r2.report.achieved_norm, 1.0, 1e-7);
}

TEST(Deform, NonPolynomialBergman) {
  DeformationProblem p;
  p.f = HoloSeries::generate(40, [](int k) {
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    return k == 0 ? cplx(0.0) : cplx(0.5 * std::pow(0.3, k - 1) / fact);
  });  // 0.5 z exp(0.3 z)
  p.space = SpaceSpec::bergman();
  p.disk = Disk(cplx(0.0, 1.8), 0.9);
  p.j = 1;
  p.n = 3;
  p.d = {cplx(0.0005, 0.0002), cplx(-0.0003, 0.0)};
  p.a = 0.0004;
  p.eps = 0.0006;
  const auto r = solve_deformation(p);
  EXPECT_TRUE(r.report.flags.f_not_polynomial_le_n);
  EXPECT_LT(r.report.max_coef_residual, 1e-8);
  EXPECT_LT(r.report.norm_residual, 1e-7);
  EXPECT_NEAR(hnorm_of_composition(p.space, p.f, r.map), r.report.target_norm, 1e-7);
}

TEST(Deform, CompositionNorms) {
  const HoloSeries f(std::vector<cplx>{0.1, 0.6, cplx(0.0, 0.2)});
  const auto h = SpaceSpec::hardy();
  const QcMap id = build_map(Density::zero(Disk(cplx(3.0, 0.0), 0.5)));
  EXPECT_NEAR(hnorm_of_composition(h, f, id), hilbert_norm(h, f), 1e-14);
  const cplx c(0.3, -0.2);
  const auto shifted = composition_series(f, [&](cplx w) { return w + c; });
  EXPECT_NEAR(detail::norm_of_recovered(h, shifted), hilbert_norm(h, add_constant(f, c)), 1e-10);
}

TEST(Deform, FirstVariationMatchesFiniteDifference) {
  const HoloSeries f(std::vector<cplx>{0.1, 0.6, cplx(0.0, 0.2)});
  const auto space = SpaceSpec::bergman();
  const Disk d(cplx(2.5, 0.5), 0.7);
  const Density mu(d, {}, {DensityTerm{cplx(0.2, 0.1), Monomial{0, 0}}, DensityTerm{0.1, ConjPole{0.0, 2}}});
  const auto norm2 = [&](double t) {
    const auto g = composition_series(f, [&](cplx w) { return w + t * cauchy_T(mu, w); });
    const double n = detail::norm_of_recovered(space, g);
    return n * n;
  };
  const double t = 1e-3;
  const double fd = (norm2(t) - norm2(-t)) / (2.0 * t);
  EXPECT_NEAR(fd, 2.0 * first_variation(space, f, mu).real(), 1e-6);
}

TEST(Deform, ProblemChecks) {
  auto p = identity_problem(1.0);
  p.disk = Disk(cplx(1.5, 0.0), 0.6);
  EXPECT_THROW(check_problem(p), DomainError);
  p = identity_problem(1.0);
  p.d = {0.02, 0.0};
  EXPECT_THROW(check_problem(p), DomainError);
  p = identity_problem(1.0);
  p.n = 1;
  EXPECT_THROW(check_problem(p), DomainError);
  p = identity_problem(1.0);
  p.disk = Disk(cplx(40.0, 0.0), 0.01);
  p.n = 6;
  p.d.assign(5, 0.001);
  EXPECT_THROW(build_mu0(p), IllConditioned);
}

TEST(Deform, InfeasibleTargetsReportNonConvergence) {
  auto p = identity_problem(1.0);
  p.disk = Disk(cplx(3.0, 0.0), 0.3);
  try {
    solve_deformation(p);
    FAIL() << "expected non-convergence";
  } catch (const DeformationNonConvergence& e) {
    EXPECT_FALSE(e.partial().report.converged);
    EXPECT_LT(e.partial().report.mu_sup, 0.5);
    EXPECT_FALSE(e.trace().empty());
  }
}
