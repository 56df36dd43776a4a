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

#include "qcdeform/beltrami.hpp"

using namespace qcdeform;

namespace {

// Exact solution for constant mu = k on D(w0, r).
cplx constant_mu_map(cplx k, const Disk& d, cplx w) {
  if (std::abs(w - d.center) < d.radius) return w + k * std::conj(w - d.center);
  return w + k * d.radius * d.radius / (w - d.center);
}

}  // namespace

TEST(Beltrami, ZeroCoefficientIsIdentity) {
  const Disk d(cplx(3.0, 0.0), 0.5);
  const QcMap h = build_map(Density::zero(d));
  EXPECT_EQ(h.neumann_terms(), 0);
  for (cplx w : {cplx(3.1, 0.1), cplx(0.0, 0.0), cplx(5.0, 2.0)}) EXPECT_EQ(h(w), w);
}

TEST(Beltrami, ConstantCoefficientExact) {
  const Disk d(cplx(3.0, 0.0), 0.5);
  for (cplx k : {cplx(0.01), cplx(0.0, 0.05), cplx(-0.06, 0.08)}) {
    const QcMap h = build_map(Density::constant(d, k));
    EXPECT_LE(h.neumann_terms(), 2);
    for (cplx w : default_probes(d)) EXPECT_NEAR(std::abs(h(w) - constant_mu_map(k, d, w)), 0.0, 1e-12);
    const auto v = verify_map(h, default_probes(d));
    EXPECT_LT(v.max_mu_deviation, 1e-6);
    EXPECT_LT(v.max_conformality_defect, 1e-6);
    EXPECT_TRUE(v.homeomorphism_ok());
  }
}

TEST(Beltrami, ConjPoleCoefficientVerifies) {
  const Disk d(cplx(3.0, 0.0), 0.5);
  const Density mu(d, {}, {DensityTerm{0.1 * 9.0, ConjPole{0.0, 2}}});  // sup ~ 0.9/2.5^2
  const auto sol = solve_neumann(mu);
  EXPECT_LE(sol.terms, 10);
  EXPECT_LT(sol.residual, 1e-12);
  for (std::size_t i = 2; i < sol.term_norms.size(); ++i)
    EXPECT_LT(sol.term_norms[i], sol.term_norms[i - 1]);
  const QcMap h = build_map(mu);
  const auto v = verify_map(h, default_probes(d));
  EXPECT_LT(v.max_mu_deviation, 1e-6);
  EXPECT_LT(v.max_conformality_defect, 1e-6);
  // analytic derivatives agree with the finite-difference ones
  const cplx w = d.from_unit(cplx(0.3, 0.2));
  EXPECT_NEAR(std::abs(h.dwbar(w) / h.dw(w) - mu(w)), 0.0, 1e-10);
}

TEST(Beltrami, FirstOrderRemainderIsQuadratic) {
  const Disk d(cplx(2.0, 1.0), 0.6);
  const auto shape = [&](double eps) {
    return Density(d, {}, {DensityTerm{eps, Monomial{1, 2}}, DensityTerm{0.5 * eps, ConjPole{0.0, 1}}});
  };
  double prev = 0.0;
  for (double eps : {0.2, 0.1}) {
    const Density mu = shape(eps);
    const QcMap h = build_map(mu);
    double dev = 0.0;
    for (cplx w : default_probes(d)) dev = std::max(dev, std::abs(h(w) - w - cauchy_T(mu, w)));
    if (prev > 0.0) EXPECT_NEAR(prev / dev, 4.0, 0.5);
    prev = dev;
  }
}

TEST(Beltrami, DecayAtInfinity) {
  const Disk d(cplx(1.0, 1.0), 0.5);
  const cplx k(0.03, 0.02);
  const QcMap h = build_map(Density::constant(d, k));
  const cplx w = d.center + cplx(1e4, 0.0);
  EXPECT_NEAR(std::abs((w - d.center) * cauchy_T(h.rho(), w) - k * 0.25), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(h(w) - w), 0.0, 1e-5);
}

TEST(Beltrami, RejectsLargeCoefficient) {
  const Disk d(cplx(0.0), 1.0);
  EXPECT_THROW(build_map(Density::constant(d, 0.6)), DomainError);
  NeumannOptions opt;
  opt.kappa_max = 0.95;
  opt.max_terms = 2;
  const Density mu(d, {}, {DensityTerm{0.9, Monomial{2, 0}}});
  EXPECT_THROW(solve_neumann(mu, opt), NonConvergence);
}
