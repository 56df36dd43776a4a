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
#include <numbers>

#include "qcdeform/spaces.hpp"

using namespace qcdeform;

TEST(Spaces, DiagonalNorms) {
  const HoloSeries f(std::vector<cplx>{1.0, cplx(0.0, 2.0), 3.0});
  EXPECT_NEAR(hilbert_norm(SpaceSpec::hardy(), f), std::sqrt(14.0), 1e-14);
  EXPECT_NEAR(hilbert_norm(SpaceSpec::bergman(), f), std::sqrt(1.0 + 4.0 / 2.0 + 9.0 / 3.0), 1e-14);
  EXPECT_NEAR(hilbert_norm(SpaceSpec::dirichlet(), f), std::sqrt(1.0 + 4.0 + 18.0), 1e-14);
  const HoloSeries g(std::vector<cplx>{0.0, 1.0});
  EXPECT_NEAR(std::abs(hilbert_inner(SpaceSpec::hardy(), f, g) - cplx(0.0, 2.0)), 0.0, 1e-15);
}

TEST(Spaces, BergmanMeasureMatchesDiagonal) {
  // w_n = 2 pi \int t^{2n+1} / pi dt = 1/(n+1)
  const auto m = SpaceSpec::bergman_measure(64);
  for (int n = 0; n <= 64; ++n) EXPECT_NEAR(m.weight(n), 1.0 / (n + 1), 1e-13) << n;
  EXPECT_EQ(m.kind(), SpaceKind::radial_measure);
  EXPECT_THROW(m.weight(65), DomainError);
}

TEST(Spaces, RadialTableLinearWeight) {
  // W(t) = t: w_n = 2 pi / (2n + 3)
  const auto s = SpaceSpec::radial_table({0.0, 1.0}, {0.0, 1.0}, 32);
  for (int n = 0; n <= 32; ++n) EXPECT_NEAR(s.weight(n), 2.0 * std::numbers::pi / (2 * n + 3), 1e-13);
  EXPECT_THROW(SpaceSpec::radial_table({1.0, 0.0}, {1.0, 1.0}), DomainError);
  EXPECT_THROW(SpaceSpec::diagonal({1.0, 0.0}), DomainError);
}

TEST(Spaces, NormDomainChecks) {
  const auto h = SpaceSpec::hardy(8);
  EXPECT_THROW(hilbert_norm(h, HoloSeries::monomial(9, 9)), DomainError);
  EXPECT_THROW(hilbert_norm(h, HoloSeries(std::vector<cplx>{1.0, 1.0}, 0.0, kInf, -1)), DomainError);
  // trailing zeros above the truncation are allowed
  EXPECT_NEAR(hilbert_norm(h, HoloSeries::monomial(2, 40)), 1.0, 0.0);
}

TEST(Spaces, KoebeSchwarzianB2Norm) {
  const auto s = [](cplx z) { return -6.0 / ((1.0 - z * z) * (1.0 - z * z)); };
  const auto n = bp_norm(s, 2.0);
  EXPECT_NEAR(n.value, 6.0, 1e-12);
  EXPECT_NEAR(std::abs(n.argmax.imag()), 0.0, 1e-15);
}

TEST(Spaces, BpGridNestedUnderDoubling) {
  // Monotone in resolution because the coarse nodes are a subset.
  const auto f = [](cplx z) { return std::exp(3.0 * z) / (1.2 - z); };
  double prev = 0.0;
  for (int n = 16; n <= 256; n *= 2) {
    const double v = bp_norm(f, 2.0, BpGrid{n, n}).value;
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
}

TEST(Spaces, PointwiseBoundByA1Norm) {
  const auto f = [](cplx z) { return std::exp(2.0 * z) + z * z * z; };
  const double a1 = a1_norm(f);
  EXPECT_NEAR(a1_norm([](cplx) { return cplx(1.0); }), 1.0, 1e-13);
  EXPECT_LE(bp_norm(f, 2.0, BpGrid{128, 128}).value, a1 * (1.0 + 1e-10));
}

TEST(Spaces, HardyEmbeddingBelowOne) {
  // |f(z)| <= ||f||_H2 / sqrt(1 - |z|^2), so the B_2 ratio is at most 1.
  const auto e1 = estimate_embedding_constant(SpaceSpec::hardy(), 50, 7);
  const auto e2 = estimate_embedding_constant(SpaceSpec::hardy(), 50, 7);
  EXPECT_GT(e1.constant, 0.0);
  EXPECT_LE(e1.constant, 1.0);
  EXPECT_EQ(e1.constant, e2.constant);
  EXPECT_EQ(e1.argmax, e2.argmax);
}

TEST(Spaces, CompositionClosure) {
  const HoloSeries f(std::vector<cplx>{0.0, 0.5});
  const auto ok = check_composition_closure(SpaceSpec::hardy(), f, 2.0);
  EXPECT_TRUE(ok.ok);
  // ||1/(2 - z/2)||_H2^2 = sum 4^{-2k-1}... = (1/4) / (1 - 1/16)
  EXPECT_NEAR(ok.norm, std::sqrt(0.25 / (1.0 - 1.0 / 16.0)), 1e-14);
  const auto bad = check_composition_closure(SpaceSpec::hardy(), f, 0.5 + 1e-3);
  EXPECT_FALSE(bad.ok);
}
