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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcdeform/approx.hpp"

using namespace qcdeform;

namespace {

constexpr double kPi = std::numbers::pi;

double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

// weighted sup over the same node layout, written out longhand
template <class F>
double longhand_bp(F&& g, double q, int n_rad, int n_ang) {
  double m = 0.0;
  for (int i = 1; i < n_rad; ++i) {
    const double a = double(n_rad - i) / n_rad;
    const double t = 1.0 - a * a;
    for (int k = 0; k < n_ang; ++k)
      m = std::max(m, std::pow(1.0 - t * t, q) * std::abs(g(std::polar(t, 2.0 * kPi * k / n_ang))));
  }
  return m;
}

}  // namespace

TEST(Approx, SinglePoleRecovered) {
  auto f = [](cplx z) { return 1.0 / ((z - 1.0) * (z - 1.0)); };
  const FitResult r = fit_double_poles(f, 1, 2.0);
  EXPECT_LE(r.error, 1e-10);
  EXPECT_LT(angle_gap(r.r.angles[0], 0.0), 1e-10);
  EXPECT_NEAR(std::abs(r.r.weights[0] - 1.0), 0.0, 1e-10);
}

TEST(Approx, TwoPolesUpToRelabeling) {
  auto f = [](cplx z) { return 1.0 / ((z - 1.0) * (z - 1.0)) + 2.0 / ((z + 1.0) * (z + 1.0)); };
  const FitResult r = fit_double_poles(f, 2, 2.0);
  EXPECT_LE(r.error, 1e-10);
  for (int j = 0; j < 2; ++j) {
    const bool at_one = angle_gap(r.r.angles[static_cast<std::size_t>(j)], 0.0) < 1e-9;
    const bool at_minus = angle_gap(r.r.angles[static_cast<std::size_t>(j)], kPi) < 1e-9;
    ASSERT_TRUE(at_one || at_minus);
    EXPECT_NEAR(std::abs(r.r.weights[static_cast<std::size_t>(j)] - (at_one ? 1.0 : 2.0)), 0.0, 1e-9);
  }
}

TEST(Approx, ErrorIsUpperIndexWeightedSup) {
  auto f = [](cplx z) { return 1.0 / (1.0 - 0.5 * z); };
  FitOptions opt;
  opt.iters = 3;
  opt.eval = BpGrid{64, 128};
  const FitResult r = fit_double_poles(f, 2, 1.5, opt);
  const double want = longhand_bp([&](cplx z) { return r.r(z) - f(z); }, 2.5, 64, 128);
  EXPECT_NEAR(r.error, want, 1e-14 * std::max(1.0, want));
}

TEST(Approx, KoebeSchwarzianTwoPolesBeatOneWithRealWeights) {
  auto k = [](cplx z) { return -6.0 / ((1.0 - z * z) * (1.0 - z * z)); };
  const FitResult r1 = fit_double_poles(k, 1, 2.0);
  const FitResult r2 = fit_double_poles(k, 2, 2.0);
  EXPECT_LT(r2.error, r1.error);
  FitOptions sym;
  sym.symmetric = true;
  const FitResult s2 = fit_double_poles(k, 2, 2.0, sym);
  EXPECT_LT(s2.error, r1.error);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_LT(std::min(angle_gap(s2.r.angles[j], 0.0), angle_gap(s2.r.angles[j], kPi)), 1e-12);
    EXPECT_LE(std::abs(s2.r.weights[j].imag()), 1e-8);
  }
}

TEST(Approx, SymmetricPairsAreConjugate) {
  auto f = [](cplx z) { return 1.0 / (1.2 - z * z) + std::exp(z); };
  FitOptions sym;
  sym.symmetric = true;
  sym.iters = 4;
  const FitResult r = fit_double_poles(f, 3, 2.0, sym);
  ASSERT_EQ(r.r.n(), 3);
  EXPECT_LE(std::abs(r.r.weights[0].imag()), 1e-8);
  EXPECT_NEAR(std::abs(r.r.weights[1] - std::conj(r.r.weights[2])), 0.0, 1e-8);
  EXPECT_NEAR(angle_gap(r.r.angles[1], -r.r.angles[2]), 0.0, 1e-15);
}

TEST(Approx, CurveOnExactTargetStaysAtZero) {
  auto f = [](cplx z) {
    const cplx a = std::polar(1.0, 1.1);
    return cplx(0.3, -0.7) / ((z - a) * (z - a));
  };
  FitOptions opt;
  opt.iters = 4;
  const auto c = error_curve(f, 3, 2.0, opt);
  ASSERT_EQ(c.size(), 3u);
  for (const auto& p : c) EXPECT_LE(p.error, 1e-10) << "n = " << p.n;
}

TEST(Approx, CurveMonotoneOnSmoothTarget) {
  auto f = [](cplx) { return cplx(1.0); };
  FitOptions opt;
  opt.iters = 4;
  const auto c = error_curve(f, 3, 2.0, opt);
  ASSERT_EQ(c.size(), 3u);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LE(c[i].error, c[i - 1].error);
  EXPECT_LT(c.back().error, c.front().error);
}

TEST(Approx, SinglePointCurveAndBadArguments) {
  auto f = [](cplx z) { return z; };
  FitOptions opt;
  opt.iters = 2;
  EXPECT_EQ(error_curve(f, 1, 2.0, opt).size(), 1u);
  EXPECT_TRUE(error_curve(f, 0, 2.0, opt).empty());
  EXPECT_THROW(fit_double_poles(f, 0, 2.0, opt), DomainError);
}

TEST(Approx, SameSeedSameFit) {
  auto f = [](cplx z) { return std::exp(z) / (1.1 - z); };
  FitOptions opt;
  opt.iters = 3;
  opt.seed = 9;
  const FitResult a = fit_double_poles(f, 2, 2.0, opt);
  const FitResult b = fit_double_poles(f, 2, 2.0, opt);
  EXPECT_EQ(a.r.angles, b.r.angles);
  EXPECT_EQ(a.error, b.error);
}
