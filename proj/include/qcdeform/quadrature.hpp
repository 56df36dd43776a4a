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

#ifndef QCDEFORM_QUADRATURE_HPP
#define QCDEFORM_QUADRATURE_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qcdeform::quad {

/// Nodes (ascending) and weights of a Gauss-Legendre rule.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

namespace detail {

// Returns (P_n(x), P_n'(x)).
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

inline GaussRule compute_gauss_legendre(int n) {
  GaussRule r{std::vector<double>(static_cast<std::size_t>(n)),
              std::vector<double>(static_cast<std::size_t>(n))};
  if (n == 1) {
    r.x[0] = 0.0;
    r.w[0] = 2.0;
    return r;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[static_cast<std::size_t>(i)] = -x;
    r.w[static_cast<std::size_t>(i)] = w;
    r.x[static_cast<std::size_t>(n - 1 - i)] = x;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) r.x[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

}  // namespace detail

/// Gauss-Legendre rule on [-1, 1]; cached per order.
inline const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

/// Gauss-Legendre rule mapped to [a, b].
inline GaussRule gauss_legendre(int n, double a, double b) {
  const GaussRule& g = gauss_legendre(n);
  GaussRule r = g;
  const double h = 0.5 * (b - a);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    r.x[i] = a + h * (g.x[i] + 1.0);
    r.w[i] = h * g.w[i];
  }
  return r;
}

/// Barycentric weights for Gauss-Legendre nodes (any affine image).
inline std::vector<double> legendre_barycentric_weights(const GaussRule& ref) {
  std::vector<double> lam(ref.x.size());
  for (std::size_t j = 0; j < ref.x.size(); ++j) {
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    lam[j] = s * std::sqrt((1.0 - ref.x[j] * ref.x[j]) * ref.w[j]);
  }
  return lam;
}

/// Matrix L with (L y)_t = p(targets_t), p the interpolant of y at `nodes`.
inline Eigen::MatrixXd interpolation_matrix(std::span<const double> nodes,
                                            std::span<const double> lambda,
                                            std::span<const double> targets) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(targets.size()), n);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const double x = targets[t];
    bool hit = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x == nodes[static_cast<std::size_t>(j)]) {
        L(static_cast<Eigen::Index>(t), j) = 1.0;
        hit = true;
        break;
      }
    }
    if (hit) continue;
    double denom = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = lambda[static_cast<std::size_t>(j)] / (x - nodes[static_cast<std::size_t>(j)]);
      L(static_cast<Eigen::Index>(t), j) = c;
      denom += c;
    }
    L.row(static_cast<Eigen::Index>(t)) /= denom;
  }
  return L;
}

}  // namespace qcdeform::quad

#endif  // QCDEFORM_QUADRATURE_HPP
