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

#ifndef QCDEFORM_SPACES_HPP
#define QCDEFORM_SPACES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "series.hpp"

namespace qcdeform {

/// Default number of coefficients entering Hilbert norms.
inline constexpr int kDefaultNormTruncation = 256;

enum class SpaceKind { diagonal, radial_measure };

/// A rotation-invariant Hilbert space of holomorphic functions on the unit
/// disk, described by the squared norms w_n = ||z^n||^2 of the monomials.
///
/// Diagonal spaces give the weights directly. Radial-measure spaces carry a
/// weight W(t) on [0, 1) with (f, g) = \iint f conj(g) W(|z|) dA; monomials
/// are then orthogonal and w_n = 2 pi \int_0^1 t^{2n+1} W(t) dt.
class SpaceSpec {
 public:
  static SpaceSpec diagonal(std::vector<double> weights, std::string name = "custom") {
    SpaceSpec s;
    s.kind_ = SpaceKind::diagonal;
    s.name_ = std::move(name);
    s.weights_ = std::move(weights);
    s.validate();
    return s;
  }

  /// w_n = 1.
  static SpaceSpec hardy(int n_norm = kDefaultNormTruncation) {
    return diagonal(std::vector<double>(static_cast<std::size_t>(n_norm) + 1, 1.0), "hardy");
  }

  /// w_n = 1/(n+1), the normalized-area Bergman space.
  static SpaceSpec bergman(int n_norm = kDefaultNormTruncation) {
    std::vector<double> w(static_cast<std::size_t>(n_norm) + 1);
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = 1.0 / double(n + 1);
    return diagonal(std::move(w), "bergman");
  }

  /// w_n = max(1, n).
  static SpaceSpec dirichlet(int n_norm = kDefaultNormTruncation) {
    std::vector<double> w(static_cast<std::size_t>(n_norm) + 1);
    for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::max(1.0, double(n));
    return diagonal(std::move(w), "dirichlet");
  }

  static SpaceSpec radial(std::function<double(double)> weight, int n_norm = kDefaultNormTruncation,
                          std::string measure = "custom") {
    SpaceSpec s;
    s.kind_ = SpaceKind::radial_measure;
    s.name_ = std::move(measure);
    s.radial_weight_ = std::move(weight);
    const auto rule = quad::gauss_legendre(n_norm + 8, 0.0, 1.0);
    s.weights_.assign(static_cast<std::size_t>(n_norm) + 1, 0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = rule.x[i];
      const double wt = 2.0 * std::numbers::pi * rule.w[i] * s.radial_weight_(t) * t;
      double t2n = 1.0;
      for (auto& m : s.weights_) {
        m += wt * t2n;
        t2n *= t * t;
      }
    }
    s.validate();
    return s;
  }

  /// W = 1/pi: the Bergman space realized through its area measure.
  static SpaceSpec bergman_measure(int n_norm = kDefaultNormTruncation) {
    return radial([](double) { return 1.0 / std::numbers::pi; }, n_norm, "bergman");
  }

  /// W given at ascending nodes t (covering [0, 1]) and linearly interpolated.
  static SpaceSpec radial_table(std::vector<double> t, std::vector<double> w,
                                int n_norm = kDefaultNormTruncation) {
    if (t.size() != w.size() || t.size() < 2) throw DomainError("radial_table: bad table");
    if (!std::is_sorted(t.begin(), t.end())) throw DomainError("radial_table: t not ascending");
    auto interp = [t, w](double x) {
      const auto it = std::upper_bound(t.begin(), t.end(), x);
      if (it == t.begin()) return w.front();
      if (it == t.end()) return w.back();
      const auto i = static_cast<std::size_t>(it - t.begin());
      const double a = (x - t[i - 1]) / (t[i] - t[i - 1]);
      return (1.0 - a) * w[i - 1] + a * w[i];
    };
    SpaceSpec s = radial(interp, n_norm, "custom-table");
    s.table_ = {std::move(t), std::move(w)};
    return s;
  }

  SpaceKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int n_norm() const { return static_cast<int>(weights_.size()) - 1; }
  const std::vector<double>& weights() const { return weights_; }
  const std::pair<std::vector<double>, std::vector<double>>& table() const { return table_; }

  /// ||z^n||^2.
  double weight(int n) const {
    if (n < 0 || n > n_norm())
      throw DomainError("SpaceSpec: monomial index " + std::to_string(n) + " beyond truncation");
    return weights_[static_cast<std::size_t>(n)];
  }

  /// Radial weight W(t); only for radial-measure spaces.
  double radial_weight(double t) const {
    if (!radial_weight_) throw DomainError("SpaceSpec: not a radial-measure space");
    return radial_weight_(t);
  }

  double p_growth = 2.0;
  std::optional<double> embed_const;

 private:
  SpaceSpec() = default;

  void validate() const {
    if (weights_.empty()) throw DomainError("SpaceSpec: no weights");
    for (double w : weights_)
      if (!(w > 0.0) || !std::isfinite(w))
        throw DomainError("SpaceSpec: monomial weights must be finite and positive");
  }

  SpaceKind kind_ = SpaceKind::diagonal;
  std::string name_;
  std::vector<double> weights_;
  std::function<double(double)> radial_weight_;
  std::pair<std::vector<double>, std::vector<double>> table_;
};

namespace detail {

inline void require_norm_domain(const SpaceSpec& space, const HoloSeries& f) {
  if (f.is_laurent() || f.center() != cplx(0.0))
    throw DomainError("hilbert norm: expected a Taylor series at 0");
  if (f.effective_degree() > space.n_norm())
    throw DomainError("hilbert norm: series degree exceeds norm truncation");
}

}  // namespace detail

/// (f, g)_H = sum_n w_n f_n conj(g_n).
inline cplx hilbert_inner(const SpaceSpec& space, const HoloSeries& f, const HoloSeries& g) {
  detail::require_norm_domain(space, f);
  detail::require_norm_domain(space, g);
  const int n = std::min(f.effective_degree(), g.effective_degree());
  cplx acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += space.weight(k) * f[k] * std::conj(g[k]);
  return acc;
}

inline double hilbert_norm(const SpaceSpec& space, const HoloSeries& f) {
  detail::require_norm_domain(space, f);
  double acc = 0.0;
  for (int k = 0; k <= f.effective_degree(); ++k) acc += space.weight(k) * std::norm(f[k]);
  return std::sqrt(acc);
}

/// Polar sampling grid for weighted sup norms: radii t_i = 1 - ((n-i)/n)^2,
/// clustered toward |z| = 1, times n_ang equispaced angles. Doubling both
/// counts yields a superset of the nodes.
struct BpGrid {
  int n_rad = 512;
  int n_ang = 512;
};

struct BpNorm {
  double value = 0.0;
  cplx argmax = 0.0;
  BpGrid grid;
};

/// Discrete sup of (1 - |z|^2)^p |f(z)| over a BpGrid.
template <class F>
BpNorm bp_norm(F&& f, double p, BpGrid grid = {}) {
  if (p < 0.0) throw DomainError("bp_norm: p must be nonnegative");
  BpNorm out{std::abs(f(cplx(0.0))), cplx(0.0), grid};
  for (int i = 1; i < grid.n_rad; ++i) {
    const double a = double(grid.n_rad - i) / grid.n_rad;
    const double t = 1.0 - a * a;
    const double wt = std::pow(1.0 - t * t, p);
    for (int k = 0; k < grid.n_ang; ++k) {
      const cplx z = std::polar(t, 2.0 * std::numbers::pi * k / grid.n_ang);
      const double v = wt * std::abs(f(z));
      if (v > out.value) {
        out.value = v;
        out.argmax = z;
      }
    }
  }
  return out;
}

inline BpNorm bp_norm(const HoloSeries& f, double p, BpGrid grid = {}) {
  return bp_norm([&f](cplx z) { return evaluate(f, z); }, p, grid);
}

/// (1/pi) \iint_D |f| dA, the normalized A_1 norm, by polar Gauss quadrature.
template <class F>
double a1_norm(F&& f, int n_rad = 128, int n_ang = 256) {
  const auto rule = quad::gauss_legendre(n_rad, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    double ring = 0.0;
    for (int k = 0; k < n_ang; ++k)
      ring += std::abs(f(std::polar(rule.x[i], 2.0 * std::numbers::pi * k / n_ang)));
    acc += rule.w[i] * rule.x[i] * ring * (2.0 * std::numbers::pi / n_ang);
  }
  return acc / std::numbers::pi;
}

struct EmbeddingEstimate {
  double constant = 0.0;     ///< max ratio ||f||_B2 / ||f||_H over the samples
  int argmax = -1;           ///< index of the maximizing sample
  std::size_t used = 0;      ///< samples with nonzero norm
};

/// Lower bound for the B_2 embedding constant over the given samples. Zero
/// samples are skipped.
inline EmbeddingEstimate estimate_embedding_constant(const SpaceSpec& space,
                                                     const std::vector<HoloSeries>& samples,
                                                     BpGrid grid = {256, 256}) {
  EmbeddingEstimate e;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double h = hilbert_norm(space, samples[i]);
    if (h == 0.0) continue;
    ++e.used;
    const double ratio = bp_norm(samples[i], 2.0, grid).value / h;
    if (ratio > e.constant) {
      e.constant = ratio;
      e.argmax = static_cast<int>(i);
    }
  }
  return e;
}

/// Random polynomial of degree <= max_degree with complex normal coefficients.
inline HoloSeries random_polynomial(std::mt19937_64& rng, int max_degree, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::uniform_int_distribution<int> deg(0, max_degree);
  const int d = deg(rng);
  std::vector<cplx> c(static_cast<std::size_t>(std::max(d, 1)) + 1, 0.0);
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = cplx(nd(rng), nd(rng));
  return HoloSeries(std::move(c));
}

inline EmbeddingEstimate estimate_embedding_constant(const SpaceSpec& space, int sample_count,
                                                     std::uint64_t seed, BpGrid grid = {256, 256}) {
  std::mt19937_64 rng(seed);
  std::vector<HoloSeries> samples;
  samples.reserve(static_cast<std::size_t>(std::max(sample_count, 0)));
  for (int i = 0; i < sample_count; ++i) samples.push_back(random_polynomial(rng, 12));
  return estimate_embedding_constant(space, samples, grid);
}

/// Checks that c/(zeta - f) lies in H to working accuracy: the weighted tail
/// of its coefficients above half the truncation must be negligible.
struct ClosureCheck {
  bool ok = false;
  double norm = 0.0;
  double tail_fraction = 0.0;
};

inline ClosureCheck check_composition_closure(const SpaceSpec& space, const HoloSeries& f,
                                              cplx zeta, double tol = 1e-12) {
  const int n = std::min(space.n_norm(), std::max(f.degree(), 2 * kDefaultDegree));
  const HoloSeries frac = reciprocal(add_constant(-f.truncated(n), zeta));
  double total = 0.0, tail = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = space.weight(k) * std::norm(frac[k]);
    total += t;
    if (k > n / 2) tail += t;
  }
  ClosureCheck c;
  c.norm = std::sqrt(total);
  c.tail_fraction = total > 0.0 ? tail / total : 0.0;
  c.ok = std::isfinite(total) && c.tail_fraction <= tol;
  return c;
}

}  // namespace qcdeform

#endif  // QCDEFORM_SPACES_HPP
