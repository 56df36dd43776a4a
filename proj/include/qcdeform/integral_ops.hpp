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

#ifndef QCDEFORM_INTEGRAL_OPS_HPP
#define QCDEFORM_INTEGRAL_OPS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fft.hpp"
#include "quadrature.hpp"
#include "series.hpp"

namespace qcdeform {

/// The support disk D(w0, r).
struct Disk {
  cplx center = 0.0;
  double radius = 1.0;

  Disk() = default;
  Disk(cplx c, double r) : center(c), radius(r) {
    if (!(r > 0.0)) throw DomainError("Disk: radius must be positive");
  }

  bool contains(cplx w) const { return std::abs(w - center) < radius; }
  /// v = (w - w0) / r.
  cplx to_unit(cplx w) const { return (w - center) / radius; }
  cplx from_unit(cplx v) const { return center + radius * v; }
};

/// Tensor quadrature resolution on the support disk: Gauss-Legendre in the
/// radius times the trapezoid rule in the angle.
struct Resolution {
  int n_rad = 48;
  int n_ang = 128;

  Resolution doubled() const { return {2 * n_rad, 2 * n_ang}; }
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// conj((zeta - pole)^(-order)); with pole = c0 this is conj(phi_k).
struct ConjPole {
  cplx pole = 0.0;
  int order = 1;
};

/// u^p conj(u)^q with u = (zeta - w0) / r.
struct Monomial {
  int p = 0;
  int q = 0;
};

struct DensityTerm {
  cplx coef = 1.0;
  std::variant<ConjPole, Monomial> kind;
};

inline cplx evaluate_term(const DensityTerm& t, const Disk& disk, cplx zeta) {
  return std::visit(
      [&](const auto& k) -> cplx {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConjPole>) {
          return t.coef * std::conj(std::pow(zeta - k.pole, -k.order));
        } else {
          const cplx u = disk.to_unit(zeta);
          return t.coef * std::pow(u, k.p) * std::pow(std::conj(u), k.q);
        }
      },
      t.kind);
}

using Grid = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace detail {

/// Unit-disk polar rule with everything the transforms need precomputed.
/// For every base radius s_t it also stores the split rule on [0, s_t] and
/// [s_t, 1] and the interpolation matrix from the base radii onto it.
struct PolarRule {
  int n_rad = 0;
  int n_ang = 0;
  std::vector<double> s, w;
  std::vector<double> lambda;
  std::vector<double> angle;
  std::vector<cplx> unit;  // e^{i theta_k}

  struct Split {
    std::vector<double> sigma, weight;  // first n_rad inner, then n_rad outer
    Eigen::MatrixXcd interp;            // (2 n_rad) x n_rad
  };
  std::vector<Split> split;
};

inline PolarRule::Split make_split(const PolarRule& rule, double s_split) {
  PolarRule::Split sp;
  const auto in = quad::gauss_legendre(rule.n_rad, 0.0, s_split);
  const auto out = quad::gauss_legendre(rule.n_rad, s_split, 1.0);
  sp.sigma = in.x;
  sp.sigma.insert(sp.sigma.end(), out.x.begin(), out.x.end());
  sp.weight = in.w;
  sp.weight.insert(sp.weight.end(), out.w.begin(), out.w.end());
  sp.interp = quad::interpolation_matrix(rule.s, rule.lambda, sp.sigma).cast<cplx>();
  return sp;
}

inline std::shared_ptr<const PolarRule> polar_rule(Resolution res) {
  if (res.n_rad < 2 || res.n_ang < 8) throw DomainError("Resolution: too coarse");
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const PolarRule>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::make_pair(res.n_rad, res.n_ang);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto rule = std::make_shared<PolarRule>();
  rule->n_rad = res.n_rad;
  rule->n_ang = res.n_ang;
  const auto g = quad::gauss_legendre(res.n_rad, 0.0, 1.0);
  rule->s = g.x;
  rule->w = g.w;
  rule->lambda = quad::legendre_barycentric_weights(quad::gauss_legendre(res.n_rad));
  for (int k = 0; k < res.n_ang; ++k) {
    const double th = 2.0 * std::numbers::pi * k / res.n_ang;
    rule->angle.push_back(th);
    rule->unit.push_back(std::polar(1.0, th));
  }
  for (double st : rule->s) rule->split.push_back(make_split(*rule, st));
  cache.emplace(key, rule);
  return rule;
}

/// Angular Fourier modes of each row: R(i, bin) with rows(i) = sum_m R_m e^{i m theta}.
inline Grid row_modes(const Grid& values) {
  Grid modes(values.rows(), values.cols());
  const double inv = 1.0 / double(values.cols());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    const auto x = fft::forward(std::span<const cplx>(values.row(i).data(), static_cast<std::size_t>(values.cols())));
    for (Eigen::Index k = 0; k < values.cols(); ++k) modes(i, k) = x[static_cast<std::size_t>(k)] * inv;
  }
  return modes;
}

}  // namespace detail

/// A complex density supported on a disk.
///
/// It is a sum of closed-form terms (the span of conj(phi_k) and the
/// monomials u^p conj(u)^q) and an optional sampled remainder stored on the
/// polar quadrature nodes. Values, angular modes and the exterior Laurent
/// moments of the total are computed at construction; instances are
/// immutable afterwards.
class Density {
 public:
  Density() = default;

  Density(Disk disk, Resolution res, std::vector<DensityTerm> terms, Grid remainder = {})
      : disk_(disk), res_(res), rule_(detail::polar_rule(res)), terms_(std::move(terms)),
        remainder_(std::move(remainder)) {
    if (remainder_.size() != 0 &&
        (remainder_.rows() != res.n_rad || remainder_.cols() != res.n_ang))
      throw DomainError("Density: remainder grid does not match resolution");
    finalize();
  }

  static Density zero(Disk disk, Resolution res = {}) { return Density(disk, res, {}); }

  static Density constant(Disk disk, cplx k, Resolution res = {}) {
    return Density(disk, res, {DensityTerm{k, Monomial{0, 0}}});
  }

  /// Density known only through its values at the quadrature nodes.
  static Density from_grid(Disk disk, Resolution res, Grid values) {
    return Density(disk, res, {}, std::move(values));
  }

  /// Samples f at the quadrature nodes.
  template <class F>
  static Density sampled(Disk disk, Resolution res, F&& f) {
    const auto rule = detail::polar_rule(res);
    Grid g(res.n_rad, res.n_ang);
    for (int i = 0; i < res.n_rad; ++i)
      for (int k = 0; k < res.n_ang; ++k)
        g(i, k) = f(disk.from_unit(rule->s[static_cast<std::size_t>(i)] * rule->unit[static_cast<std::size_t>(k)]));
    return from_grid(disk, res, std::move(g));
  }

  /// Terms plus samples of the same density; the samples must agree with
  /// the terms to `tol` at every node.
  static Density checked(Disk disk, Resolution res, std::vector<DensityTerm> terms,
                         const Grid& samples, double tol = 1e-12) {
    Density d(disk, res, std::move(terms));
    if (samples.rows() != res.n_rad || samples.cols() != res.n_ang)
      throw DomainError("Density: sample grid does not match resolution");
    const double dev = (d.values_ - samples).cwiseAbs().maxCoeff();
    if (dev > tol)
      throw DomainError("Density: samples disagree with closed-form terms by " + std::to_string(dev));
    return d;
  }

  const Disk& disk() const { return disk_; }
  Resolution resolution() const { return res_; }
  const std::vector<DensityTerm>& terms() const { return terms_; }
  bool has_remainder() const { return remainder_.size() != 0; }
  const Grid& remainder() const { return remainder_; }

  /// Total values at node (i, k): zeta = w0 + r s_i e^{i theta_k}.
  const Grid& values() const { return values_; }
  const Grid& modes() const { return modes_; }
  const std::vector<cplx>& exterior_moments() const { return moments_; }
  double sup_bound() const { return sup_; }

  cplx node(int i, int k) const {
    return disk_.from_unit(rule_->s[static_cast<std::size_t>(i)] * rule_->unit[static_cast<std::size_t>(k)]);
  }
  const detail::PolarRule& rule() const { return *rule_; }

  /// Value at a point of the closed disk. Closed-form terms are exact; the
  /// sampled remainder is interpolated (trigonometric in the angle,
  /// polynomial in the radius).
  cplx operator()(cplx zeta) const {
    cplx acc = 0.0;
    for (const auto& t : terms_) acc += evaluate_term(t, disk_, zeta);
    if (has_remainder()) acc += interpolate_remainder(disk_.to_unit(zeta));
    return acc;
  }

  /// Angular modes of the density on the given unit radii.
  Grid modes_at(std::span<const double> radii, const Eigen::MatrixXcd* interp = nullptr) const {
    const auto nr = static_cast<Eigen::Index>(radii.size());
    Grid out = Grid::Zero(nr, res_.n_ang);
    if (!terms_.empty()) {
      Grid vals(nr, res_.n_ang);
      for (Eigen::Index i = 0; i < nr; ++i)
        for (int k = 0; k < res_.n_ang; ++k) {
          const cplx zeta = disk_.from_unit(radii[static_cast<std::size_t>(i)] * rule_->unit[static_cast<std::size_t>(k)]);
          cplx acc = 0.0;
          for (const auto& t : terms_) acc += evaluate_term(t, disk_, zeta);
          vals(i, k) = acc;
        }
      out += detail::row_modes(vals);
    }
    if (has_remainder()) {
      if (interp != nullptr) {
        out += (*interp) * remainder_modes_;
      } else {
        const Eigen::MatrixXcd L = quad::interpolation_matrix(rule_->s, rule_->lambda, radii).cast<cplx>();
        out += L * remainder_modes_;
      }
    }
    return out;
  }

  Density scaled(cplx a) const {
    std::vector<DensityTerm> t = terms_;
    for (auto& x : t) x.coef *= a;
    Grid rem = has_remainder() ? Grid(remainder_ * a) : Grid();
    return Density(disk_, res_, std::move(t), std::move(rem));
  }

  friend Density operator+(const Density& a, const Density& b) {
    a.require_compatible(b);
    std::vector<DensityTerm> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    Grid rem;
    if (a.has_remainder() && b.has_remainder()) rem = a.remainder_ + b.remainder_;
    else if (a.has_remainder()) rem = a.remainder_;
    else if (b.has_remainder()) rem = b.remainder_;
    return Density(a.disk_, a.res_, std::move(t), std::move(rem));
  }

  /// Pointwise product, carried as samples.
  friend Density operator*(const Density& a, const Density& b) {
    a.require_compatible(b);
    return from_grid(a.disk_, a.res_, a.values_.cwiseProduct(b.values_));
  }

  /// Same density plus extra samples on the nodes.
  Density plus_samples(const Grid& g) const {
    Grid rem = has_remainder() ? Grid(remainder_ + g) : g;
    return Density(disk_, res_, terms_, std::move(rem));
  }

 private:
  void require_compatible(const Density& b) const {
    if (disk_.center != b.disk_.center || disk_.radius != b.disk_.radius || !(res_ == b.res_))
      throw DomainError("Density: operands live on different disks or grids");
  }

  void finalize() {
    const int nr = res_.n_rad, na = res_.n_ang;
    values_ = Grid::Zero(nr, na);
    for (int i = 0; i < nr; ++i)
      for (int k = 0; k < na; ++k) {
        cplx acc = 0.0;
        const cplx zeta = node(i, k);
        for (const auto& t : terms_) acc += evaluate_term(t, disk_, zeta);
        values_(i, k) = acc;
      }
    if (has_remainder()) {
      values_ += remainder_;
      remainder_modes_ = detail::row_modes(remainder_);
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      const cplx v = values_.data()[i];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("Density: non-finite value on the grid");
    }
    modes_ = detail::row_modes(values_);
    sup_ = values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0;
    // mu_q = sum_i w_i s_i^{q+1} R_{-q}(s_i)
    const int qmax = na / 2 - 1;
    moments_.assign(static_cast<std::size_t>(qmax) + 1, 0.0);
    for (int i = 0; i < nr; ++i) {
      const double s = rule_->s[static_cast<std::size_t>(i)];
      double sp = rule_->w[static_cast<std::size_t>(i)] * s;
      for (int q = 0; q <= qmax; ++q) {
        moments_[static_cast<std::size_t>(q)] += sp * modes_(i, fft::bin(-q, na));
        sp *= s;
      }
    }
  }

  cplx interpolate_remainder(cplx v) const {
    const double s = std::abs(v);
    const double phi = std::arg(v);
    const double radii[1] = {s};
    const Eigen::MatrixXcd L = quad::interpolation_matrix(rule_->s, rule_->lambda, radii).cast<cplx>();
    const Eigen::RowVectorXcd rm = L * remainder_modes_;
    cplx acc = 0.0;
    const int na = res_.n_ang;
    for (int k = 0; k < na; ++k) {
      const int m = fft::frequency(k, na);
      if (2 * std::abs(m) == na) continue;
      acc += rm(k) * std::polar(1.0, m * phi);
    }
    return acc;
  }

  Disk disk_;
  Resolution res_;
  std::shared_ptr<const detail::PolarRule> rule_;
  std::vector<DensityTerm> terms_;
  Grid remainder_;
  Grid remainder_modes_;
  Grid values_;
  Grid modes_;
  std::vector<cplx> moments_;
  double sup_ = 0.0;
};

/// phi(zeta) = (zeta - pole)^(-order): phi_k for pole c0, phi for pole w0.
struct PoleKernel {
  cplx pole = 0.0;
  int order = 1;
  cplx operator()(cplx zeta) const { return std::pow(zeta - pole, -order); }
};

struct PairingResult {
  cplx value = 0.0;
  double error_estimate = 0.0;  ///< difference to the doubled-resolution value
};

namespace detail {

template <class F>
cplx pairing_sum(const Disk& disk, Resolution res, const F& integrand) {
  const auto rule = polar_rule(res);
  cplx acc = 0.0;
  for (int i = 0; i < res.n_rad; ++i) {
    const double s = rule->s[static_cast<std::size_t>(i)];
    cplx ring = 0.0;
    for (int k = 0; k < res.n_ang; ++k)
      ring += integrand(i, k, disk.from_unit(s * rule->unit[static_cast<std::size_t>(k)]));
    acc += rule->w[static_cast<std::size_t>(i)] * s * ring;
  }
  // -(1/pi) * r^2 * (2 pi / n_ang) * sum
  return -2.0 * disk.radius * disk.radius / double(res.n_ang) * acc;
}

}  // namespace detail

/// <nu, phi> = -(1/pi) \iint_D nu phi dA for any integrand phi that is
/// smooth on the closed disk, or has at most a 1/|zeta - w0| singularity at
/// the centre.
template <class F>
  requires(!std::is_same_v<std::decay_t<F>, PoleKernel>)
PairingResult pairing(const Density& nu, F&& phi) {
  const Disk& disk = nu.disk();
  PairingResult r;
  r.value = detail::pairing_sum(disk, nu.resolution(), [&](int i, int k, cplx z) {
    return nu.values()(i, k) * phi(z);
  });
  const cplx fine = detail::pairing_sum(disk, nu.resolution().doubled(), [&](int, int, cplx z) {
    return nu(z) * phi(z);
  });
  r.error_estimate = std::abs(fine - r.value);
  return r;
}

/// Pairing against a pole kernel. A pole inside the closed disk is rejected
/// unless it is the centre with order one (integrable in polar coordinates).
inline PairingResult pairing(const Density& nu, const PoleKernel& phi) {
  const Disk& disk = nu.disk();
  const double d = std::abs(phi.pole - disk.center);
  const bool centre_ok = phi.pole == disk.center && phi.order == 1;
  if (d <= disk.radius * (1.0 + 1e-12) && !centre_ok && phi.order > 0)
    throw SingularKernel("pairing: kernel pole inside the support disk");
  return pairing(nu, [&phi](cplx z) { return phi(z); });
}

/// Cauchy transform T rho(w) = -(1/pi) \iint_D rho(zeta) / (zeta - w) dA.
///
/// The density is expanded in angular modes on each quadrature ring and every
/// mode is integrated exactly against the kernel. Outside the disk this
/// reduces to a Laurent series with precomputed moments; inside, the radial
/// integral is split at |w - w0| so both pieces are smooth.
inline cplx cauchy_T(const Density& rho, cplx w) {
  const Disk& disk = rho.disk();
  const cplx v = disk.to_unit(w);
  const double av = std::abs(v);
  const int na = rho.resolution().n_ang;
  if (av >= 1.0) {
    const auto& mu = rho.exterior_moments();
    const cplx inv = 1.0 / v;
    cplx p = inv, acc = 0.0;
    for (const cplx& m : mu) {
      acc += m * p;
      p *= inv;
    }
    return 2.0 * disk.radius * acc;
  }
  const auto& rule = rho.rule();
  const int nr = rule.n_rad;
  if (av < 1e-14) {
    // only the m = 1 mode survives at the centre
    const Grid modes = rho.modes_at(rule.s);
    cplx acc = 0.0;
    for (int i = 0; i < nr; ++i) acc += rule.w[static_cast<std::size_t>(i)] * modes(i, fft::bin(1, na));
    return -2.0 * disk.radius * acc;
  }
  const auto sp = detail::make_split(rule, av);
  const Grid modes = rho.modes_at(sp.sigma, &sp.interp);
  const cplx e = v / av;
  const int mmax = na / 2 - 1;
  cplx inner = 0.0, outer = 0.0;
  for (int i = 0; i < 2 * nr; ++i) {
    const double sg = sp.sigma[static_cast<std::size_t>(i)];
    const double wt = sp.weight[static_cast<std::size_t>(i)];
    if (i < nr) {
      // sum_q R_{-q} (sg/|v|)^{q+1} e^{-i(q+1)phi}
      const cplx ratio = (sg / av) / e;
      cplx pw = ratio, acc = 0.0;
      for (int q = 0; q <= mmax; ++q) {
        acc += modes(i, fft::bin(-q, na)) * pw;
        pw *= ratio;
      }
      inner += wt * acc;
    } else {
      // sum_{m>=1} R_m (|v|/sg)^{m-1} e^{i(m-1)phi}
      const cplx ratio = (av / sg) * e;
      cplx pw = 1.0, acc = 0.0;
      for (int m = 1; m <= mmax; ++m) {
        acc += modes(i, fft::bin(m, na)) * pw;
        pw *= ratio;
      }
      outer += wt * acc;
    }
  }
  return 2.0 * disk.radius * (inner - outer);
}

/// Beurling transform Pi rho(w) = d/dw T rho(w) (principal value inside).
///
/// Inside the disk the moving split point contributes rho(w) conj(v)/v,
/// which is where the principal value lives; Pi of a constant vanishes.
inline cplx beurling_Pi(const Density& rho, cplx w) {
  const Disk& disk = rho.disk();
  const cplx v = disk.to_unit(w);
  const double av = std::abs(v);
  const int na = rho.resolution().n_ang;
  if (av >= 1.0) {
    const auto& mu = rho.exterior_moments();
    const cplx inv = 1.0 / v;
    cplx p = inv * inv, acc = 0.0;
    for (std::size_t q = 0; q < mu.size(); ++q) {
      acc += double(q + 1) * mu[q] * p;
      p *= inv;
    }
    return -2.0 * acc;
  }
  const auto& rule = rho.rule();
  const int nr = rule.n_rad;
  if (av < 1e-14) {
    const Grid modes = rho.modes_at(rule.s);
    cplx acc = 0.0;
    for (int i = 0; i < nr; ++i)
      acc += rule.w[static_cast<std::size_t>(i)] * modes(i, fft::bin(2, na)) / rule.s[static_cast<std::size_t>(i)];
    return -2.0 * acc;
  }
  const auto sp = detail::make_split(rule, av);
  const Grid modes = rho.modes_at(sp.sigma, &sp.interp);
  const cplx e = v / av;
  const int mmax = na / 2 - 2;
  cplx acc = 0.0;
  for (int i = 0; i < 2 * nr; ++i) {
    const double sg = sp.sigma[static_cast<std::size_t>(i)];
    const double wt = sp.weight[static_cast<std::size_t>(i)];
    if (i < nr) {
      // (q+1) R_{-q} (sg/|v|)^{q+1} e^{-i(q+2)phi} / |v|
      const cplx ratio = (sg / av) / e;
      cplx pw = ratio / (e * av), a = 0.0;
      for (int q = 0; q <= mmax; ++q) {
        a += double(q + 1) * modes(i, fft::bin(-q, na)) * pw;
        pw *= ratio;
      }
      acc += wt * a;
    } else {
      // (m-1) R_m (|v|/sg)^{m-2} e^{i(m-2)phi} / sg
      const cplx ratio = (av / sg) * e;
      cplx pw = 1.0 / sg, a = 0.0;
      for (int m = 2; m <= mmax; ++m) {
        a += double(m - 1) * modes(i, fft::bin(m, na)) * pw;
        pw *= ratio;
      }
      acc += wt * a;
    }
  }
  return -2.0 * acc + rho(w) * std::conj(e) / e;
}

/// Pi rho at every quadrature node of rho's own grid.
inline Grid beurling_on_grid(const Density& rho) {
  const auto& rule = rho.rule();
  const int nr = rule.n_rad, na = rule.n_ang;
  const int qmax = na / 2 - 2;
  Grid out(nr, na);
  std::vector<cplx> coef(static_cast<std::size_t>(na));
  for (int t = 0; t < nr; ++t) {
    const double st = rule.s[static_cast<std::size_t>(t)];
    const auto& sp = rule.split[static_cast<std::size_t>(t)];
    const Grid modes = rho.modes_at(sp.sigma, &sp.interp);
    std::fill(coef.begin(), coef.end(), cplx(0.0));
    for (int i = 0; i < 2 * nr; ++i) {
      const double sg = sp.sigma[static_cast<std::size_t>(i)];
      const double wt = sp.weight[static_cast<std::size_t>(i)];
      if (i < nr) {
        const double ratio = sg / st;
        double pw = ratio / st;
        for (int q = 0; q <= qmax; ++q) {
          coef[static_cast<std::size_t>(fft::bin(-(q + 2), na))] += wt * double(q + 1) * pw * modes(i, fft::bin(-q, na));
          pw *= ratio;
        }
      } else {
        const double ratio = st / sg;
        double pw = 1.0 / sg;
        for (int m = 2; m <= qmax; ++m) {
          coef[static_cast<std::size_t>(fft::bin(m - 2, na))] += wt * double(m - 1) * pw * modes(i, fft::bin(m, na));
          pw *= ratio;
        }
      }
    }
    for (auto& c : coef) c *= -2.0;
    const auto vals = fft::backward(coef);
    for (int k = 0; k < na; ++k) {
      const cplx e = rule.unit[static_cast<std::size_t>(k)];
      out(t, k) = vals[static_cast<std::size_t>(k)] + rho.values()(t, k) * std::conj(e) / e;
    }
  }
  return out;
}

/// Leading exterior term mu(w0) r^2 / (w - w0).
inline cplx asymptotic_T(const Density& mu, cplx w) {
  const Disk& disk = mu.disk();
  return mu(disk.center) * disk.radius * disk.radius / (w - disk.center);
}

/// Gram matrix G(a, b) = <conj(phi_{orders[a]}), phi_{orders[b]}> for pole c0.
inline Eigen::MatrixXcd gram_matrix(const Disk& disk, cplx pole, const std::vector<int>& orders,
                                    Resolution res = {}) {
  const auto n = static_cast<Eigen::Index>(orders.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Density d(disk, res, {DensityTerm{1.0, ConjPole{pole, orders[static_cast<std::size_t>(a)]}}});
    for (Eigen::Index b = 0; b < n; ++b)
      g(a, b) = pairing(d, PoleKernel{pole, orders[static_cast<std::size_t>(b)]}).value;
  }
  return g;
}

}  // namespace qcdeform

#endif  // QCDEFORM_INTEGRAL_OPS_HPP
