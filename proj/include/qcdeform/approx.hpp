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

#ifndef QCDEFORM_APPROX_HPP
#define QCDEFORM_APPROX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "series.hpp"
#include "spaces.hpp"

namespace qcdeform {

/// r(z) = sum_j d_j / (z - e^{i alpha_j})^2.
struct DoublePoleRational {
  std::vector<double> angles;
  std::vector<cplx> weights;

  int n() const { return static_cast<int>(angles.size()); }
  cplx operator()(cplx z) const {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const cplx t = z - std::polar(1.0, angles[j]);
      acc += weights[j] / (t * t);
    }
    return acc;
  }
};

struct FitOptions {
  int iters = 12;           ///< alternating sweeps
  int scan = 64;            ///< angles tried when placing a new pole
  int fit_rad = 40;         ///< least-squares grid, boundary-clustered radii
  int fit_ang = 160;
  BpGrid eval{256, 512};    ///< grid for the reported sup error
  std::uint64_t seed = 1;
  /// Pole set closed under conjugation: poles at 1 or -1 stay put and the
  /// others move in pairs e^{+-i beta}. For real-symmetric targets the
  /// weights then come out real on the real poles, conjugate on pairs.
  bool symmetric = false;
};

struct FitResult {
  DoublePoleRational r;
  double error = 0.0;       ///< discrete B_{p+1} norm of r - f
  int sweeps = 0;
};

namespace detail {

class PoleFitter {
 public:
  template <class F>
  PoleFitter(F&& f, double p, const FitOptions& opt) : p_(p), opt_(opt) {
    for (int i = 0; i < opt.fit_rad; ++i) {
      const double a = double(opt.fit_rad - i) / opt.fit_rad;
      const double t = 1.0 - a * a;
      const double wt = std::pow(1.0 - t * t, p + 1.0);
      for (int k = 0; k < opt.fit_ang; ++k) {
        const cplx z = std::polar(t, 2.0 * std::numbers::pi * (k + 0.5 * (i % 2)) / opt.fit_ang);
        z_.push_back(z);
        w_.push_back(wt);
        b_.push_back(wt * f(z));
      }
    }
    target_ = [f](cplx z) { return cplx(f(z)); };
  }

  /// Weighted least-squares weights for the given poles; residual norm via out.
  bool solve(const std::vector<double>& angles, std::vector<cplx>& d, double& res) const {
    const auto m = static_cast<Eigen::Index>(z_.size());
    const auto n = static_cast<Eigen::Index>(angles.size());
    Eigen::MatrixXcd A(m, n);
    Eigen::VectorXcd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      b(i) = b_[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n; ++j) {
        const cplx t = z_[static_cast<std::size_t>(i)] - std::polar(1.0, angles[static_cast<std::size_t>(j)]);
        A(i, j) = w_[static_cast<std::size_t>(i)] / (t * t);
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    qr.setThreshold(1e-12);
    if (qr.rank() < n) return false;
    const Eigen::VectorXcd x = qr.solve(b);
    d.assign(x.data(), x.data() + x.size());
    res = (A * x - b).norm();
    return true;
  }

  double objective(const std::vector<double>& angles) const {
    std::vector<cplx> d;
    double res = 0.0;
    return solve(angles, d, res) ? res : std::numeric_limits<double>::infinity();
  }

  double sup_error(const DoublePoleRational& r) const {
    return bp_norm([&](cplx z) { return r(z) - target_(z); }, p_ + 1.0, opt_.eval).value;
  }

 private:
  double p_;
  FitOptions opt_;
  std::vector<cplx> z_;
  std::vector<double> w_;
  std::vector<cplx> b_;
  std::function<cplx(cplx)> target_;
};

inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

/// Best angle for one extra pole among `scan` equispaced, seeded-offset angles.
inline double scan_new_pole(const PoleFitter& fit, std::vector<double> angles, int scan, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> off(0.0, 2.0 * std::numbers::pi / scan);
  const double o = off(rng);
  double best = std::numeric_limits<double>::infinity(), arg = o;
  angles.push_back(0.0);
  for (int k = 0; k < scan; ++k) {
    angles.back() = o + 2.0 * std::numbers::pi * k / scan;
    const double v = fit.objective(angles);
    if (v < best) {
      best = v;
      arg = angles.back();
    }
  }
  return arg;
}

/// Golden-section minimization of the projected residual in angle j.
inline void golden_coordinate(const PoleFitter& fit, std::vector<double>& angles, std::size_t j, double h) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double a) {
    std::vector<double> t = angles;
    t[j] = a;
    return fit.objective(t);
  };
  double lo = angles[j] - h, hi = angles[j] + h;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-14) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double cand = 0.5 * (lo + hi);
  if (f(cand) <= f(angles[j])) angles[j] = cand;
}

inline FitResult run_fit(const PoleFitter& fit, std::vector<double> angles, const FitOptions& opt, FitResult best) {
  const int n = static_cast<int>(angles.size());
  auto materialize = [&](const std::vector<double>& a, FitResult& out) {
    std::vector<cplx> d;
    double res = 0.0;
    if (!fit.solve(a, d, res)) return false;
    out.r.angles.clear();
    for (double x : a) out.r.angles.push_back(wrap_angle(x));
    out.r.weights = d;
    out.error = fit.sup_error(out.r);
    return true;
  };
  FitResult cur;
  if (!materialize(angles, cur)) {
    // coincident poles: spread them by pi/(8n) and retry once
    std::sort(angles.begin(), angles.end());
    for (int j = 1; j < n; ++j)
      angles[static_cast<std::size_t>(j)] = std::max(angles[static_cast<std::size_t>(j)],
                                                     angles[static_cast<std::size_t>(j - 1)] + std::numbers::pi / (8.0 * n));
    if (!materialize(angles, cur)) throw IllConditioned("fit_double_poles: rank-deficient least squares");
  }
  if (best.r.n() == 0 || cur.error < best.error) best = cur;
  double h = std::numbers::pi / opt.scan;
  double prev_obj = fit.objective(angles);
  for (int s = 0; s < opt.iters; ++s) {
    for (std::size_t j = 0; j < angles.size(); ++j) golden_coordinate(fit, angles, j, h);
    ++best.sweeps;
    if (materialize(angles, cur) && cur.error < best.error) {
      const int sw = best.sweeps;
      best = cur;
      best.sweeps = sw;
    }
    const double obj = fit.objective(angles);
    if (!(obj < prev_obj * (1.0 - 1e-10))) break;
    prev_obj = obj;
    h = std::max(0.5 * h, 1e-6);
  }
  return best;
}

struct SymmetricLayout {
  std::vector<double> fixed;  ///< 0 or pi
  std::vector<double> pairs;  ///< beta in (0, pi)

  std::vector<double> angles() const {
    std::vector<double> a = fixed;
    for (double b : pairs) {
      a.push_back(b);
      a.push_back(-b);
    }
    return a;
  }
};

inline FitResult symmetric_from(const PoleFitter& fit, SymmetricLayout lay, int pairs, const FitOptions& opt) {
  for (int i = 0; i < pairs; ++i) {
    double best = std::numeric_limits<double>::infinity(), arg = 0.0;
    for (int k = 1; k < opt.scan / 2; ++k) {
      SymmetricLayout t = lay;
      t.pairs.push_back(2.0 * std::numbers::pi * k / opt.scan);
      const double v = fit.objective(t.angles());
      if (v < best) best = v, arg = t.pairs.back();
    }
    lay.pairs.push_back(arg);
  }

  FitResult best;
  auto take = [&](const SymmetricLayout& l) {
    std::vector<cplx> d;
    double res = 0.0;
    if (!fit.solve(l.angles(), d, res)) return;
    FitResult cur;
    for (double a : l.angles()) cur.r.angles.push_back(wrap_angle(a));
    cur.r.weights = d;
    cur.error = fit.sup_error(cur.r);
    cur.sweeps = best.sweeps;
    if (best.r.n() == 0 || cur.error < best.error) best = cur;
  };
  take(lay);
  if (best.r.n() == 0) return best;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double h = std::numbers::pi / opt.scan;
  double prev = fit.objective(lay.angles());
  for (int s = 0; s < opt.iters && !lay.pairs.empty(); ++s) {
    for (std::size_t j = 0; j < lay.pairs.size(); ++j) {
      auto f = [&](double b) {
        SymmetricLayout t = lay;
        t.pairs[j] = b;
        return fit.objective(t.angles());
      };
      double lo = std::max(lay.pairs[j] - h, 1e-9), hi = std::min(lay.pairs[j] + h, std::numbers::pi - 1e-9);
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = f(x1), f2 = f(x2);
      while (hi - lo > 1e-14) {
        if (f1 <= f2) {
          hi = x2, x2 = x1, f2 = f1, x1 = hi - g * (hi - lo), f1 = f(x1);
        } else {
          lo = x1, x1 = x2, f1 = f2, x2 = lo + g * (hi - lo), f2 = f(x2);
        }
      }
      if (f(0.5 * (lo + hi)) <= f(lay.pairs[j])) lay.pairs[j] = 0.5 * (lo + hi);
    }
    ++best.sweeps;
    take(lay);
    const double obj = fit.objective(lay.angles());
    if (!(obj < prev * (1.0 - 1e-10))) break;
    prev = obj;
    h = std::max(0.5 * h, 1e-6);
  }
  return best;
}

/// Every admissible set of real poles is tried; the best by sup error wins.
inline FitResult run_symmetric_fit(const PoleFitter& fit, int n, const FitOptions& opt) {
  const std::vector<std::vector<double>> fixed_sets = {{}, {0.0}, {std::numbers::pi}, {0.0, std::numbers::pi}};
  FitResult best;
  for (const auto& fs : fixed_sets) {
    const int rest = n - static_cast<int>(fs.size());
    if (rest < 0 || rest % 2 != 0) continue;
    FitResult r = symmetric_from(fit, SymmetricLayout{fs, {}}, rest / 2, opt);
    if (r.r.n() > 0 && (best.r.n() == 0 || r.error < best.error)) best = r;
  }
  if (best.r.n() == 0) throw IllConditioned("fit_double_poles: rank-deficient least squares");
  return best;
}

}  // namespace detail

/// Fit n double poles on the unit circle to f in the B_{p+1} norm.
template <class F>
FitResult fit_double_poles(F&& f, int n, double p, const FitOptions& opt = {}) {
  if (n < 1) throw DomainError("fit_double_poles: n must be >= 1");
  const detail::PoleFitter fit(f, p, opt);
  if (opt.symmetric) return detail::run_symmetric_fit(fit, n, opt);
  std::mt19937_64 rng(opt.seed);
  std::vector<double> angles;
  for (int k = 0; k < n; ++k) angles.push_back(detail::scan_new_pole(fit, angles, opt.scan, rng));
  return detail::run_fit(fit, angles, opt, FitResult{});
}

struct CurvePoint {
  int n = 0;
  double error = 0.0;
  FitResult fit;
};

/// Fits for n = 1..n_max; each fit starts from the previous one plus a new
/// pole of zero weight, so the errors are non-increasing.
template <class F>
std::vector<CurvePoint> error_curve(F&& f, int n_max, double p, const FitOptions& opt = {}) {
  std::vector<CurvePoint> out;
  if (n_max < 1) return out;
  if (opt.symmetric) throw DomainError("error_curve: symmetric layouts cannot be nested one pole at a time");
  const detail::PoleFitter fit(f, p, opt);
  std::mt19937_64 rng(opt.seed);
  FitResult prev;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<double> angles = prev.r.angles;
    const double extra = detail::scan_new_pole(fit, angles, opt.scan, rng);
    FitResult start;
    if (n > 1) {
      start = prev;
      start.r.angles.push_back(detail::wrap_angle(extra));
      start.r.weights.push_back(0.0);
      start.sweeps = 0;
    }
    angles.push_back(extra);
    FitResult r = detail::run_fit(fit, angles, opt, start);
    if (n > 1 && r.error > prev.error) throw Error("error_curve: monotonicity violated");
    out.push_back({n, r.error, r});
    prev = r;
  }
  return out;
}

}  // namespace qcdeform

#endif  // QCDEFORM_APPROX_HPP
