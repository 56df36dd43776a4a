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

#ifndef QCDEFORM_SERIES_HPP
#define QCDEFORM_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"

namespace qcdeform {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default truncation degree shared by all modules.
inline constexpr int kDefaultDegree = 64;

/// Truncated power series sum_k c_k (z - center)^k, k = lowest..degree.
///
/// lowest is 0 (Taylor) or -1 (Laurent with a single negative power, used for
/// inverted expansions). radius is the radius of the disk of validity; it is
/// infinite for polynomials.
class HoloSeries {
 public:
  HoloSeries() : HoloSeries(std::vector<cplx>{0.0, 0.0}) {}

  explicit HoloSeries(std::vector<cplx> coeffs, cplx center = 0.0, double radius = kInf,
                      int lowest = 0)
      : c_(std::move(coeffs)), center_(center), radius_(radius), lowest_(lowest) {
    if (lowest_ != 0 && lowest_ != -1)
      throw DomainError("HoloSeries: lowest power must be 0 or -1");
    if (!(radius_ > 0.0)) throw DomainError("HoloSeries: radius must be positive");
    while (static_cast<int>(c_.size()) + lowest_ < 2) c_.push_back(0.0);
    for (const auto& v : c_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("HoloSeries: non-finite coefficient");
  }

  static HoloSeries constant(cplx value, int degree = kDefaultDegree) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c[0] = value;
    return HoloSeries(std::move(c));
  }

  static HoloSeries monomial(int power, int degree = kDefaultDegree, cplx coef = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(std::max(power, degree)) + 1, 0.0);
    c[static_cast<std::size_t>(power)] = coef;
    return HoloSeries(std::move(c));
  }

  /// Taylor series at 0 of `gen(k)` for k = 0..degree.
  template <class Gen>
  static HoloSeries generate(int degree, Gen&& gen, double radius = kInf) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) c[static_cast<std::size_t>(k)] = gen(k);
    return HoloSeries(std::move(c), 0.0, radius);
  }

  int lowest() const { return lowest_; }
  int degree() const { return lowest_ + static_cast<int>(c_.size()) - 1; }
  bool is_laurent() const { return lowest_ < 0; }
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  std::span<const cplx> coeffs() const { return c_; }

  /// Coefficient of (z - center)^k; zero outside the stored range.
  cplx operator[](int k) const {
    const int i = k - lowest_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0.0;
    return c_[static_cast<std::size_t>(i)];
  }

  /// Same series cut (or zero-padded) to the given top degree.
  HoloSeries truncated(int degree) const {
    std::vector<cplx> c(static_cast<std::size_t>(degree - lowest_ + 1), 0.0);
    for (int k = lowest_; k <= std::min(degree, this->degree()); ++k)
      c[static_cast<std::size_t>(k - lowest_)] = (*this)[k];
    return HoloSeries(std::move(c), center_, radius_, lowest_);
  }

  HoloSeries with_radius(double radius) const {
    return HoloSeries(c_, center_, radius, lowest_);
  }

  /// Highest index with a nonzero coefficient (lowest() - 1 for the zero series).
  int effective_degree(double tol = 0.0) const {
    for (int k = degree(); k >= lowest_; --k)
      if (std::abs((*this)[k]) > tol) return k;
    return lowest_ - 1;
  }

 private:
  std::vector<cplx> c_;
  cplx center_;
  double radius_;
  int lowest_;
};

/// Horner evaluation; throws EvaluationOutOfRange outside the disk of validity.
inline cplx evaluate(const HoloSeries& f, cplx z) {
  const cplx x = z - f.center();
  if (!(std::abs(x) < f.radius()))
    throw EvaluationOutOfRange("evaluate: |z - center| = " + std::to_string(std::abs(x)) +
                               " outside radius " + std::to_string(f.radius()));
  if (f.is_laurent() && x == cplx(0.0))
    throw EvaluationOutOfRange("evaluate: Laurent series at its center");
  cplx acc = 0.0;
  for (int k = f.degree(); k >= 0; --k) acc = acc * x + f[k];
  if (f.is_laurent()) acc += f[-1] / x;
  return acc;
}

namespace detail {

inline void require_taylor(const HoloSeries& f, const char* op) {
  if (f.is_laurent()) throw DomainError(std::string(op) + ": Laurent operand not supported");
}

inline void require_same_center(const HoloSeries& f, const HoloSeries& g, const char* op) {
  if (f.center() != g.center()) throw DomainError(std::string(op) + ": centers differ");
}

}  // namespace detail

inline HoloSeries operator+(const HoloSeries& f, const HoloSeries& g) {
  detail::require_same_center(f, g, "add");
  const int lo = std::min(f.lowest(), g.lowest());
  const int hi = std::max(f.degree(), g.degree());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) c[static_cast<std::size_t>(k - lo)] = f[k] + g[k];
  return HoloSeries(std::move(c), f.center(), std::min(f.radius(), g.radius()), lo);
}

inline HoloSeries operator*(cplx a, const HoloSeries& f) {
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& v : c) v *= a;
  return HoloSeries(std::move(c), f.center(), f.radius(), f.lowest());
}

inline HoloSeries operator-(const HoloSeries& f) { return cplx(-1.0) * f; }
inline HoloSeries operator-(const HoloSeries& f, const HoloSeries& g) { return f + (-g); }

inline HoloSeries add_constant(const HoloSeries& f, cplx a) {
  return f + HoloSeries(std::vector<cplx>{a}, f.center());
}

/// Cauchy product truncated at the larger of the two degrees.
inline HoloSeries operator*(const HoloSeries& f, const HoloSeries& g) {
  detail::require_taylor(f, "multiply");
  detail::require_taylor(g, "multiply");
  detail::require_same_center(f, g, "multiply");
  const int n = std::max(f.degree(), g.degree());
  const int df = f.effective_degree();
  const int dg = g.effective_degree();
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= std::min(df, n); ++i) {
    const cplx fi = f[i];
    if (fi == cplx(0.0)) continue;
    for (int j = 0; j <= std::min(dg, n - i); ++j) c[static_cast<std::size_t>(i + j)] += fi * g[j];
  }
  return HoloSeries(std::move(c), f.center(), std::min(f.radius(), g.radius()));
}

/// 1/g truncated at deg g; requires g(center) != 0.
inline HoloSeries reciprocal(const HoloSeries& g, int degree = -1) {
  detail::require_taylor(g, "reciprocal");
  const cplx g0 = g[0];
  if (std::abs(g0) == 0.0) throw SingularDivision("reciprocal: vanishing constant term");
  const int n = degree < 0 ? g.degree() : degree;
  std::vector<cplx> r(static_cast<std::size_t>(n) + 1, 0.0);
  r[0] = 1.0 / g0;
  for (int k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    for (int i = 1; i <= std::min(k, g.degree()); ++i) acc += g[i] * r[static_cast<std::size_t>(k - i)];
    r[static_cast<std::size_t>(k)] = -acc / g0;
  }
  // Validity shrinks to the nearest zero of g, which is not tracked.
  return HoloSeries(std::move(r), g.center(), g.radius());
}

inline HoloSeries operator/(const HoloSeries& f, const HoloSeries& g) {
  detail::require_taylor(f, "divide");
  detail::require_same_center(f, g, "divide");
  const int n = std::max(f.degree(), g.degree());
  return f.truncated(n) * reciprocal(g, n);
}

/// Term-by-term derivative; the result has degree deg f - 1.
inline HoloSeries derivative(const HoloSeries& f) {
  detail::require_taylor(f, "derivative");
  std::vector<cplx> c(static_cast<std::size_t>(std::max(f.degree(), 1)));
  for (int k = 1; k <= f.degree(); ++k) c[static_cast<std::size_t>(k - 1)] = double(k) * f[k];
  return HoloSeries(std::move(c), f.center(), f.radius());
}

/// f(center + r (z - center)), the homotopy f_r.
inline HoloSeries dilate(const HoloSeries& f, double r) {
  detail::require_taylor(f, "dilate");
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  double rk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= rk;
    rk *= r;
  }
  const double radius = r == 0.0 ? kInf : f.radius() / std::abs(r);
  return HoloSeries(std::move(c), f.center(), radius);
}

/// exp(g) through deg g, via f' = g' f.
inline HoloSeries exp_series(const HoloSeries& g) {
  detail::require_taylor(g, "exp");
  const int n = g.degree();
  std::vector<cplx> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = std::exp(g[0]);
  for (int k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += double(i) * g[i] * e[static_cast<std::size_t>(k - i)];
    e[static_cast<std::size_t>(k)] = acc / double(k);
  }
  return HoloSeries(std::move(e), g.center(), g.radius());
}

/// Integer power f^m (m >= 0) truncated at deg f.
inline HoloSeries power(const HoloSeries& f, int m) {
  std::vector<cplx> one(static_cast<std::size_t>(f.degree()) + 1, 0.0);
  one[0] = 1.0;
  HoloSeries acc(std::move(one), f.center());
  for (int i = 0; i < m; ++i) acc = acc * f;
  return acc;
}

/// Post-composition with the Moebius map x -> (a x + b) / (c x + d).
inline HoloSeries mobius_compose(cplx a, cplx b, cplx c, cplx d, const HoloSeries& w) {
  const HoloSeries num = add_constant(a * w, b);
  const HoloSeries den = add_constant(c * w, d);
  return num / den;
}

/// Rough bound on |sum_{k > N} c_k x^k| for |x| <= rho, from the geometric
/// decay of the top quarter of the stored coefficients. Infinite if the
/// coefficients do not decay fast enough for the series to converge at rho.
inline double tail_estimate(const HoloSeries& f, double rho) {
  const int n = f.degree();
  const int lo = std::max(1, n - std::max(2, n / 4));
  const int mid = (lo + n) / 2;
  double a_lo = 0.0, a_hi = 0.0;
  for (int k = lo; k <= mid; ++k) a_lo = std::max(a_lo, std::abs(f[k]));
  for (int k = mid + 1; k <= n; ++k) a_hi = std::max(a_hi, std::abs(f[k]));
  if (a_hi == 0.0) return 0.0;
  const double q = a_lo > 0.0 ? std::max(std::pow(a_hi / a_lo, 1.0 / double(mid + 1 - lo)), 1e-3) : 1e-3;
  const double qr = q * rho;
  if (qr >= 1.0) return kInf;
  return a_hi * std::pow(q, n - mid) * std::pow(rho, n + 1) / (1.0 - qr);
}

/// Result of recovering Taylor coefficients from equispaced circle samples.
struct CircleRecovery {
  HoloSeries series;
  double aliasing_bound = 0.0;  ///< largest high-band DFT magnitude (sample scale)
  double spectrum_max = 0.0;
};

inline bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

/// Samples z -> f(rho e^{2 pi i m / M}), m = 0..M-1.
template <class F>
std::vector<cplx> sample_circle(F&& f, double rho, std::size_t m_count) {
  std::vector<cplx> s(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double t = 2.0 * std::numbers::pi * double(m) / double(m_count);
    s[m] = f(std::polar(rho, t));
  }
  return s;
}

/// Taylor coefficients c_0..c_N at 0 from M samples on |z| = rho.
///
/// The band of frequencies |k| >= M/4 must hold only aliasing noise; if its
/// peak exceeds alias_tol times the spectrum peak a ResolutionError is thrown.
inline CircleRecovery coeffs_from_circle_samples(std::span<const cplx> samples, double rho, int n,
                                                 double alias_tol = 1e-10,
                                                 double radius = -1.0) {
  const std::size_t m = samples.size();
  if (!is_power_of_two(m) || m < 4 * static_cast<std::size_t>(n) || m < 4)
    throw DomainError("coeffs_from_circle_samples: M must be a power of two with M >= 4N");
  if (!(rho > 0.0)) throw DomainError("coeffs_from_circle_samples: rho must be positive");
  const std::vector<cplx> x = fft::forward(samples);
  double peak = 0.0, band = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = std::abs(x[k]) / double(m);
    peak = std::max(peak, a);
    if (k >= m / 4 && k <= 3 * m / 4) band = std::max(band, a);
  }
  if (band > alias_tol * std::max(peak, 1e-300) && band > 1e-300)
    throw ResolutionError("coeffs_from_circle_samples: spectrum not decayed (band/peak = " +
                          std::to_string(band / peak) + ")");
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  double rk = 1.0;
  for (int k = 0; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] / (double(m) * rk);
    rk *= rho;
  }
  return {HoloSeries(std::move(c), 0.0, radius > 0.0 ? radius : rho), band, peak};
}

}  // namespace qcdeform

#endif  // QCDEFORM_SERIES_HPP
