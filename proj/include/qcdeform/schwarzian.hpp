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

#ifndef QCDEFORM_SCHWARZIAN_HPP
#define QCDEFORM_SCHWARZIAN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace qcdeform {

/// S_w = (w''/w')' - (w''/w')^2 / 2, truncated at degree deg w - 3.
inline HoloSeries schwarzian_of(const HoloSeries& w) {
  if (w.is_laurent()) throw DomainError("schwarzian_of: expected a Taylor series");
  const int n = w.degree();
  if (n < 3) throw DomainError("schwarzian_of: need degree >= 3");
  const HoloSeries d1 = derivative(w);
  if (d1[0] == cplx(0.0)) throw DomainError("schwarzian_of: w'(0) = 0, not locally univalent");
  const HoloSeries p = (derivative(d1).truncated(n - 2) / d1.truncated(n - 2)).truncated(n - 2);
  const HoloSeries pp = p * p;
  return (derivative(p) - cplx(0.5) * pp.truncated(n - 3)).truncated(n - 3);
}

/// w(0), w'(0), w''(0).
struct SchwarzInit {
  cplx a0 = 0.0;
  cplx a1 = 1.0;
  cplx a2 = 0.0;
};

struct SchwarzSolution {
  HoloSeries f;
  HoloSeries w;
  HoloSeries eta1, eta2;  ///< eta'' + (f/2) eta = 0; eta1 = z + .., eta2 = 1 + ..
  SchwarzInit init;
  double pole_free_radius = 0.0;  ///< no zero of the denominator of w inside
  std::vector<std::string> warnings;
};

namespace detail {

inline HoloSeries schwarz_eta(const HoloSeries& f, cplx e0, cplx e1, int degree) {
  std::vector<cplx> e(static_cast<std::size_t>(degree) + 1, 0.0);
  e[0] = e0;
  if (degree >= 1) e[1] = e1;
  for (int m = 0; m + 2 <= degree; ++m) {
    cplx acc = 0.0;
    for (int k = 0; k <= m; ++k) acc += f[k] * e[static_cast<std::size_t>(m - k)];
    e[static_cast<std::size_t>(m + 2)] = -acc / (2.0 * (m + 2) * (m + 1));
  }
  return HoloSeries(std::move(e));
}

/// Winding number of a series around 0 on |z| = rho.
inline int winding(const HoloSeries& g, double rho, int m = 512) {
  double acc = 0.0;
  cplx prev = evaluate(g, rho);
  for (int k = 1; k <= m; ++k) {
    const cplx cur = evaluate(g, std::polar(rho, 2.0 * std::numbers::pi * k / m));
    if (cur == cplx(0.0) || prev == cplx(0.0)) return -1;
    acc += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(acc / (2.0 * std::numbers::pi)));
}

}  // namespace detail

/// Locally univalent w with S_w = f and the given 2-jet at 0.
///
/// w0 = eta1/eta2 solves S = f with w0 = z + O(z^3); the 2-jet is then met
/// by w = a0 + a1 w0 / (1 - c w0), c = a2 / (2 a1).
inline SchwarzSolution solve_schwarz(const HoloSeries& f, SchwarzInit init = {}, int degree = -1) {
  if (f.is_laurent() || f.center() != cplx(0.0)) throw DomainError("solve_schwarz: f must be a Taylor series at 0");
  if (init.a1 == cplx(0.0)) throw DomainError("solve_schwarz: a1 = 0");
  const int n = degree < 0 ? f.degree() + 2 : degree;
  SchwarzSolution s;
  s.f = f;
  s.init = init;
  s.eta1 = detail::schwarz_eta(f, 0.0, 1.0, n);
  s.eta2 = detail::schwarz_eta(f, 1.0, 0.0, n);
  const cplx c = init.a2 / (2.0 * init.a1);
  const HoloSeries den = s.eta2 - c * s.eta1;
  s.w = add_constant(init.a1 * s.eta1 / den, init.a0).truncated(n);

  // largest radius (<= radius of f, capped at 1) on which den has no zero
  const double rmax = std::min(1.0, f.radius());
  s.pole_free_radius = rmax;
  for (int i = 1; i <= 64; ++i) {
    const double rho = rmax * i / 64.0 * (i == 64 ? 1.0 - 1e-9 : 1.0);
    if (detail::winding(den, rho) != 0) {
      s.pole_free_radius = rmax * (i - 1) / 64.0;
      s.warnings.push_back("denominator of w vanishes inside |z| < " + std::to_string(rho) +
                           "; truncated w is not valid there");
      break;
    }
  }
  return s;
}

/// F(z) = 1/w(1/z) = e^{-i theta} z + b_0 + b_1 z^{-1} + ... for w(0) = 0,
/// w'(0) = e^{i theta}. Stored as a Laurent series in 1/z with lowest power
/// -1, so F[j] = b_j for j >= 0 and F[-1] = e^{-i theta}.
inline HoloSeries invert_expansion(const HoloSeries& w) {
  if (w.is_laurent() || w.center() != cplx(0.0)) throw DomainError("invert_expansion: expected a Taylor series at 0");
  if (std::abs(w[0]) > 0.0) throw DomainError("invert_expansion: need w(0) = 0");
  if (std::abs(std::abs(w[1]) - 1.0) > 1e-12) throw DomainError("invert_expansion: need |w'(0)| = 1");
  // w = x g(x) with g(0) = e^{i theta}; F = (1/g)(1/z) * z
  std::vector<cplx> g(static_cast<std::size_t>(w.degree()));
  for (int k = 1; k <= w.degree(); ++k) g[static_cast<std::size_t>(k - 1)] = w[k];
  const HoloSeries r = reciprocal(HoloSeries(std::move(g)));
  return HoloSeries(std::vector<cplx>(r.coeffs().begin(), r.coeffs().end()), 0.0, kInf, -1);
}

/// Comparison of the two leading monomials of a_n in (b_0, b_1) with the
/// structural form (-1)^{n-1} E1 b0^{n-1} - (-1)^{n-1} (n-2) E2 b1 b0^{n-3}.
struct LeadingTerms {
  int n = 0;
  cplx e1 = 0.0, e1_expected = 0.0;  ///< E1 = e^{i n theta}
  cplx e2 = 0.0, e2_expected = 0.0;  ///< E2 = e^{i (n-1) theta}, n >= 3
  double deviation = 0.0;
};

struct AFromB {
  std::vector<cplx> a;  ///< a_0 = 0, a_1 = e^{i theta}, a_2, ...
  std::vector<LeadingTerms> leading;
};

namespace detail {

inline std::vector<cplx> a_from_b_raw(const std::vector<cplx>& b, double theta) {
  std::vector<cplx> r(b.size() + 1);
  r[0] = std::polar(1.0, -theta);
  std::copy(b.begin(), b.end(), r.begin() + 1);
  const HoloSeries g = reciprocal(HoloSeries(std::move(r)));
  std::vector<cplx> a(b.size() + 2, 0.0);
  for (std::size_t k = 0; k <= b.size(); ++k) a[k + 1] = g[static_cast<int>(k)];
  return a;
}

}  // namespace detail

/// Coefficients of w from those of its inversion F: w(x) = x / R(x) with
/// R(x) = e^{-i theta} + b_0 x + b_1 x^2 + ...
inline AFromB a_from_b_recursion(const std::vector<cplx>& b, double theta) {
  AFromB out;
  out.a = detail::a_from_b_raw(b, theta);
  // the monomial coefficients are recovered exactly by a DFT in an auxiliary
  // variable s: a_n(b0 = 1, b1 = s, rest 0) is a polynomial in s.
  const int top = static_cast<int>(b.size()) + 1;
  const int m = 64;
  for (int n = 2; n <= std::min(top, 24); ++n) {
    LeadingTerms t;
    t.n = n;
    const double sg = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    std::vector<cplx> probe(b.size(), 0.0);
    cplx c0 = 0.0, c1 = 0.0;
    for (int k = 0; k < m; ++k) {
      const cplx s = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
      probe[0] = 1.0;
      if (probe.size() > 1) probe[1] = s;
      const cplx an = detail::a_from_b_raw(probe, theta)[static_cast<std::size_t>(n)];
      c0 += an;
      c1 += an / s;
    }
    c0 /= double(m);
    c1 /= double(m);
    t.e1 = c0 / sg;
    t.e1_expected = std::polar(1.0, n * theta);
    t.deviation = std::abs(t.e1 - t.e1_expected);
    if (n >= 3 && b.size() > 1) {
      t.e2 = -c1 / (sg * (n - 2));
      t.e2_expected = std::polar(1.0, (n - 1) * theta);
      t.deviation = std::max(t.deviation, std::abs(t.e2 - t.e2_expected));
    }
    out.leading.push_back(t);
  }
  return out;
}

/// Numerical covering radius: min |w| on |z| = 0.995 and 0.999, linearly
/// extrapolated to |z| = 1.
template <class F>
  requires std::invocable<F&, cplx>
double covering_radius(F&& w, int samples = 4096) {
  const auto ring_min = [&](double rho) {
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) m = std::min(m, std::abs(w(std::polar(rho, 2.0 * std::numbers::pi * k / samples))));
    return m;
  };
  const double r1 = 0.995, r2 = 0.999;
  const double m1 = ring_min(r1), m2 = ring_min(r2);
  return std::max(0.0, m2 + (m2 - m1) * (1.0 - r2) / (r2 - r1));
}

inline double covering_radius(const HoloSeries& w, int samples = 4096) {
  return covering_radius([&w](cplx z) { return evaluate(w, z); }, samples);
}

}  // namespace qcdeform

#endif  // QCDEFORM_SCHWARZIAN_HPP
