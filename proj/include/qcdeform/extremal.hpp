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

#ifndef QCDEFORM_EXTREMAL_HPP
#define QCDEFORM_EXTREMAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "schwarzian.hpp"
#include "series.hpp"
#include "spaces.hpp"

namespace qcdeform {

struct SearchOptions {
  int g_degree = 12;     ///< degree of the exponent polynomial g
  int f_degree = 96;     ///< truncation of exp(g)
  int boundary = 256;    ///< circle samples for the zero-free check
  bool keep_candidates = true;
};

struct CandidateStat {
  int index = 0;
  std::string kind;      ///< constant, random, homotopy, ascent
  double value = 0.0;    ///< |c_n| after normalization
  double norm = 0.0;     ///< ||f||_H after normalization
  double min_modulus = 0.0;
};

struct SearchRecord {
  SpaceSpec space = SpaceSpec::hardy();
  int n = 0;
  double best_value = 0.0;
  HoloSeries best_f;
  HoloSeries best_g;
  int samples = 0;
  int rejected = 0;
  std::uint64_t seed = 0;
  std::vector<double> running;   ///< best_value after each sample
  std::vector<CandidateStat> candidates;
};

namespace detail {

struct Candidate {
  bool ok = false;
  HoloSeries f;
  double value = 0.0, norm = 0.0, min_modulus = 0.0;
};

/// exp(g) rescaled to unit norm; rejected if the truncation winds around 0.
inline Candidate make_candidate(const SpaceSpec& space, const HoloSeries& g, int n, const SearchOptions& opt) {
  std::vector<cplx> c(static_cast<std::size_t>(opt.f_degree) + 1, 0.0);
  for (int k = 0; k <= std::min(g.degree(), opt.f_degree); ++k) c[static_cast<std::size_t>(k)] = g[k];
  HoloSeries f = exp_series(HoloSeries(std::move(c)));
  Candidate out;
  const double nrm = hilbert_norm(space, f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return out;
  f = (1.0 / nrm) * f;

  double minmod = std::numeric_limits<double>::infinity();
  double turn = 0.0;
  cplx prev = evaluate(f, 1.0);
  for (int k = 1; k <= opt.boundary; ++k) {
    const cplx v = evaluate(f, std::polar(1.0, 2.0 * std::numbers::pi * k / opt.boundary));
    minmod = std::min(minmod, std::abs(v));
    turn += std::arg(v / prev);
    prev = v;
  }
  if (!(minmod > 0.0) || std::lround(turn / (2.0 * std::numbers::pi)) != 0) return out;
  out.ok = true;
  out.norm = hilbert_norm(space, f);
  out.value = n <= f.degree() ? std::abs(f[n]) : 0.0;
  out.min_modulus = minmod;
  out.f = std::move(f);
  return out;
}

inline HoloSeries random_exponent(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  const double scale = 2.0 * unit(rng);
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int k = 0; k <= degree; ++k) {
    const double s = k == 0 ? 1.0 : scale / k;
    c[static_cast<std::size_t>(k)] = s * cplx(gauss(rng), gauss(rng));
  }
  return HoloSeries(std::move(c));
}

}  // namespace detail

/// Running sup of |c_n| over unit-norm zero-free f = exp(g): a lower bound
/// for C_n(H). The candidate sequence does not depend on the budget, so a
/// larger budget never lowers best_value.
inline SearchRecord hsz_search(const SpaceSpec& space, int n, int budget, std::uint64_t seed,
                               const SearchOptions& opt = {}) {
  if (n < 0) throw DomainError("hsz_search: n must be >= 0");
  if (opt.f_degree > space.n_norm()) throw DomainError("hsz_search: truncation exceeds norm truncation");
  SearchRecord rec;
  rec.space = space;
  rec.n = n;
  rec.seed = seed;
  rec.best_f = HoloSeries::constant(0.0, 0);
  rec.best_g = HoloSeries::constant(0.0, opt.g_degree);
  if (budget <= 0) return rec;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(1, opt.g_degree);
  std::uniform_int_distribution<int> sign(0, 3);
  static constexpr double kRadii[] = {0.9, 0.75, 0.5, 0.25, 0.0};
  double step = 0.1;
  int fails = 0, hom = 0;
  bool have = false;

  for (int s = 0; s < budget; ++s) {
    HoloSeries g;
    std::string kind;
    if (s == 0) {
      g = HoloSeries::constant(0.0, opt.g_degree);
      kind = "constant";
    } else if (!have || s % 4 == 1 || s % 4 == 2) {
      g = detail::random_exponent(rng, opt.g_degree);
      kind = "random";
    } else if (s % 4 == 3) {
      g = dilate(rec.best_g, kRadii[hom++ % 5]);
      kind = "homotopy";
    } else {
      const int k = coord(rng);
      const int d = sign(rng);
      std::vector<cplx> c(rec.best_g.coeffs().begin(), rec.best_g.coeffs().end());
      c[static_cast<std::size_t>(k)] += step * (d == 0 ? cplx(1, 0) : d == 1 ? cplx(-1, 0) : d == 2 ? cplx(0, 1) : cplx(0, -1));
      g = HoloSeries(std::move(c));
      kind = "ascent";
    }

    const detail::Candidate c = detail::make_candidate(space, g, n, opt);
    ++rec.samples;
    if (!c.ok) {
      ++rec.rejected;
    } else {
      if (opt.keep_candidates) rec.candidates.push_back({s, kind, c.value, c.norm, c.min_modulus});
      if (!have || c.value > rec.best_value) {
        rec.best_value = c.value;
        rec.best_f = c.f;
        rec.best_g = g;
        have = true;
        if (kind == "ascent") fails = 0;
      } else if (kind == "ascent" && ++fails >= 4 * opt.g_degree) {
        step = std::max(0.5 * step, 1e-6);
        fails = 0;
      }
    }
    rec.running.push_back(rec.best_value);
  }
  return rec;
}

/// A finite sample of a family of Schwarzians (elements of B_2).
struct Family {
  std::string label;
  std::vector<HoloSeries> members;
};

/// {t f1 : |t| <= 1}: member 0 is t = 1, the rest are seeded points of the
/// closed disk. f1 is scaled so that sum |c_k| = b2_bound, which bounds the
/// B_2 norm of every member.
inline Family disk_family(std::mt19937_64& rng, int members, double b2_bound = 0.2, int degree = 8,
                          int storage = 14) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<cplx> c(static_cast<std::size_t>(storage) + 1, 0.0);
  double l1 = 0.0;
  for (int k = 0; k <= degree; ++k) {
    c[static_cast<std::size_t>(k)] = cplx(gauss(rng), gauss(rng)) / double(k + 1);
    l1 += std::abs(c[static_cast<std::size_t>(k)]);
  }
  for (auto& v : c) v *= b2_bound / l1;
  const HoloSeries f1(std::move(c));
  Family fam;
  fam.label = "disk";
  for (int i = 0; i < members; ++i) {
    const cplx t = i == 0 ? cplx(1.0) : std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    fam.members.push_back(t * f1);
  }
  return fam;
}

/// {t f1 : t in [0, 1]} on an equispaced grid, t = 1 last.
inline Family ray_family(const HoloSeries& f1, int members) {
  Family fam;
  fam.label = "ray";
  for (int i = 0; i < members; ++i) fam.members.push_back((members == 1 ? 1.0 : double(i) / (members - 1)) * f1);
  return fam;
}

inline std::vector<Family> random_disk_families(int count, int members, std::uint64_t seed, double b2_bound = 0.2) {
  std::mt19937_64 rng(seed);
  std::vector<Family> out;
  for (int i = 0; i < count; ++i) out.push_back(disk_family(rng, members, b2_bound));
  return out;
}

struct Thm2Options {
  int m_max = 16;      ///< |a_m| compared for 3 <= m <= m_max
  double tol = 1e-9;
};

struct Thm2Sample {
  int family = 0, member = 0;
  double c_n = 0.0;
  double bound = 0.0;   ///< max(|c_1^0|, |c_n^0|)
  bool bound_violation = false;
};

struct AmExceedance {
  int family = 0, member = 0, m = 0;
  double a_m = 0.0, a_m0 = 0.0;
};

struct Thm2Report {
  std::string header;
  int n = 0;
  double tol = 0.0;
  int families = 0;
  std::vector<int> extremal_member;   ///< sampled argmax |c_1| per family
  std::vector<Thm2Sample> samples;
  std::vector<AmExceedance> am_exceedances;
  int bound_violations = 0;
  int skipped = 0;                    ///< members whose w has a pole in the closed disk
  std::vector<std::string> notes;
};

/// Sampled comparison of |c_n| against max(|c_1^0|, |c_n^0|) and of the
/// coefficients a_m of the normalized w with S_w = f against those of f_0.
inline Thm2Report check_thm2_consistency(const std::vector<Family>& families, int n, const Thm2Options& opt = {}) {
  Thm2Report rep;
  rep.header =
      "exploratory non-falsification on finite sampled families; hypothesis-unchecked "
      "(the boundary condition on the family is not verified); f0 is the sampled argmax of |c1|, "
      "not a certified extremal";
  rep.n = n;
  rep.tol = opt.tol;
  rep.families = static_cast<int>(families.size());
  if (n < 0) throw DomainError("check_thm2_consistency: n must be >= 0");

  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const auto& mem = families[fi].members;
    if (mem.empty()) {
      rep.extremal_member.push_back(-1);
      continue;
    }
    std::vector<SchwarzSolution> sol;
    std::vector<bool> valid;
    int arg = -1;
    for (std::size_t i = 0; i < mem.size(); ++i) {
      sol.push_back(solve_schwarz(mem[i], SchwarzInit{0.0, 1.0, 0.0}, std::max(mem[i].degree() + 2, opt.m_max)));
      valid.push_back(sol.back().pole_free_radius >= std::min(1.0, mem[i].radius()));
      if (!valid.back()) {
        ++rep.skipped;
        continue;
      }
      if (arg < 0 || std::abs(mem[i][1]) > std::abs(mem[static_cast<std::size_t>(arg)][1])) arg = static_cast<int>(i);
    }
    rep.extremal_member.push_back(arg);
    if (arg < 0) continue;
    const HoloSeries& f0 = mem[static_cast<std::size_t>(arg)];
    const double bound = std::max(std::abs(f0[1]), std::abs(f0[n]));
    const HoloSeries& w0 = sol[static_cast<std::size_t>(arg)].w;

    for (std::size_t i = 0; i < mem.size(); ++i) {
      if (!valid[i]) continue;
      Thm2Sample s{static_cast<int>(fi), static_cast<int>(i), std::abs(mem[i][n]), bound, false};
      s.bound_violation = s.c_n > bound + opt.tol;
      if (s.bound_violation) {
        ++rep.bound_violations;
        rep.notes.push_back("coefficient bound violated: family " + std::to_string(fi) + " member " + std::to_string(i) +
                            " |c_n| = " + std::to_string(s.c_n) + " > " + std::to_string(bound));
      }
      rep.samples.push_back(s);
      const HoloSeries& w = sol[i].w;
      for (int m = 3; m <= std::min({opt.m_max, w.degree(), w0.degree()}); ++m) {
        if (std::abs(w[m]) > std::abs(w0[m]) + opt.tol)
          rep.am_exceedances.push_back({static_cast<int>(fi), static_cast<int>(i), m, std::abs(w[m]), std::abs(w0[m])});
      }
    }
  }
  return rep;
}

}  // namespace qcdeform

#endif  // QCDEFORM_EXTREMAL_HPP
