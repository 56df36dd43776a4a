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

// qcdeform: command-line front end.
//
//   qcdeform <subcommand> [--config FILE] [--out FILE] [--seed N] [--format json|csv] [--tol X]
//
// A config file holds an optional "run" object (RunConfig overrides) and a
// "problem" object read by the subcommand. Exit codes: 0 success, 1 usage or
// configuration error, 2 numerical failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "qcdeform/qcdeform.hpp"

namespace {

using namespace qcdeform;
using nlohmann::json;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<double> tol;
};

/// Numerical failure after a report was produced.
struct NumericalFailure {
  json report;
  std::string what;
};

struct Output {
  json report;                              // always produced
  std::vector<std::string> csv_header;      // csv: column names
  std::vector<std::vector<std::string>> rows;
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string num(cplx z) { return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i"; }

json load(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
}

RunConfig resolve(const json& file, const Common& c) {
  RunConfig cfg;
  if (file.contains("run")) io::merge(cfg, file["run"]);
  if (c.seed) cfg.seed = *c.seed;
  if (c.format) cfg.format = io::format_from(*c.format);
  if (c.tol) cfg.coeff_tol = *c.tol;
  cfg.validate();
  return cfg;
}

const json& problem_of(const json& file) {
  static const json empty = json::object();
  return file.contains("problem") ? file["problem"] : empty;
}

template <class T>
T get_or(const json& p, const char* key, T def) {
  return p.contains(key) ? p[key].get<T>() : def;
}

// ---------------------------------------------------------------- deform

Output run_deform(const RunConfig& cfg, const json& p) {
  DeformationProblem prob;
  prob.f = io::series_from(p.at("f"), cfg.degree);
  prob.space = cfg.make_space();
  prob.disk = io::disk_from(p.at("disk"));
  prob.j = get_or(p, "j", 1);
  prob.n = get_or(p, "n", 3);
  prob.d = p.contains("d") ? io::complex_list(p["d"]) : std::vector<cplx>{};
  prob.a = get_or(p, "a", 0.0);
  double eps = std::abs(prob.a);
  for (cplx v : prob.d) eps = std::max(eps, std::abs(v));
  prob.eps = get_or(p, "eps", eps);

  auto pack = [&](const DeformationResult& r) {
    json j;
    j["xi"] = io::to_json(r.xi);
    j["tau"] = r.tau;
    j["report"] = io::to_json(r.report);
    if (r.report.newton_iterations >= 0 && r.composed.degree() >= prob.n)
      j["composed"] = io::to_json(r.composed.truncated(prob.n));
    return j;
  };
  Output o;
  try {
    o.report["result"] = pack(solve_deformation(prob, cfg.deform_options()));
  } catch (const DeformationNonConvergence& e) {
    json r;
    r["result"] = pack(e.partial());
    throw NumericalFailure{r, e.what()};
  }
  const json& rep = o.report["result"]["report"];
  o.csv_header = {"key", "value"};
  for (const char* k : {"converged", "max_coef_residual", "norm_residual", "mu_sup", "m_est", "newton_iterations"})
    o.rows.push_back({k, rep[k].dump()});
  return o;
}

// ---------------------------------------------------------------- verify

Output run_verify(const RunConfig& cfg, const json& p) {
  const Disk disk = io::disk_from(p.at("disk"));
  std::vector<DensityTerm> terms;
  for (const auto& t : p.at("terms")) terms.push_back(io::term_from(t));
  const Density mu(disk, cfg.quad, terms);
  const QcMap h = build_map(mu, cfg.neumann_options());
  const auto probes = default_probes(disk, get_or(p, "per_ring", 12));
  const MapVerification v = verify_map(h, probes, get_or(p, "step", 1e-4));
  Output o;
  o.report["result"] = {{"neumann_terms", h.neumann_terms()},
                        {"series_residual", h.series_residual()},
                        {"term_norms", h.term_norms()},
                        {"verification", io::to_json(v)}};
  o.csv_header = {"key", "value"};
  o.rows = {{"neumann_terms", std::to_string(h.neumann_terms())},
            {"max_mu_deviation", num(v.max_mu_deviation)},
            {"max_conformality_defect", num(v.max_conformality_defect)},
            {"min_jacobian", num(v.min_jacobian)}};
  return o;
}

// ------------------------------------------------------------ schwarzian

Output series_output(const HoloSeries& s) {
  Output o;
  o.csv_header = {"k", "re", "im"};
  for (int k = s.lowest(); k <= s.degree(); ++k) o.rows.push_back({std::to_string(k), num(s[k].real()), num(s[k].imag())});
  return o;
}

Output run_schwarzian(const RunConfig&, const json& p) {
  const HoloSeries s = schwarzian_of(io::series_from(p.at("w")));
  Output o = series_output(s);
  o.report["result"] = {{"schwarzian", io::to_json(s)}, {"max_abs", [&] {
                          double m = 0.0;
                          for (cplx c : s.coeffs()) m = std::max(m, std::abs(c));
                          return m;
                        }()}};
  return o;
}

Output run_ode(const RunConfig& cfg, const json& p) {
  SchwarzInit init;
  if (p.contains("init")) {
    const json& i = p["init"];
    if (i.contains("a0")) init.a0 = io::complex_from(i["a0"]);
    if (i.contains("a1")) init.a1 = io::complex_from(i["a1"]);
    if (i.contains("a2")) init.a2 = io::complex_from(i["a2"]);
  }
  const HoloSeries f = io::series_from(p.at("f"));
  const SchwarzSolution s = solve_schwarz(f, init, get_or(p, "degree", std::max(f.degree() + 2, std::min(cfg.degree, 24))));
  Output o = series_output(s.w);
  o.report["result"] = {{"w", io::to_json(s.w)},
                        {"pole_free_radius", s.pole_free_radius},
                        {"roundtrip_error", [&] {
                           const HoloSeries back = schwarzian_of(s.w);
                           double m = 0.0;
                           for (int k = 0; k <= std::min(f.degree(), back.degree()); ++k)
                             m = std::max(m, std::abs(back[k] - f[k]));
                           return m;
                         }()},
                        {"warnings", s.warnings}};
  return o;
}

Output run_invert(const RunConfig&, const json& p) {
  Output o;
  if (p.contains("w")) {
    const HoloSeries w = io::series_from(p["w"]);
    const HoloSeries F = invert_expansion(w);
    const double theta = std::arg(w[1]);
    std::vector<cplx> b;
    for (int k = 0; k <= F.degree(); ++k) b.push_back(F[k]);
    const AFromB back = a_from_b_recursion(b, theta);
    double rt = 0.0;
    for (int k = 0; k <= w.degree(); ++k) rt = std::max(rt, std::abs(back.a[static_cast<std::size_t>(k)] - w[k]));
    o = series_output(F);
    o.report["result"] = {{"theta", theta},
                          {"F", io::to_json(F)},
                          {"b0_plus_e2itheta_a2", std::abs(F[0] + std::polar(1.0, 2.0 * theta) * w[2])},
                          {"b0_plus_e-2itheta_a2", std::abs(F[0] + std::polar(1.0, -2.0 * theta) * w[2])},
                          {"roundtrip_error", rt}};
  } else {
    const std::vector<cplx> b = io::complex_list(p.at("b"));
    const double theta = p.at("theta").get<double>();
    const AFromB a = a_from_b_recursion(b, theta);
    double dev = 0.0;
    for (const auto& t : a.leading) dev = std::max(dev, t.deviation);
    o.csv_header = {"k", "re", "im"};
    for (std::size_t k = 0; k < a.a.size(); ++k) o.rows.push_back({std::to_string(k), num(a.a[k].real()), num(a.a[k].imag())});
    o.report["result"] = {{"a", io::to_json(a.a)}, {"leading_term_deviation", dev}};
  }
  return o;
}

Output run_covering(const RunConfig& cfg, const json& p) {
  double r = 0.0;
  const std::string target = get_or<std::string>(p, "target", "series");
  if (target == "koebe") {
    r = covering_radius([](cplx z) { return z / ((1.0 - z) * (1.0 - z)); });
  } else {
    r = covering_radius(io::series_from(p.at("w")));
  }
  (void)cfg;
  Output o;
  o.report["result"] = {{"target", target}, {"covering_radius", r}};
  o.csv_header = {"covering_radius"};
  o.rows = {{num(r)}};
  return o;
}

// ---------------------------------------------------------------- approx

Output run_approx(const RunConfig& cfg, const json& p) {
  const json t = p.contains("target") ? p["target"] : json{{"kind", "koebe_schwarzian"}};
  const std::string kind = t.at("kind").get<std::string>();
  std::function<cplx(cplx)> f;
  if (kind == "koebe_schwarzian") {
    f = [](cplx z) { return -6.0 / ((1.0 - z * z) * (1.0 - z * z)); };
  } else if (kind == "double_poles") {
    DoublePoleRational r;
    for (const auto& a : t.at("angles")) r.angles.push_back(a.get<double>());
    r.weights = io::complex_list(t.at("weights"));
    if (r.weights.size() != r.angles.size()) throw DomainError("approx: angles and weights differ in length");
    f = r;
  } else if (kind == "series") {
    const HoloSeries s = io::series_from(t);
    f = [s](cplx z) { return evaluate(s, z); };
  } else {
    throw DomainError("approx: unknown target kind '" + kind + "'");
  }
  FitOptions opt;
  opt.seed = cfg.seed;
  opt.iters = get_or(p, "iters", opt.iters);
  const double pw = get_or(p, "p", 2.0);
  const auto curve = error_curve(f, get_or(p, "n_max", 6), pw, opt);
  Output o;
  o.csv_header = {"n", "error"};
  json pts = json::array();
  for (const auto& c : curve) {
    o.rows.push_back({std::to_string(c.n), num(c.error)});
    pts.push_back({{"n", c.n}, {"error", c.error}, {"angles", c.fit.r.angles}, {"weights", io::to_json(c.fit.r.weights)}});
  }
  o.report["result"] = {{"target", t}, {"p", pw}, {"curve", pts}};
  return o;
}

// -------------------------------------------------------------- extremal

Output run_hsz(const RunConfig& cfg, const json& p) {
  const SearchRecord r = hsz_search(cfg.make_space(), get_or(p, "n", 0), get_or(p, "budget", 1000), cfg.seed);
  double norm_dev = 0.0, min_mod = std::numeric_limits<double>::infinity();
  for (const auto& c : r.candidates) {
    norm_dev = std::max(norm_dev, std::abs(c.norm - 1.0));
    min_mod = std::min(min_mod, c.min_modulus);
  }
  Output o;
  o.report["result"] = {{"n", r.n},
                        {"space", r.space.name()},
                        {"best_value", r.best_value},
                        {"best_f_head", io::to_json(r.best_f.truncated(std::min(r.best_f.degree(), 16)))},
                        {"samples", r.samples},
                        {"rejected", r.rejected},
                        {"seed", r.seed},
                        {"max_norm_deviation", norm_dev},
                        {"min_boundary_modulus", r.candidates.empty() ? 0.0 : min_mod}};
  o.csv_header = {"sample", "kind", "value", "norm", "min_modulus", "best"};
  std::size_t ci = 0;
  for (int s = 0; s < r.samples; ++s) {
    if (ci < r.candidates.size() && r.candidates[ci].index == s) {
      const auto& c = r.candidates[ci++];
      o.rows.push_back({std::to_string(s), c.kind, num(c.value), num(c.norm), num(c.min_modulus), num(r.running[static_cast<std::size_t>(s)])});
    } else {
      o.rows.push_back({std::to_string(s), "rejected", "", "", "", num(r.running[static_cast<std::size_t>(s)])});
    }
  }
  return o;
}

Output run_thm2(const RunConfig& cfg, const json& p) {
  const auto fams = random_disk_families(get_or(p, "families", 1000), get_or(p, "members", 8), cfg.seed,
                                         get_or(p, "b2_bound", 0.2));
  Thm2Options opt;
  opt.m_max = get_or(p, "m_max", opt.m_max);
  opt.tol = get_or(p, "tol", opt.tol);
  const Thm2Report r = check_thm2_consistency(fams, get_or(p, "n", 3), opt);
  json am = json::array();
  for (const auto& v : r.am_exceedances)
    am.push_back({{"family", v.family}, {"member", v.member}, {"m", v.m}, {"a_m", v.a_m}, {"a_m0", v.a_m0}});
  Output o;
  o.report["result"] = {{"header", r.header},
                        {"n", r.n},
                        {"tol", r.tol},
                        {"families", r.families},
                        {"samples", r.samples.size()},
                        {"skipped", r.skipped},
                        {"bound_violations", r.bound_violations},
                        {"bound_notes", r.notes},
                        {"am_exceedances", am}};
  o.csv_header = {"family", "member", "c_n", "bound", "bound_violation"};
  for (const auto& s : r.samples)
    o.rows.push_back({std::to_string(s.family), std::to_string(s.member), num(s.c_n), num(s.bound), s.bound_violation ? "1" : "0"});
  return o;
}

// ---------------------------------------------------------- ops-selftest

Output run_selftest(const RunConfig& cfg, const json&) {
  struct Check {
    std::string name;
    double error, tol;
  };
  std::vector<Check> checks;
  const Disk unit(cplx(0.3, 0.2), 1.0);
  const Disk small(cplx(1.0, -0.5), 0.5);
  const cplx k(0.3, -0.1);
  const Density ind = Density::constant(unit, 1.0, cfg.quad);
  const Density cst = Density::constant(small, k, cfg.quad);

  auto probe = [](const Disk& d, bool inside, int i) {
    const double s = inside ? 0.05 + 0.9 * ((i * 37) % 100) / 100.0 : 1.05 + 2.0 * ((i * 37) % 100) / 100.0;
    return d.center + d.radius * std::polar(s, 2.0 * std::numbers::pi * ((i * 61) % 100) / 100.0 + 0.1);
  };
  auto run = [&](const std::string& name, const Disk& d, bool inside, auto&& got, auto&& want) {
    double e = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx w = probe(d, inside, i);
      e = std::max(e, std::abs(got(w) - want(w)));
    }
    checks.push_back({name, e, 1e-8});
  };
  run("T indicator inside", unit, true, [&](cplx w) { return cauchy_T(ind, w); },
      [&](cplx w) { return std::conj(w - unit.center); });
  run("T indicator outside", unit, false, [&](cplx w) { return cauchy_T(ind, w); },
      [&](cplx w) { return 1.0 / (w - unit.center); });
  run("Pi indicator inside", unit, true, [&](cplx w) { return beurling_Pi(ind, w); }, [](cplx) { return cplx(0.0); });
  run("Pi indicator outside", unit, false, [&](cplx w) { return beurling_Pi(ind, w); },
      [&](cplx w) { return -1.0 / ((w - unit.center) * (w - unit.center)); });
  run("T constant inside", small, true, [&](cplx w) { return cauchy_T(cst, w); },
      [&](cplx w) { return k * std::conj(w - small.center); });
  run("T constant outside", small, false, [&](cplx w) { return cauchy_T(cst, w); },
      [&](cplx w) { return k * small.radius * small.radius / (w - small.center); });

  Output o;
  json arr = json::array();
  bool all = true;
  o.csv_header = {"check", "max_error", "tol", "pass"};
  for (const auto& c : checks) {
    const bool pass = c.error <= c.tol;
    all = all && pass;
    arr.push_back({{"check", c.name}, {"max_error", c.error}, {"tol", c.tol}, {"pass", pass}});
    o.rows.push_back({c.name, num(c.error), num(c.tol), pass ? "PASS" : "FAIL"});
  }
  o.report["result"] = {{"checks", arr}, {"all_pass", all}};
  if (!all) throw NumericalFailure{o.report, "ops-selftest: identity check failed"};
  return o;
}

// ------------------------------------------------------------------ main

std::string render(const Output& o, const RunConfig& cfg, const std::string& cmd, const json& problem) {
  std::ostringstream s;
  if (cfg.format == OutputFormat::json) {
    json r = o.report;
    r["command"] = cmd;
    r["config"] = io::to_json(cfg);
    r["problem"] = problem;
    if (!r.contains("status")) r["status"] = "ok";
    s << r.dump(2) << "\n";
  } else {
    s << "# command: " << cmd << "\n# config: " << io::to_json(cfg).dump() << "\n# problem: " << problem.dump() << "\n";
    for (std::size_t i = 0; i < o.csv_header.size(); ++i) s << (i ? "," : "") << o.csv_header[i];
    s << "\n";
    for (const auto& row : o.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
      s << "\n";
    }
  }
  return s.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw DomainError("cannot write '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcdeform: quasiconformal deformation toolkit"};
  app.require_subcommand(1);
  Common common;

  using Runner = Output (*)(const RunConfig&, const json&);
  const std::vector<std::tuple<std::string, std::string, Runner>> table = {
      {"deform", "solve the coefficient deformation problem", run_deform},
      {"verify", "build a Beltrami map and verify it at probe points", run_verify},
      {"schwarzian", "Schwarzian derivative of a series", run_schwarzian},
      {"ode", "solve the Schwarz equation S_w = f", run_ode},
      {"invert", "expansion at infinity and coefficient recursion", run_invert},
      {"approx", "double-pole rational approximation error curve", run_approx},
      {"hsz-search", "lower bounds for the nonvanishing coefficient problem", run_hsz},
      {"thm2-check", "sampled coefficient comparisons on disk families", run_thm2},
      {"covering", "covering radius estimate", run_covering},
      {"ops-selftest", "closed-form transform identity table", run_selftest},
  };
  std::map<std::string, Runner> runners;
  for (const auto& [name, help, fn] : table) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config,--in", common.config, "JSON config file");
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", common.tol, "coefficient tolerance")->check(CLI::PositiveNumber);
    runners[name] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  RunConfig cfg;
  json problem;
  try {
    const json file = load(common.config);
    cfg = resolve(file, common);
    problem = problem_of(file);
  } catch (const std::exception& e) {
    std::cerr << "qcdeform: " << e.what() << "\n";
    return 1;
  }

  try {
    emit(render(runners.at(cmd)(cfg, problem), cfg, cmd, problem), common.out);
    return 0;
  } catch (const NumericalFailure& f) {
    Output o;
    o.report = f.report;
    o.report["status"] = "failure";
    o.report["error"] = f.what;
    emit(render(o, cfg, cmd, problem), common.out);
    std::cerr << "qcdeform: " << f.what << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "qcdeform: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "qcdeform: config: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    Output o;
    o.report["status"] = "failure";
    o.report["error"] = e.what();
    emit(render(o, cfg, cmd, problem), common.out);
    std::cerr << "qcdeform: " << e.what() << "\n";
    return 2;
  }
}
