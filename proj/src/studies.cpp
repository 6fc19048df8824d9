#include "skdv/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "skdv/estimates.hpp"
#include "skdv/initial_data.hpp"
#include "skdv/norms.hpp"
#include "skdv/propagators.hpp"
#include "skdv/snapshot.hpp"
#include "skdv/solver.hpp"

namespace skdv {

using json = nlohmann::ordered_json;

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += (i ? "," : "");
      out += buf;
    }
    out += '\n';
  }
  return out;
}

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

Verdict below(std::string name, double value, double threshold) {
  return {std::move(name), value < threshold, value, threshold, "value < threshold"};
}
Verdict at_most(std::string name, double value, double threshold) {
  return {std::move(name), value <= threshold, value, threshold, "value <= threshold"};
}
Verdict above(std::string name, double value, double threshold) {
  return {std::move(name), value > threshold, value, threshold, "value > threshold"};
}
Verdict at_least(std::string name, double value, double threshold) {
  return {std::move(name), value >= threshold, value, threshold, "value >= threshold"};
}

double rel_change(double coarse, double fine) { return std::abs(fine - coarse) / std::abs(coarse); }

json monitor_json(const BoundaryMonitor& m, const ExperimentConfig& cfg) {
  return {{"fraction", cfg.boundary_fraction}, {"tolerance", cfg.boundary_tol}, {"u_ratio", m.u_ratio},
          {"v_ratio", m.v_ratio},              {"u_flagged", m.u_flagged},      {"v_flagged", m.v_flagged},
          {"run_valid", m.run_valid()}};
}

std::size_t slice_of(const Trajectory& traj, double t) {
  const auto m = static_cast<std::size_t>(std::llround(t / traj.dt));
  if (m >= traj.size() || std::abs(static_cast<double>(m) * traj.dt - t) > 1e-9 * std::max(1.0, t))
    throw ConfigError("time " + std::to_string(t) + " is not a saved slice");
  return m;
}

json probe_json(const HolderProbe& p) { return {{"value", p.value}, {"x", p.x}, {"lag", p.lag}}; }

}  // namespace

// ---------------------------------------------------------------------------

double boundary_ratio(const Field& f, double fraction) {
  const Field p = as_physical(f);
  const std::size_t n = p.size();
  const auto edge = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
  double peak = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(p[j]);
    peak = std::max(peak, a);
    if (j < edge || j >= n - edge) outer = std::max(outer, a);
  }
  return peak > 0.0 ? outer / peak : 0.0;
}

BoundaryMonitor monitor_boundary(const Trajectory& traj, double fraction, double tol) {
  BoundaryMonitor m;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    m.u_ratio = std::max(m.u_ratio, boundary_ratio(traj.u[k], fraction));
    m.v_ratio = std::max(m.v_ratio, boundary_ratio(traj.v[k], fraction));
  }
  m.u_flagged = m.u_ratio > tol;
  m.v_flagged = m.v_ratio > tol;
  return m;
}

std::pair<Field, Field> initial_pair(const ExperimentConfig& cfg, const Grid1D& g) {
  if (cfg.initial_kind == "gaussian") {
    const double su = cfg.u_sigma, sv = cfg.v_sigma, a = cfg.v_amplitude, x1 = cfg.v_shift;
    Field u0 = sample(g, [&](double x) { return cplx(std::exp(-x * x / (su * su)), 0.0); });
    Field v0 = sample(
        g, [&](double x) { return cplx(a * std::exp(-(x - x1) * (x - x1) / (sv * sv)), 0.0); }, true);
    return {std::move(u0), std::move(v0)};
  }
  return {make_u0(cfg.blowup, g), make_v0(cfg.blowup, g)};
}

Trajectory evolve(const ExperimentConfig& cfg, const Field& u0, const Field& v0) {
  if (cfg.method == "exponential") return exponential_evolve(u0, v0, cfg.params, cfg.T, cfg.dt, cfg.save_every);
  if (cfg.method == "splitstep") return splitstep_evolve(u0, v0, cfg.params, cfg.T, cfg.dt, cfg.save_every);
  PicardResult r = picard_solve(u0, v0, cfg.params, cfg.T, cfg.dt, cfg.max_iter, cfg.tol);
  if (cfg.save_every == 1) return std::move(r.traj);
  Trajectory out(r.traj.grid);
  out.params = r.traj.params;
  out.dt = cfg.dt * cfg.save_every;
  for (std::size_t m = 0; m < r.traj.size(); m += static_cast<std::size_t>(cfg.save_every)) {
    out.times.push_back(r.traj.times[m]);
    out.u.push_back(std::move(r.traj.u[m]));
    out.v.push_back(std::move(r.traj.v[m]));
  }
  return out;
}

// ---------------------------------------------------------------------------

Report run_simulation(const ExperimentConfig& cfg) {
  validate_common(cfg);
  Report r;
  r.study = "simulate";
  const Grid1D g = cfg.grid();
  const auto [u0, v0] = initial_pair(cfg, g);
  const Trajectory traj = evolve(cfg, u0, v0);

  CsvTable ts{"timeseries", {"t", "mass_u", "integral_v", "max_u", "max_v", "boundary_u", "boundary_v"}, {}};
  const double mass0 = l2_norm(traj.u[0]);
  const double mean0 = integral(traj.v[0]).real();
  double mass_drift = 0.0, mean_drift = 0.0;
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const double mass = l2_norm(traj.u[m]);
    const double mean = integral(traj.v[m]).real();
    mass_drift = std::max(mass_drift, std::abs(mass - mass0) / mass0);
    mean_drift = std::max(mean_drift, std::abs(mean - mean0));
    ts.rows.push_back({traj.times[m], mass, mean, max_abs(traj.u[m]), max_abs(traj.v[m]),
                       boundary_ratio(traj.u[m], cfg.boundary_fraction),
                       boundary_ratio(traj.v[m], cfg.boundary_fraction)});
  }
  r.tables.push_back(std::move(ts));

  const BoundaryMonitor mon = monitor_boundary(traj, cfg.boundary_fraction, cfg.boundary_tol);
  r.summary["n_points"] = g.n_points();
  r.summary["slices"] = traj.size();
  r.summary["mass_relative_drift"] = mass_drift;
  r.summary["integral_v_drift"] = mean_drift;
  r.summary["boundary_monitor"] = monitor_json(mon, cfg);
  r.verdicts.push_back(at_most("mass_u_relative_drift", mass_drift, cfg.mass_tol));
  r.verdicts.push_back(at_most("integral_v_absolute_drift", mean_drift, cfg.mean_tol));
  return r;
}

// ---------------------------------------------------------------------------

Report run_smoothing_study(const ExperimentConfig& cfg) {
  validate_smoothing(cfg);
  const RegularityBudget budget(cfg.budget);
  Report r;
  r.study = "smoothing";
  const double ts = cfg.blowup.t_star();
  const double su = budget.s() + budget.beta() + budget.abar();
  const double sv = budget.s() + budget.a();
  r.summary["t_star"] = ts;
  r.summary["exponent_u1"] = su;
  r.summary["exponent_v1"] = sv;
  r.summary["free_exponent"] = cfg.free_exponent;

  if (cfg.params.linear()) {
    const Grid1D g = cfg.grid();
    const auto [u0, v0] = initial_pair(cfg, g);
    const Trajectory traj = evolve(cfg, u0, v0);
    const DuhamelParts parts = nonlinear_part(traj, u0, v0);
    double worst = 0.0;
    for (std::size_t m = 0; m < traj.size(); ++m)
      worst = std::max({worst, l2_norm(parts.u1[m]) / l2_norm(u0), l2_norm(parts.v1[m]) / l2_norm(v0)});
    r.summary["trivial"] = true;
    r.summary["max_relative_nonlinear_part"] = worst;
    r.verdicts.push_back(at_most("trivial_nonlinear_part_vanishes", worst, 1e-12));
    return r;
  }
  r.summary["trivial"] = false;

  json levels = json::array();
  std::vector<double> n_u1, n_v1, n_free;
  json tails;
  BoundaryMonitor worst_mon;
  for (std::size_t refine : {1u, 2u}) {
    const Grid1D g = cfg.grid(refine);
    const auto [u0, v0] = initial_pair(cfg, g);
    const Trajectory traj = evolve(cfg, u0, v0);
    const DuhamelParts parts = nonlinear_part(traj, u0, v0);
    const std::size_t ms = slice_of(traj, ts);
    const Field uf = apply_group(schrodinger, u0, ts);
    const Field vf = apply_group(fifth_order, v0, ts);

    n_u1.push_back(sobolev_norm(parts.u1[ms], su));
    n_v1.push_back(sobolev_norm(parts.v1[ms], sv));
    n_free.push_back(sobolev_norm(uf, cfg.free_exponent));
    const BoundaryMonitor mon = monitor_boundary(traj, cfg.boundary_fraction, cfg.boundary_tol);
    worst_mon.u_ratio = std::max(worst_mon.u_ratio, mon.u_ratio);
    worst_mon.v_ratio = std::max(worst_mon.v_ratio, mon.v_ratio);
    worst_mon.u_flagged = worst_mon.u_flagged || mon.u_flagged;
    worst_mon.v_flagged = worst_mon.v_flagged || mon.v_flagged;
    levels.push_back({{"n_points", g.n_points()},
                      {"u1_norm", n_u1.back()},
                      {"v1_norm", n_v1.back()},
                      {"free_u_norm", n_free.back()}});

    CsvTable tab{"timeseries_N" + std::to_string(g.n_points()),
                 {"t", "u1_norm", "v1_norm", "u_norm_s", "v_norm_s"},
                 {}};
    for (std::size_t m = 0; m < traj.size(); ++m)
      tab.rows.push_back({traj.times[m], sobolev_norm(parts.u1[m], su), sobolev_norm(parts.v1[m], sv),
                          sobolev_norm(traj.u[m], budget.s()), sobolev_norm(traj.v[m], budget.s())});
    r.tables.push_back(std::move(tab));

    if (refine == 2) {
      const double lo = cfg.tail_lo, hi = cfg.tail_hi_fraction * g.xi_max();
      tails = {{"band", {lo, hi}},
               {"u", tail_regularity(traj.u[ms], lo, hi)},
               {"u1", tail_regularity(parts.u1[ms], lo, hi)},
               {"free_u", tail_regularity(uf, lo, hi)},
               {"v", tail_regularity(traj.v[ms], lo, hi)},
               {"v1", tail_regularity(parts.v1[ms], lo, hi)},
               {"free_v", tail_regularity(vf, lo, hi)}};
    }
  }
  const double du1 = rel_change(n_u1[0], n_u1[1]);
  const double dv1 = rel_change(n_v1[0], n_v1[1]);
  const double dfree = rel_change(n_free[0], n_free[1]);
  const double gain = tails["v1"].get<double>() - tails["free_v"].get<double>();
  r.summary["levels"] = levels;
  r.summary["u1_relative_change"] = du1;
  r.summary["v1_relative_change"] = dv1;
  r.summary["free_u_relative_change"] = dfree;
  r.summary["tail_regularity"] = tails;
  r.summary["v1_tail_gain"] = gain;
  r.summary["boundary_monitor"] = monitor_json(worst_mon, cfg);

  r.verdicts.push_back(below("u1_grid_converged", du1, cfg.converged_tol));
  r.verdicts.push_back(above("free_u_not_converged", dfree, cfg.free_change_min));
  r.verdicts.push_back(at_least("v1_tail_gain", gain, cfg.tail_gain_min));
  return r;
}

// ---------------------------------------------------------------------------

Report run_blowup_study(const ExperimentConfig& cfg) {
  validate_blowup(cfg);
  Report r;
  r.study = "blowup";
  const double ts = cfg.blowup.t_star();
  const double alpha_u = 0.5 + cfg.holder_eps;
  r.summary["t_star"] = ts;
  r.summary["alpha_u"] = alpha_u;
  r.summary["alpha_v"] = cfg.v_alpha;

  CsvTable tab{"ladder",
               {"n_points", "dx", "window", "u_half", "u_star", "u_star_x", "v_star", "v_star_x", "free_u_star",
                "free_v_star"},
               {}};
  std::vector<double> u_half, u_star, v_star;
  double u_off = 0.0, v_off = 0.0;  // worst argmax offset in cells
  json levels = json::array();
  BoundaryMonitor worst_mon;
  for (std::size_t refine : {1u, 2u, 4u}) {
    const Grid1D g = cfg.grid(refine);
    const std::size_t w = cfg.holder_window ? cfg.holder_window * refine : default_holder_window(g);
    const auto [u0, v0] = initial_pair(cfg, g);
    const Trajectory traj = evolve(cfg, u0, v0);
    const std::size_t ms = slice_of(traj, ts), mh = slice_of(traj, ts / 2);
    const HolderProbe ph = holder_probe(traj.u[mh], 1, alpha_u, w);
    const HolderProbe ps = holder_probe(traj.u[ms], 1, alpha_u, w);
    const HolderProbe pv = holder_probe(traj.v[ms], 1, cfg.v_alpha, w);
    const HolderProbe fu = holder_probe(apply_group(schrodinger, u0, ts), 1, alpha_u, w);
    const HolderProbe fv = holder_probe(apply_group(fifth_order, v0, ts), 1, cfg.v_alpha, w);
    u_half.push_back(ph.value);
    u_star.push_back(ps.value);
    v_star.push_back(pv.value);
    u_off = std::max(u_off, std::abs(ps.x - cfg.blowup.x0) / g.spacing());
    v_off = std::max(v_off, std::abs(pv.x) / g.spacing());
    tab.rows.push_back({static_cast<double>(g.n_points()), g.spacing(), static_cast<double>(w), ph.value, ps.value,
                        ps.x, pv.value, pv.x, fu.value, fv.value});
    levels.push_back({{"n_points", g.n_points()},
                      {"u_half", probe_json(ph)},
                      {"u_star", probe_json(ps)},
                      {"v_star", probe_json(pv)},
                      {"free_u_star", probe_json(fu)},
                      {"free_v_star", probe_json(fv)}});
    const BoundaryMonitor mon = monitor_boundary(traj, cfg.boundary_fraction, cfg.boundary_tol);
    worst_mon.u_ratio = std::max(worst_mon.u_ratio, mon.u_ratio);
    worst_mon.v_ratio = std::max(worst_mon.v_ratio, mon.v_ratio);
    worst_mon.u_flagged = worst_mon.u_flagged || mon.u_flagged;
    worst_mon.v_flagged = worst_mon.v_flagged || mon.v_flagged;
  }
  r.tables.push_back(std::move(tab));

  auto ratios = [](const std::vector<double>& s) {
    std::vector<double> out;
    for (std::size_t i = 1; i < s.size(); ++i) out.push_back(s[i] / s[i - 1]);
    return out;
  };
  const auto rh = ratios(u_half), rs = ratios(u_star), rv = ratios(v_star);
  r.summary["levels"] = levels;
  r.summary["u_half_ratios"] = rh;
  r.summary["u_star_ratios"] = rs;
  r.summary["v_star_ratios"] = rv;
  r.summary["u_star_argmax_offset_cells"] = u_off;
  r.summary["v_star_argmax_offset_cells"] = v_off;
  r.summary["boundary_monitor"] = monitor_json(worst_mon, cfg);

  r.verdicts.push_back(at_least("u_star_diverges", *std::min_element(rs.begin(), rs.end()), cfg.diverge_ratio));
  r.verdicts.push_back(at_most("u_star_argmax_near_x0", u_off, cfg.argmax_cells));
  r.verdicts.push_back(at_most("u_half_bounded", *std::max_element(rh.begin(), rh.end()), cfg.bounded_ratio));
  r.verdicts.push_back(at_least("v_star_diverges", *std::min_element(rv.begin(), rv.end()), cfg.diverge_ratio));
  r.verdicts.push_back(at_most("v_star_argmax_near_0", v_off, cfg.argmax_cells));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

KernelQuery query_for(const ExperimentConfig& cfg, const Triple& t) {
  KernelQuery q;
  q.b = t[0];
  q.beta = t[1];
  q.a = t[2];
  q.xi_range = cfg.xi_range;
  q.tau_range = cfg.tau_range;
  q.quad_points = cfg.quad_points;
  return q;
}

json sup_json(const KernelSup& s) {
  json running = json::array();
  for (const auto& [R, v] : s.running) running.push_back({R, v});
  return {{"sup", s.value},       {"xi", s.xi},      {"tau", s.tau}, {"last_growth", s.last_growth},
          {"running", running}, {"evaluations", s.evaluations}};
}

}  // namespace

Report run_estimate_audit(const ExperimentConfig& cfg) {
  validate_common(cfg);
  Report r;
  r.study = "audit";

  // Calculus inequality, one sweep per phi_beta branch.
  CsvTable calc{"calculus_sweep", {"beta", "gamma", "separation", "integral", "ratio"}, {}};
  json branches = json::array();
  const std::vector<std::pair<double, double>> exps{{1.2, 0.9}, {1.0, 0.5}, {0.6, 0.6}};
  for (const auto& [beta, gamma] : exps) {
    double lo = INFINITY, hi = 0.0;
    for (double d : cfg.separations) {
      const double ratio = calculus_bound_ratio(beta, gamma, d, 0.0);
      calc.rows.push_back({beta, gamma, d, calculus_integral(beta, gamma, d, 0.0), ratio});
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const std::string branch = beta > 1.0 ? "beta>1" : (beta == 1.0 ? "beta=1" : "beta<1");
    branches.push_back({{"beta", beta}, {"gamma", gamma}, {"branch", branch}, {"spread", hi / lo}});
    std::ostringstream name;
    name << "calculus_spread_beta" << beta << "_gamma" << gamma;
    r.verdicts.push_back(at_most(name.str(), hi / lo, cfg.ratio_spread_max));
  }
  r.tables.push_back(std::move(calc));
  r.summary["calculus"] = branches;

  // Kernel suprema. Inadmissible triples are evaluated with the override and
  // reported without a verdict.
  CsvTable sups{"kernel_sups", {"kernel", "b", "beta", "a", "admissible", "sup", "xi", "tau", "last_growth"}, {}};
  json kernels = json::array();
  auto audit = [&](const Triple& t, bool kdv5) {
    KernelQuery q = query_for(cfg, t);
    const auto bad = kdv5 ? kdv5_kernel_violations(q) : schrodinger_kernel_violations(q);
    q.override_admissibility = !bad.empty();
    const KernelSup s = kdv5 ? kdv5_kernel_sup(q) : schrodinger_kernel_sup(q);
    const char* kname = kdv5 ? "kdv5" : "schrodinger";
    sups.rows.push_back({kdv5 ? 5.0 : 2.0, t[0], t[1], t[2], bad.empty() ? 1.0 : 0.0, s.value, s.xi, s.tau,
                         s.last_growth});
    json entry = {{"kernel", kname}, {"b", t[0]}, {"beta", t[1]}, {"a", t[2]}, {"admissible", bad.empty()}};
    entry["violations"] = bad;
    entry["result"] = sup_json(s);
    entry["stabilized"] = s.stabilized(cfg.stabilization_tol);
    kernels.push_back(entry);
    if (bad.empty()) {
      std::ostringstream name;
      name << kname << "_stabilized_b" << t[0] << "_beta" << t[1] << "_a" << t[2];
      r.verdicts.push_back(below(name.str(), s.last_growth, cfg.stabilization_tol));
    }
  };
  for (const auto& t : cfg.schrodinger_triples) audit(t, false);
  for (const auto& t : cfg.kdv5_triples) audit(t, true);
  r.tables.push_back(std::move(sups));
  r.summary["kernels"] = kernels;

  // Reduction check: full (xi1, tau1) quadrature against the reduced form.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> xi_dist(-3.0, 3.0), tau_dist(-10.0, 10.0);
  CsvTable probes{"two_route", {"kernel", "xi", "tau", "reduced", "full", "ratio"}, {}};
  for (bool kdv5 : {false, true}) {
    const Triple& t = kdv5 ? cfg.kdv5_triples.front() : cfg.schrodinger_triples.front();
    KernelQuery q = query_for(cfg, t);
    q.override_admissibility = true;
    double worst_lo = INFINITY, worst_hi = 0.0;
    for (int i = 0; i < cfg.probes; ++i) {
      const double xi = xi_dist(rng), tau = tau_dist(rng);
      const double one = kdv5 ? kdv5_kernel(q, xi, tau) : schrodinger_kernel(q, xi, tau);
      const double two = kdv5 ? kdv5_kernel_2d(q, xi, tau) : schrodinger_kernel_2d(q, xi, tau);
      const double ratio = two / one;
      probes.rows.push_back({kdv5 ? 5.0 : 2.0, xi, tau, one, two, ratio});
      worst_lo = std::min(worst_lo, ratio);
      worst_hi = std::max(worst_hi, ratio);
    }
    const std::string k = kdv5 ? "kdv5" : "schrodinger";
    r.verdicts.push_back(at_least(k + "_two_route_min", worst_lo, cfg.probe_ratio_lo));
    r.verdicts.push_back(at_most(k + "_two_route_max", worst_hi, cfg.probe_ratio_hi));
  }
  r.tables.push_back(std::move(probes));

  // xi -> -xi comparison of the Schrodinger kernel, reported only.
  {
    KernelQuery q = query_for(cfg, cfg.schrodinger_triples.front());
    q.override_admissibility = true;
    json sym = json::array();
    for (const auto& [xi, tau] : std::vector<std::pair<double, double>>{{1.0, -1.0}, {2.0, -4.0}, {3.0, 0.0}}) {
      const double plus = schrodinger_kernel(q, xi, tau), minus = schrodinger_kernel(q, -xi, tau);
      sym.push_back({{"xi", xi}, {"tau", tau}, {"relative_difference", std::abs(plus - minus) / plus}});
    }
    r.summary["schrodinger_reflection"] = sym;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

json field_diagnostics(const Field& f, const ExperimentConfig& cfg) {
  const Grid1D& g = f.grid;
  json d = {{"n_points", g.n_points()},
            {"box_length", g.box_length()},
            {"l2", l2_norm(f)},
            {"h1", sobolev_norm(f, 1.0)},
            {"h_s", sobolev_norm(f, cfg.budget.s)},
            {"max_abs", max_abs(f)},
            {"boundary_ratio", boundary_ratio(f, cfg.boundary_fraction)},
            {"holder_c1_half", holder_seminorm(f, 1, 0.5 + cfg.holder_eps, default_holder_window(g))}};
  try {
    d["tail_regularity"] = tail_regularity(f, cfg.tail_lo, cfg.tail_hi_fraction * g.xi_max());
  } catch (const std::exception& e) {
    d["tail_regularity"] = nullptr;
    d["tail_regularity_error"] = e.what();
  }
  return d;
}

}  // namespace

Report run_norms(const ExperimentConfig& cfg, const std::optional<std::string>& snapshot) {
  validate_common(cfg);
  Report r;
  r.study = "norms";
  if (snapshot) {
    double t = 0.0;
    const Field f = load_field(*snapshot, &t);
    r.summary["snapshot"] = *snapshot;
    r.summary["time"] = t;
    r.summary["field"] = field_diagnostics(f, cfg);
    return r;
  }
  const Grid1D g = cfg.grid();
  const auto [u0, v0] = initial_pair(cfg, g);
  r.summary["u0"] = field_diagnostics(u0, cfg);
  r.summary["v0"] = field_diagnostics(v0, cfg);

  // Windowed free evolutions on [-T, T) sampled at 64 times.
  constexpr std::size_t n_times = 64;
  const double dt = 2.0 * cfg.T / n_times;
  json xsb;
  for (const auto& [sym, f0] : {std::pair{schrodinger, &u0}, std::pair{fifth_order, &v0}}) {
    SpaceTimeField w(g, -cfg.T, dt, n_times, sym);
    for (std::size_t m = 0; m < n_times; ++m) {
      const double t = w.time(m);
      const Field s = as_physical(apply_group(sym, *f0, t));
      const double eta = bump_eta(t / cfg.T);
      for (std::size_t j = 0; j < g.n_points(); ++j) w.at(m, j) = eta * s[j];
    }
    xsb[sym.name()] = {{"s", 0.0}, {"b", cfg.budget.b}, {"value", bourgain_norm(w, 0.0, cfg.budget.b)}};
  }
  r.summary["windowed_free_xsb"] = xsb;
  return r;
}

Report run_snapshot(const ExperimentConfig& cfg, const std::string& dir) {
  validate_common(cfg);
  Report r;
  r.study = "snapshot";
  std::filesystem::create_directories(dir);
  const auto [u0, v0] = initial_pair(cfg, cfg.grid());
  json files = json::array();
  for (const auto& [name, f] : {std::pair{"u0", &u0}, std::pair{"v0", &v0}}) {
    const std::string path = (std::filesystem::path(dir) / (std::string(name) + ".dsp")).string();
    save_field(*f, path, 0.0);
    double t = -1.0;
    const Field back = load_field(path, &t);
    const Field orig = as_physical(*f);
    std::size_t mismatched = 0;
    for (std::size_t j = 0; j < orig.size(); ++j)
      if (std::memcmp(&orig[j], &back[j], sizeof(cplx)) != 0) ++mismatched;
    if (back.grid != orig.grid || t != 0.0) mismatched = orig.size();
    files.push_back({{"name", name}, {"path", std::string(name) + ".dsp"}, {"mismatched_samples", mismatched}});
    r.verdicts.push_back(at_most(std::string(name) + "_round_trip_mismatches", static_cast<double>(mismatched), 0.0));
  }
  r.summary["files"] = files;
  return r;
}

// ---------------------------------------------------------------------------

void write_report(const Report& r, const ExperimentConfig& cfg, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::string formats = cfg.formats;
  formats.erase(std::remove(formats.begin(), formats.end(), ' '), formats.end());
  auto wants = [&](const std::string& f) { return ("," + formats + ",").find("," + f + ",") != std::string::npos; };

  auto write = [&](const std::string& file, const std::string& text) {
    const auto path = std::filesystem::path(dir) / file;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
  };
  if (wants("csv"))
    for (const auto& t : r.tables) write(r.study + "_" + t.name + ".csv", t.render());
  if (wants("json")) {
    json config = json::object();
    std::istringstream lines(render_config(cfg));
    for (std::string line; std::getline(lines, line);) {
      const auto eq = line.find(" = ");
      config[line.substr(0, eq)] = line.substr(eq + 3);
    }
    json verdicts = json::array();
    for (const auto& v : r.verdicts)
      verdicts.push_back(
          {{"name", v.name}, {"pass", v.pass}, {"value", v.value}, {"threshold", v.threshold}, {"rule", v.rule}});
    const json doc = {{"study", r.study},
                      {"all_pass", r.all_pass()},
                      {"verdicts", verdicts},
                      {"results", r.summary},
                      {"config", config}};
    write(r.study + "_summary.json", doc.dump(2) + "\n");
  }
}

}  // namespace skdv
