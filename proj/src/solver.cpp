#include "skdv/solver.hpp"

#include <cmath>
#include <string>

#include "skdv/initial_data.hpp"
#include "skdv/propagators.hpp"

namespace skdv {

void SystemParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(epsilon))
    throw std::invalid_argument("system params: coupling constants must be finite");
}

namespace {

using Vec = std::vector<cplx>;

// Spectral forcings F^ (of alpha u v + gamma |u|^2 u) and G^ (of
// epsilon (|u|^2)_x - (v^2)_x), both dealiased. u and v are physical.
struct Forcing {
  Field F;
  Field G;
};

Forcing forcing(const Field& u, const Field& v, const SystemParams& p) {
  const Grid1D& g = u.grid;
  const std::size_t n = g.n_points();
  Field mod2(g, Rep::physical, true);
  for (std::size_t j = 0; j < n; ++j) mod2.values[j] = std::norm(u.values[j]);
  const Field mod2_d = dealias(mod2);  // physical, dealiased |u|^2

  Field fu(g, Rep::physical);
  Field gv(g, Rep::physical, true);
  for (std::size_t j = 0; j < n; ++j) {
    fu.values[j] = p.alpha * u.values[j] * v.values[j] + p.gamma * mod2_d.values[j] * u.values[j];
    gv.values[j] = p.epsilon * mod2.values[j] - v.values[j] * v.values[j];
  }
  Forcing out{dealias(to_spectral(fu)), spectral_derivative(dealias(to_spectral(gv)), 1)};
  return out;
}

std::size_t step_count(double T, double dt, const char* who) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument(std::string(who) + ": dt must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument(std::string(who) + ": T must be positive");
  const double r = T / dt;
  const double m = std::round(r);
  if (m < 1.0 || std::abs(r - m) > 1e-9 * std::max(1.0, r))
    throw std::invalid_argument(std::string(who) + ": dt must divide T");
  return static_cast<std::size_t>(m);
}

void check_pair(const Field& u0, const Field& v0, const SystemParams& p, const char* who) {
  require_same_grid(u0, v0, who);
  p.validate();
}

double spectral_distance(const Field& a, const Field& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(acc * a.grid.spacing());
}

// a += c * (m .* b)
void axpy_mul(Field& a, cplx c, const Vec& m, const Field& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += c * m[i] * b.values[i];
}

void axpy(Field& a, cplx c, const Field& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] += c * b.values[i];
}

void mul(Field& a, const Vec& m) {
  for (std::size_t i = 0; i < a.size(); ++i) a.values[i] *= m[i];
}

// exp(-i omega h / 2) * sinc(omega h / 2), the phi1 weight of the exact
// linear flow over a step h.
Vec phi1_table(PropagatorSymbol sym, const Grid1D& g, double h) {
  const auto w = symbol_on_grid(sym, g);
  const auto half = phase_table(sym, g, 0.5 * h);
  Vec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double z = 0.5 * w[i] * h;
    const double sinc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    out[i] = half[i] * sinc;
  }
  return out;
}

void guard_growth(const Field& before, const Field& after, const char* who, std::size_t step) {
  const double a = l2_norm(before), b = l2_norm(after);
  if (!std::isfinite(b) || (a > 0.0 && b > 10.0 * a))
    throw InstabilityError(std::string(who) + ": norm grew more than 10x at step " + std::to_string(step));
}

void check_save_every(std::size_t steps, int save_every, const char* who) {
  if (save_every < 1 || steps % static_cast<std::size_t>(save_every) != 0)
    throw std::invalid_argument(std::string(who) + ": save_every must be >= 1 and divide the step count");
}

}  // namespace

Field nonlinearity_u(const Field& u, const Field& v, const SystemParams& p) {
  check_pair(u, v, p, "nonlinearity_u");
  return to_physical(forcing(as_physical(u), as_physical(v), p).F);
}

Field nonlinearity_v(const Field& u, const Field& v, const SystemParams& p) {
  check_pair(u, v, p, "nonlinearity_v");
  Field out = to_physical(forcing(as_physical(u), as_physical(v), p).G);
  out.real_valued = true;
  return out;
}

PicardResult picard_solve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                          int max_iter, double tol) {
  check_pair(u0, v0, p, "picard_solve");
  if (T > 0.5) throw std::invalid_argument("picard_solve: T must not exceed 1/2");
  if (max_iter < 1) throw std::invalid_argument("picard_solve: max_iter must be >= 1");
  const std::size_t M = step_count(T, dt, "picard_solve");
  const Grid1D g = u0.grid;
  const Field u0s = as_spectral(u0), v0s = as_spectral(v0);

  std::vector<double> times(M + 1), eta_t(M + 1), eta_src(M + 1);
  std::vector<Field> free_u, free_v;
  free_u.reserve(M + 1);
  free_v.reserve(M + 1);
  for (std::size_t m = 0; m <= M; ++m) {
    const PreciseTime t = exact_product(static_cast<double>(m), dt);
    times[m] = t.hi;
    eta_t[m] = bump_eta(t.hi);
    eta_src[m] = bump_eta(t.hi / (2.0 * T));
    free_u.push_back(apply_group(schrodinger, u0s, t));
    free_v.push_back(apply_group(fifth_order, v0s, t));
  }
  const Vec Eu = phase_table(schrodinger, g, dt);
  const Vec Ev = phase_table(fifth_order, g, dt);

  std::vector<Field> cur_u = free_u, cur_v = free_v;
  for (std::size_t m = 0; m <= M; ++m) {
    cur_u[m] = eta_t[m] * cur_u[m];
    cur_v[m] = eta_t[m] * cur_v[m];
  }

  auto source = [&](std::size_t m) {
    Forcing f = forcing(to_physical(cur_u[m]), to_physical(cur_v[m]), p);
    for (auto& c : f.F.values) c *= eta_src[m];
    for (auto& c : f.G.values) c *= eta_src[m];
    return f;
  };

  std::vector<double> defects;
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    std::vector<Field> next_u, next_v;
    next_u.reserve(M + 1);
    next_v.reserve(M + 1);
    next_u.push_back(eta_t[0] * free_u[0]);
    next_v.push_back(eta_t[0] * free_v[0]);

    Field Iu(g, Rep::spectral), Iv(g, Rep::spectral, true);
    Forcing fm = source(0);
    for (std::size_t m = 0; m < M; ++m) {
      Forcing fn = source(m + 1);
      for (std::size_t i = 0; i < g.n_points(); ++i) {
        Iu.values[i] = Eu[i] * (Iu.values[i] + 0.5 * dt * fm.F.values[i]) + 0.5 * dt * fn.F.values[i];
        Iv.values[i] = Ev[i] * (Iv.values[i] + 0.5 * dt * fm.G.values[i]) + 0.5 * dt * fn.G.values[i];
      }
      Field nu = free_u[m + 1], nv = free_v[m + 1];
      for (std::size_t i = 0; i < g.n_points(); ++i) {
        nu.values[i] = eta_t[m + 1] * (nu.values[i] - cplx(0.0, 1.0) * Iu.values[i]);
        nv.values[i] = eta_t[m + 1] * (nv.values[i] + Iv.values[i]);
      }
      next_u.push_back(std::move(nu));
      next_v.push_back(std::move(nv));
      fm = std::move(fn);
    }

    double defect = 0.0;
    for (std::size_t m = 0; m <= M; ++m)
      defect = std::max(defect, spectral_distance(next_u[m], cur_u[m]) + spectral_distance(next_v[m], cur_v[m]));
    defects.push_back(defect);
    cur_u = std::move(next_u);
    cur_v = std::move(next_v);
    converged = defect < tol;
  }
  if (!converged)
    throw ConvergenceError("picard_solve: no convergence in " + std::to_string(max_iter) +
                               " iterations (T too large for the data size?)",
                           defects);

  PicardResult out{Trajectory(g), defects};
  out.traj.dt = dt;
  out.traj.params = p;
  out.traj.times = times;
  for (std::size_t m = 0; m <= M; ++m) {
    out.traj.u.push_back(to_physical(cur_u[m]));
    Field v = to_physical(cur_v[m]);
    v.real_valued = true;
    out.traj.v.push_back(std::move(v));
  }
  return out;
}

namespace {

// Shared driver: `step` advances the spectral state (u, v) by dt.
template <class Step>
Trajectory march(const Field& u0, const Field& v0, const SystemParams& p, double dt, std::size_t M, int save_every,
                 Step&& step) {
  Trajectory traj(u0.grid);
  traj.params = p;
  traj.dt = dt * save_every;
  Field u = as_spectral(u0), v = as_spectral(v0);
  v.real_valued = true;
  auto record = [&](std::size_t m) {
    traj.times.push_back(exact_product(static_cast<double>(m / save_every), traj.dt).hi);
    traj.u.push_back(to_physical(u));
    traj.v.push_back(to_physical(v));
  };
  record(0);
  for (std::size_t m = 1; m <= M; ++m) {
    step(u, v, m);
    if (m % save_every == 0) record(m);
  }
  return traj;
}

}  // namespace

Trajectory splitstep_evolve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                            int save_every) {
  check_pair(u0, v0, p, "splitstep_evolve");
  const std::size_t M = step_count(T, dt, "splitstep_evolve");
  check_save_every(M, save_every, "splitstep_evolve");
  const Grid1D g = u0.grid;
  const Vec hu = phase_table(schrodinger, g, 0.5 * dt);
  const Vec hv = phase_table(fifth_order, g, 0.5 * dt);
  const cplx mi(0.0, -1.0);

  return march(u0, v0, p, dt, M, save_every, [&](Field& u, Field& v, std::size_t m) {
    const Field u_prev = u, v_prev = v;
    mul(u, hu);
    mul(v, hv);
    if (!p.linear()) {
      const Forcing f1 = forcing(to_physical(u), to_physical(v), p);
      Field um = u, vm = v;
      axpy(um, 0.5 * dt * mi, f1.F);
      axpy(vm, 0.5 * dt, f1.G);
      const Forcing f2 = forcing(to_physical(um), to_physical(vm), p);
      axpy(u, dt * mi, f2.F);
      axpy(v, dt, f2.G);
    }
    mul(u, hu);
    mul(v, hv);
    guard_growth(u_prev, u, "splitstep_evolve", m);
    guard_growth(v_prev, v, "splitstep_evolve", m);
  });
}

Trajectory exponential_evolve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                              int save_every) {
  check_pair(u0, v0, p, "exponential_evolve");
  const std::size_t M = step_count(T, dt, "exponential_evolve");
  check_save_every(M, save_every, "exponential_evolve");
  const Grid1D g = u0.grid;
  const Vec Eu = phase_table(schrodinger, g, dt), Ev = phase_table(fifth_order, g, dt);
  const Vec Eu2 = phase_table(schrodinger, g, 0.5 * dt), Ev2 = phase_table(fifth_order, g, 0.5 * dt);
  const Vec Pu = phi1_table(schrodinger, g, dt), Pv = phi1_table(fifth_order, g, dt);
  const Vec Pu2 = phi1_table(schrodinger, g, 0.5 * dt), Pv2 = phi1_table(fifth_order, g, 0.5 * dt);
  const cplx mi(0.0, -1.0);

  return march(u0, v0, p, dt, M, save_every, [&](Field& u, Field& v, std::size_t m) {
    const Field u_prev = u, v_prev = v;
    if (p.linear()) {
      mul(u, Eu);
      mul(v, Ev);
      return;
    }
    const Forcing f1 = forcing(to_physical(u), to_physical(v), p);
    Field um = u, vm = v;
    mul(um, Eu2);
    mul(vm, Ev2);
    axpy_mul(um, 0.5 * dt * mi, Pu2, f1.F);
    axpy_mul(vm, 0.5 * dt, Pv2, f1.G);
    const Forcing f2 = forcing(to_physical(um), to_physical(vm), p);
    mul(u, Eu);
    mul(v, Ev);
    axpy_mul(u, dt * mi, Pu, f2.F);
    axpy_mul(v, dt, Pv, f2.G);
    guard_growth(u_prev, u, "exponential_evolve", m);
    guard_growth(v_prev, v, "exponential_evolve", m);
  });
}

DuhamelParts nonlinear_part(const Trajectory& traj, const Field& u0, const Field& v0) {
  if (u0.grid != traj.grid || v0.grid != traj.grid) throw GridMismatch("nonlinear_part: grid mismatch");
  DuhamelParts out;
  const Field u0s = as_spectral(u0), v0s = as_spectral(v0);
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const PreciseTime t = exact_product(static_cast<double>(m), traj.dt);
    out.u1.push_back(traj.u[m] - to_physical(apply_group(schrodinger, u0s, t)));
    Field v1 = traj.v[m] - to_physical(apply_group(fifth_order, v0s, t));
    v1.real_valued = true;
    out.v1.push_back(std::move(v1));
  }
  return out;
}

}  // namespace skdv
