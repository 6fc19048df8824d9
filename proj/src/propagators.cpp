#include "skdv/propagators.hpp"

#include <cmath>
#include <string>

namespace skdv {

namespace {

// 2*pi split as hi + lo with hi the nearest double.
constexpr double two_pi_hi = 6.283185307179586;
constexpr double two_pi_lo = 2.4492935982947064e-16;

constexpr double max_phase = 1e12;

void check_time(const PropagatorSymbol& sym, const Grid1D& g, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("apply_group: non-finite time");
  const double w = std::abs(sym.omega(g.xi_max()));
  if (std::abs(t) * w > max_phase)
    throw AccuracyError(std::string("apply_group: |t| * max|omega| = ") + std::to_string(std::abs(t) * w) +
                        " exceeds 1e12 for the " + sym.name() + " symbol");
}

}  // namespace

double PropagatorSymbol::omega(double xi) const {
  const double x2 = xi * xi;
  return kind == SymbolKind::schrodinger ? x2 : x2 * x2 * xi;
}

cplx PropagatorSymbol::phase(double xi, double t) const { return precise_phase(omega(xi), {t, 0.0}); }

const char* PropagatorSymbol::name() const {
  return kind == SymbolKind::schrodinger ? "schrodinger" : "fifth_order";
}

PreciseTime exact_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

PreciseTime exact_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

cplx precise_phase(double omega, PreciseTime t) {
  const double p = t.hi * omega;
  const double e = std::fma(t.hi, omega, -p) + t.lo * omega;
  const double n = std::nearbyint(p / two_pi_hi);
  double r = std::fma(-n, two_pi_hi, p);
  r = std::fma(-n, two_pi_lo, r) + e;
  return {std::cos(r), -std::sin(r)};
}

std::vector<double> symbol_on_grid(PropagatorSymbol sym, const Grid1D& g) {
  std::vector<double> w(g.n_points());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = sym.omega(g.xi(i));
  if (sym.kind == SymbolKind::fifth_order) w[g.nyquist_index()] = 0.0;
  return w;
}

std::vector<cplx> phase_table(PropagatorSymbol sym, const Grid1D& g, PreciseTime t) {
  check_time(sym, g, t.hi);
  const auto w = symbol_on_grid(sym, g);
  std::vector<cplx> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = precise_phase(w[i], t);
  return out;
}

std::vector<cplx> phase_table(PropagatorSymbol sym, const Grid1D& g, double t) {
  return phase_table(sym, g, PreciseTime{t, 0.0});
}

Field apply_group(PropagatorSymbol sym, const Field& f, PreciseTime t) {
  if (!std::isfinite(t.hi) || !std::isfinite(t.lo)) throw std::invalid_argument("apply_group: non-finite time");
  const auto ph = phase_table(sym, f.grid, t);
  Field s = as_spectral(f);
  for (std::size_t i = 0; i < s.size(); ++i) s.values[i] *= ph[i];
  return f.rep == Rep::spectral ? s : to_physical(s);
}

Field apply_group(PropagatorSymbol sym, const Field& f, double t) { return apply_group(sym, f, PreciseTime{t, 0.0}); }

double group_law_defect(PropagatorSymbol sym, const Field& f, double t1, double t2) {
  const double nf = l2_norm(f);
  if (nf == 0.0) throw std::invalid_argument("group_law_defect: zero field");
  const Field twice = apply_group(sym, apply_group(sym, f, t1), t2);
  const Field once = apply_group(sym, f, exact_sum(t1, t2));
  return l2_norm(twice - once) / nf;
}

}  // namespace skdv
