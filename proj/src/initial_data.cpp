#include "skdv/initial_data.hpp"

#include <cmath>
#include <string>

#include "skdv/propagators.hpp"

namespace skdv {

double BlowupParams::coefficient(int j) const { return std::exp(-coeff_decay * j); }

void BlowupParams::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("blowup: theta must be positive");
  if (!std::isfinite(x0)) throw std::invalid_argument("blowup: x0 must be finite");
  if (series_length < 1) throw std::invalid_argument("blowup: series_length must be >= 1");
  if (!(coeff_decay > 4.0)) throw std::invalid_argument("blowup: coeff_decay must exceed 4");
}

Field make_u0(const BlowupParams& p, const Grid1D& g) {
  p.validate();
  const double half = 0.5 * g.box_length();
  const double edge = std::pow(1.0 + half * half, -1.25);
  if (!(edge < boundary_decay_tol))
    throw DecayError("make_u0: |u0| = " + std::to_string(edge) + " at the box edge; need < 1e-6 (box_length >= 504)");
  return sample(g, [&](double x) {
    const double d = x - p.x0;
    return std::polar(std::pow(1.0 + x * x, -1.25), -p.theta * d * d);
  });
}

Field kink_profile(const Grid1D& g) {
  const double edge = std::exp(-g.box_length());
  if (!(edge < boundary_decay_tol)) throw DecayError("kink_profile: exp(-2|x|) not below 1e-6 at the box edge");
  return sample(g, [](double x) { return cplx(std::exp(-2.0 * std::abs(x)), 0.0); }, true);
}

Field v0_term(const BlowupParams& p, const Grid1D& g, int j) {
  p.validate();
  const Field phi = to_spectral(kink_profile(g));
  Field out = apply_group(fifth_order, phi, -j * p.t_star());
  for (auto& c : out.values) c *= p.coefficient(j);
  return to_physical(out);
}

Field make_v0(const BlowupParams& p, const Grid1D& g) {
  p.validate();
  const Field phi = to_spectral(kink_profile(g));
  Field acc(g, Rep::spectral, true);
  for (int j = 1; j <= p.series_length; ++j) {
    const auto ph = phase_table(fifth_order, g, -j * p.t_star());
    const double c = p.coefficient(j);
    for (std::size_t i = 0; i < acc.size(); ++i) acc.values[i] += c * ph[i] * phi.values[i];
  }
  return to_physical(acc);
}

double v0_tail_bound(const BlowupParams& p, const Grid1D& g) {
  p.validate();
  // sum_{j>J} e^{-rj} = e^{-r(J+1)} / (1 - e^{-r})
  const double tail = std::exp(-p.coeff_decay * (p.series_length + 1)) / (1.0 - std::exp(-p.coeff_decay));
  return tail * l2_norm(kink_profile(g));
}

double bump_eta(double t) {
  const auto psi = [](double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; };
  const double a = std::abs(t);
  const double up = psi(2.0 - 2.0 * a);
  const double down = psi(2.0 * a - 1.0);
  return up + down > 0.0 ? up / (up + down) : 0.0;
}

Trajectory window_field(const Trajectory& traj, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("window_field: scale must be positive");
  Trajectory out = traj;
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double e = bump_eta(out.times[m] / scale);
    for (auto& c : out.u[m].values) c *= e;
    for (auto& c : out.v[m].values) c *= e;
  }
  return out;
}

}  // namespace skdv
