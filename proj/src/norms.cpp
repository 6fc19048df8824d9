#include "skdv/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft_backend.hpp"

namespace skdv {

double sobolev_norm(const Field& f, double s) {
  const Field h = as_spectral(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) acc += std::pow(japanese(h.grid.xi(i)), 2.0 * s) * std::norm(h.values[i]);
  return std::sqrt(acc * h.grid.spacing());
}

HolderProbe holder_probe(const Field& f, int k, double alpha, std::size_t window) {
  if (k != 0 && k != 1) throw std::invalid_argument("holder_seminorm: k must be 0 or 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("holder_seminorm: alpha must lie in (0, 1]");
  if (window < 1) throw std::invalid_argument("holder_seminorm: window must be positive");
  const Field g = k == 0 ? as_physical(f) : as_physical(spectral_derivative(f, 1));
  const std::size_t n = g.size();
  const std::size_t w = std::min(window, n - 1);
  const double dx = g.grid.spacing();

  HolderProbe best;
  for (std::size_t m = 1; m <= w; ++m) {
    const double inv = 1.0 / std::pow(static_cast<double>(m) * dx, alpha);
    for (std::size_t j = 0; j + m < n; ++j) {
      const double q = std::abs(g.values[j + m] - g.values[j]) * inv;
      if (q > best.value) {
        best.value = q;
        best.lag = m;
        best.x = g.grid.x(j) + 0.5 * static_cast<double>(m) * dx;
      }
    }
  }
  return best;
}

double holder_seminorm(const Field& f, int k, double alpha, std::size_t window) {
  return holder_probe(f, k, alpha, window).value;
}

SpaceTimeField::SpaceTimeField(Grid1D g, double t0_, double dt_, std::size_t n_times_, PropagatorSymbol sym)
    : grid(g), t0(t0_), dt(dt_), n_times(n_times_), symbol(sym), samples(g.n_points() * n_times_) {
  if (n_times < 2 || (n_times & (n_times - 1)) != 0)
    throw std::invalid_argument("space-time field: n_times must be a power of two");
  if (!(dt > 0.0)) throw std::invalid_argument("space-time field: dt must be positive");
}

double SpaceTimeField::tau(std::size_t m) const {
  const auto n = static_cast<long>(n_times);
  const long k = static_cast<long>(m) < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - n;
  return 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(n_times) * dt);
}

std::vector<cplx> space_time_spectrum(const SpaceTimeField& w) {
  const std::size_t n = w.grid.n_points();
  std::vector<cplx> out(w.samples.size());
  detail::fft_2d(w.samples.data(), out.data(), w.n_times, n, detail::Direction::forward);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n * w.n_times));
  for (auto& c : out) c *= scale;
  return out;
}

double bourgain_norm(const SpaceTimeField& w, double s, double b) {
  const std::size_t n = w.grid.n_points();
  double peak = 0.0, ends = 0.0;
  for (const auto& c : w.samples) peak = std::max(peak, std::abs(c));
  for (std::size_t j = 0; j < n; ++j)
    ends = std::max({ends, std::abs(w.at(0, j)), std::abs(w.at(w.n_times - 1, j))});
  if (ends > 1e-8 * peak)
    throw std::invalid_argument("bourgain_norm: signal not negligible at the ends of the time lattice");

  const auto spec = space_time_spectrum(w);
  const auto sigma = symbol_on_grid(w.symbol, w.grid);
  double acc = 0.0;
  for (std::size_t m = 0; m < w.n_times; ++m) {
    const double tau = w.tau(m);
    for (std::size_t j = 0; j < n; ++j) {
      const double weight = std::pow(japanese(w.grid.xi(j)), 2.0 * s) * std::pow(japanese(tau + sigma[j]), 2.0 * b);
      acc += weight * std::norm(spec[m * n + j]);
    }
  }
  return std::sqrt(acc * w.grid.spacing() * w.dt);
}

double tail_regularity(const Field& f, double lo, double hi) {
  const Field h = as_spectral(f);
  if (!(lo > 0.0 && lo < hi && hi <= h.grid.xi_max()))
    throw std::invalid_argument("tail_regularity: need 0 < lo < hi <= max|xi|");
  const double octaves = std::log2(hi / lo);
  if (octaves < 1.0) throw std::invalid_argument("tail_regularity: band narrower than one octave");

  const int nb = static_cast<int>(std::lround(4.0 * octaves));
  const double ratio = std::pow(hi / lo, 1.0 / nb);
  std::vector<double> sum(nb, 0.0);
  std::vector<int> count(nb, 0);
  double top = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    top = std::max(top, std::abs(h.values[i]));
    const double a = std::abs(h.grid.xi(i));
    if (a < lo || a > hi) continue;
    const int band = std::min(nb - 1, static_cast<int>(std::floor(std::log(a / lo) / std::log(ratio))));
    sum[band] += std::norm(h.values[i]);
    ++count[band];
  }

  std::vector<double> xs, ys;
  for (int k = 0; k < nb; ++k) {
    if (count[k] == 0) continue;
    const double rms = std::sqrt(sum[k] / count[k]);
    if (!(rms > 1e-14 * top)) throw std::invalid_argument("tail_regularity: spectrum vanishes on the band (no tail)");
    xs.push_back(std::log(lo * std::pow(ratio, k + 0.5)));
    ys.push_back(std::log(rms));
  }
  if (xs.size() < 3) throw std::invalid_argument("tail_regularity: too few resolved sub-bands");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return -(sxy / sxx) - 0.5;
}

std::vector<std::string> budget_violations(const Exponents& e) {
  // Inputs are decimals that doubles represent inexactly, so a value typed
  // exactly on a bound (abar = 5b/2 - 5/8 - beta, say) must not fall on the
  // wrong side through rounding: strict bounds need a margin of slack,
  // non-strict ones are granted it.
  constexpr double slack = 1e-12;
  const auto lt = [](double x, double y) { return x < y - slack; };
  const auto le = [](double x, double y) { return x <= y + slack; };
  std::vector<std::string> out;
  const double top = 2.5 * e.b - 0.625;  // 5b/2 - 5/8
  const auto fmt = [](const char* rule, double lhs, double rhs) {
    std::ostringstream os;
    os.precision(17);
    os << rule << " (" << lhs << " vs " << rhs << ")";
    return os.str();
  };
  if (!le(0.0, e.s)) out.push_back(fmt("s >= 0", e.s, 0.0));
  if (!lt(9.0 / 20.0, e.b)) out.push_back(fmt("9/20 < b", e.b, 9.0 / 20.0));
  if (!lt(e.b, 0.5)) out.push_back(fmt("b < 1/2", e.b, 0.5));
  if (!lt(0.5, e.beta)) out.push_back(fmt("1/2 < beta", e.beta, 0.5));
  if (!lt(e.beta, top)) out.push_back(fmt("beta < 5b/2 - 5/8", e.beta, top));
  if (!le(0.0, e.abar)) out.push_back(fmt("0 <= abar", e.abar, 0.0));
  if (!le(e.abar, top - e.beta)) out.push_back(fmt("abar <= 5b/2 - 5/8 - beta", e.abar, top - e.beta));
  if (!le(0.0, e.a)) out.push_back(fmt("0 <= a", e.a, 0.0));
  if (!le(e.a, 5.0 * e.beta - 2.25)) out.push_back(fmt("a <= 5 beta - 9/4", e.a, 5.0 * e.beta - 2.25));
  for (double x : {e.s, e.b, e.beta, e.abar, e.a})
    if (!std::isfinite(x)) {
      out.push_back("all exponents finite");
      break;
    }
  return out;
}

RegularityBudget::RegularityBudget(const Exponents& e) : e_(e) {
  const auto bad = budget_violations(e);
  if (bad.empty()) return;
  std::string msg = "inadmissible regularity budget:";
  for (const auto& b : bad) msg += " [" + b + "]";
  throw BudgetError(msg);
}

}  // namespace skdv
