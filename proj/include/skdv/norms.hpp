#pragma once

#include <string>
#include <vector>

#include "skdv/propagators.hpp"
#include "skdv/spectral.hpp"

namespace skdv {

// <x> = 1 + |x|, not the sqrt(1 + x^2) variant.
inline double japanese(double x) { return 1.0 + (x < 0.0 ? -x : x); }

// (sum_k <xi_k>^{2s} |f^_k|^2 * dx)^{1/2}; the unitary DFT makes this the
// Riemann sum of the continuum H^s norm.
double sobolev_norm(const Field& f, double s);

struct HolderProbe {
  double value = 0.0;
  double x = 0.0;       // midpoint of the maximising pair
  std::size_t lag = 0;  // in grid points
};

// max over lags 1..window (no periodic wraparound) of
// |f^(k)(x + m dx) - f^(k)(x)| / (m dx)^alpha.
HolderProbe holder_probe(const Field& f, int k, double alpha, std::size_t window);
double holder_seminorm(const Field& f, int k, double alpha, std::size_t window);
inline std::size_t default_holder_window(const Grid1D& g) { return g.n_points() / 8; }

// Samples w(x_j, t_m) stored time-major: samples[m * n_points + j].
// t_m = t0 + m * dt.
struct SpaceTimeField {
  Grid1D grid;
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t n_times = 0;
  PropagatorSymbol symbol = schrodinger;
  std::vector<cplx> samples;

  SpaceTimeField(Grid1D g, double t0, double dt, std::size_t n_times, PropagatorSymbol sym);
  cplx& at(std::size_t m, std::size_t j) { return samples[m * grid.n_points() + j]; }
  const cplx& at(std::size_t m, std::size_t j) const { return samples[m * grid.n_points() + j]; }
  double time(std::size_t m) const { return t0 + static_cast<double>(m) * dt; }
  // tau of spectral row m (FFT order).
  double tau(std::size_t m) const;
};

// Unitary 2-D transform in the convention where exp(i(x xi - t xi^2)) peaks
// at tau = -xi^2. Same layout as the samples.
std::vector<cplx> space_time_spectrum(const SpaceTimeField& w);

// l2 of <xi>^s <tau + sigma(xi)>^b w^ with measure dx dt.
double bourgain_norm(const SpaceTimeField& w, double s, double b);

// Sobolev-exponent proxy -p - 1/2, where p is the least-squares slope of
// log(band RMS of |f^|) against log(band centre) over quarter-octave bands
// covering [lo, hi].
double tail_regularity(const Field& f, double lo, double hi);

struct Exponents {
  double s = 0.0;
  double b = 0.49;
  double beta = 0.55;
  double abar = 0.05;
  double a = 0.5;
};

// Every violated constraint of 9/20 < b < 1/2, 1/2 < beta < 5b/2 - 5/8,
// 0 <= abar <= 5b/2 - 5/8 - beta, 0 <= a <= 5 beta - 9/4 and s >= 0.
std::vector<std::string> budget_violations(const Exponents& e);

class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RegularityBudget {
 public:
  explicit RegularityBudget(const Exponents& e);  // throws BudgetError
  const Exponents& exponents() const { return e_; }
  double s() const { return e_.s; }
  double b() const { return e_.b; }
  double beta() const { return e_.beta; }
  double abar() const { return e_.abar; }
  double a() const { return e_.a; }

 private:
  Exponents e_;
};

}  // namespace skdv
