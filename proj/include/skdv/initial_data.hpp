#pragma once

#include "skdv/spectral.hpp"
#include "skdv/trajectory.hpp"

namespace skdv {

struct BlowupParams {
  double theta = 1.0;      // focusing time t* = 1/(4 theta)
  double x0 = 0.0;         // focusing point of u0
  int series_length = 28;  // J
  double coeff_decay = 5.0;  // r in alpha_j = exp(-r j); must exceed 4

  double t_star() const { return 0.25 / theta; }
  double coefficient(int j) const;
  void validate() const;
};

class DecayError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest admissible boundary magnitude of sampled data.
inline constexpr double boundary_decay_tol = 1e-6;

// exp(-i theta (x - x0)^2) / (1 + x^2)^{5/4}. The chirp rate theta makes the
// free Schrodinger flow focus at x0 at t* = 1/(4 theta).
Field make_u0(const BlowupParams& p, const Grid1D& g);

// exp(-2|x|) sampled pointwise.
Field kink_profile(const Grid1D& g);

// alpha_j V(-j t*) phi.
Field v0_term(const BlowupParams& p, const Grid1D& g, int j);

// sum_{j=1}^{J} alpha_j V(-j t*) phi, real.
Field make_v0(const BlowupParams& p, const Grid1D& g);

// sum_{j > J} alpha_j * ||phi||_{L2}: exact L2 bound on the truncation.
double v0_tail_bound(const BlowupParams& p, const Grid1D& g);

// Smooth even cutoff: 1 on [-1/2, 1/2], 0 outside (-1, 1).
double bump_eta(double t);

// Multiplies every slice by eta(t / scale).
Trajectory window_field(const Trajectory& traj, double scale);

}  // namespace skdv
