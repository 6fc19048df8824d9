#pragma once

#include <stdexcept>
#include <vector>

#include "skdv/spectral.hpp"
#include "skdv/trajectory.hpp"

namespace skdv {

// alpha u v + gamma |u|^2 u, products dealiased.
Field nonlinearity_u(const Field& u, const Field& v, const SystemParams& p);
// epsilon (|u|^2)_x - (v^2)_x, products dealiased.
Field nonlinearity_v(const Field& u, const Field& v, const SystemParams& p);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> defects)
      : std::runtime_error(what), defects(std::move(defects)) {}
  std::vector<double> defects;
};

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PicardResult {
  Trajectory traj;
  // defects[i] = sup_m (||u^{i+1}_m - u^i_m|| + ||v^{i+1}_m - v^i_m||), L2 in space.
  std::vector<double> defects;
};

// Fixed point of the time-truncated Duhamel map, starting from the free
// evolution. The Duhamel integral is the trapezoidal rule on the slice
// lattice with every sample carried by the exact group. Requires T <= 1/2
// and T/dt integral.
PicardResult picard_solve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                          int max_iter, double tol);

// Strang splitting: exact half step of the linear flow, explicit midpoint on
// the nonlinearity, exact half step. Stores every save_every-th slice.
Trajectory splitstep_evolve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                            int save_every = 1);

// Exponential midpoint rule: the linear part is integrated exactly and the
// nonlinearity is weighted by phi1(-i omega h). Unlike splitting it has no
// resonance at omega*dt near multiples of 2*pi, which matters for the
// fifth-order symbol on rough data.
Trajectory exponential_evolve(const Field& u0, const Field& v0, const SystemParams& p, double T, double dt,
                              int save_every = 1);

struct DuhamelParts {
  std::vector<Field> u1;
  std::vector<Field> v1;
};

// u1(t_m) = u(t_m) - U(t_m) u0 and v1(t_m) = v(t_m) - V(t_m) v0.
DuhamelParts nonlinear_part(const Trajectory& traj, const Field& u0, const Field& v0);

}  // namespace skdv
