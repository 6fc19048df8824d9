#pragma once

#include <vector>

#include "skdv/spectral.hpp"

namespace skdv {

// Coupling constants: i u_t + u_xx = alpha u v + gamma |u|^2 u,
// v_t + v_xxxxx + (v^2)_x = epsilon (|u|^2)_x.
struct SystemParams {
  double alpha = 1.0;
  double gamma = 1.0;
  double epsilon = 1.0;

  bool linear() const { return alpha == 0.0 && gamma == 0.0 && epsilon == 0.0; }
  void validate() const;
};

// Slices at t_m = m * dt, m = 0..M, all in physical representation.
struct Trajectory {
  Grid1D grid;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Field> u;
  std::vector<Field> v;
  SystemParams params;

  explicit Trajectory(Grid1D g) : grid(g) {}
  std::size_t size() const { return times.size(); }
};

}  // namespace skdv
