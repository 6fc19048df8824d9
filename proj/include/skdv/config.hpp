#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "skdv/estimates.hpp"
#include "skdv/initial_data.hpp"
#include "skdv/norms.hpp"
#include "skdv/trajectory.hpp"

namespace skdv {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Triple = std::array<double, 3>;  // (b, beta, a)

// Every key of the flat `section.name = value` format has a field here; the
// defaults are the shipped study configuration.
struct ExperimentConfig {
  // grid.*
  std::size_t n_points = 2048;  // base resolution N0 of refinement ladders
  double box_length = 512.0;
  // time.*
  double T = 0.25;
  double dt = 1e-4;
  int save_every = 25;
  // params.*
  SystemParams params;
  // initial.*
  std::string initial_kind = "blowup";  // blowup | gaussian
  double u_sigma = 2.0;                 // gaussian: u0 = exp(-x^2 / sigma^2)
  double v_amplitude = 0.5;             // gaussian: v0 = A exp(-(x - shift)^2 / sigma^2)
  double v_sigma = 2.0;
  double v_shift = 1.0;
  // blowup.*
  BlowupParams blowup;
  double holder_eps = 1.0 / 16.0;
  double v_alpha = 1.0;
  std::size_t holder_window = 0;  // 0: n_points / 8
  double diverge_ratio = 2.0;
  double bounded_ratio = 1.5;
  double argmax_cells = 5.0;
  // budget.*
  Exponents budget{2.0 - 1.0 / 64.0 - 0.55, 0.49, 0.55, 0.05, 0.5};
  // solver.*
  std::string method = "exponential";  // exponential | splitstep | picard
  int max_iter = 50;
  double tol = 1e-12;
  // smoothing.*
  double free_exponent = 2.1;
  double tail_lo = 4.0;
  double tail_hi_fraction = 0.5;  // of the finest grid's max |xi|
  double converged_tol = 0.05;
  double free_change_min = 0.25;
  double tail_gain_min = 0.2;
  // simulate.*
  double mass_tol = 1e-8;
  double mean_tol = 1e-10;
  // audit.*
  double xi_range = 50.0;
  double tau_range = 8.0;
  int quad_points = 64;
  double stabilization_tol = 0.01;
  std::vector<Triple> schrodinger_triples{{0.49, 0.55, 0.58}, {0.47, 0.52, 0.545}};
  std::vector<Triple> kdv5_triples{{0.49, 0.7, 1.0}, {0.45, 0.6, 0.75}};
  std::vector<double> separations{10.0, 100.0, 1000.0};
  double ratio_spread_max = 10.0;
  int probes = 3;
  double probe_ratio_lo = 0.1;
  double probe_ratio_hi = 10.0;
  unsigned long long seed = 20240101ULL;
  // monitor.*
  double boundary_fraction = 0.05;
  double boundary_tol = 1e-6;
  // outputs.*
  std::string directory = "out";
  std::string formats = "csv,json";

  Grid1D grid(std::size_t refinement = 1) const { return Grid1D(n_points * refinement, box_length); }
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Checks shared by every study; throws ConfigError.
void validate_common(const ExperimentConfig& c);
// Additionally: admissible budget (smoothing) and t* on the save lattice, t* <= T.
void validate_smoothing(const ExperimentConfig& c);
void validate_blowup(const ExperimentConfig& c);

// key = value rendering of every field, in schema order.
std::string render_config(const ExperimentConfig& c);

}  // namespace skdv
