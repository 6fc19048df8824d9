#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "skdv/norms.hpp"

namespace skdv {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InadmissibleExponents : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// int_R dx / (<x - a1>^beta <x - a2>^gamma), integrated over the whole line.
double calculus_integral(double beta, double gamma, double a1, double a2);

// phi_beta(a): 1 for beta > 1, log(1 + <a>) for beta = 1, <a>^{1 - beta}
// for beta < 1.
double phi_beta(double beta, double a);

// calculus_integral / (phi_beta(a1 - a2) / <a1 - a2>^gamma). Requires
// beta >= gamma >= 0 and beta + gamma > 1.
double calculus_bound_ratio(double beta, double gamma, double a1, double a2);

struct KernelQuery {
  double a = 0.58;
  double beta = 0.55;
  double b = 0.49;
  double xi_range = 50.0;  // lattice covers |xi| <= xi_range
  double tau_range = 8.0;  // uniform tau block for the low-frequency core
  int quad_points = 64;    // Gauss-Legendre nodes per panel
  bool override_admissibility = false;

  void validate() const;
};

// Exponent preconditions of the kernel bound; empty when satisfied.
std::vector<std::string> schrodinger_kernel_violations(const KernelQuery& q);
std::vector<std::string> kdv5_kernel_violations(const KernelQuery& q);

// Reduced kernels, after the tau1 integral has been bounded by the
// calculus inequality:
//   K_S = <xi>^{2a} / <tau + xi^2>^{2b}
//         * int dxi1 / (<tau + (xi - xi1)^5 + xi1^2>^{4b-1} <xi1>^{2 beta})
//   K_5 = |xi|^2 <xi>^{2a} / <tau + xi^5>^{2b}
//         * int dxi1 / (<xi - xi1>^{2 beta} <tau + xi1^2 + (xi - xi1)^2>^{4b-1} <xi1>^{2 beta})
double schrodinger_kernel(const KernelQuery& q, double xi, double tau);
double kdv5_kernel(const KernelQuery& q, double xi, double tau);

// The same kernels with the tau1 integral carried out numerically instead.
double schrodinger_kernel_2d(const KernelQuery& q, double xi, double tau);
double kdv5_kernel_2d(const KernelQuery& q, double xi, double tau);

struct LatticePoint {
  double xi;
  double tau;
};

struct KernelSup {
  double value = 0.0;
  double xi = 0.0;  // argmax
  double tau = 0.0;
  // (R, sup over lattice points with |xi| <= R) for dyadic R up to xi_range.
  std::vector<std::pair<double, double>> running;
  double last_growth = 0.0;  // running sup at xi_range over that at xi_range / 2, minus 1
  std::size_t evaluations = 0;

  bool stabilized(double tol = 0.01) const { return last_growth < tol; }
};

// Dyadic lattice in xi with tau packed around the characteristic tau = -xi^2
// (schrodinger) or -xi^5 (kdv5), including tau = theta * characteristic for
// theta in [-3/2, -1/2], plus a uniform low-frequency core.
std::vector<LatticePoint> kernel_lattice(const KernelQuery& q, bool kdv5);

KernelSup schrodinger_kernel_sup(const KernelQuery& q);
KernelSup kdv5_kernel_sup(const KernelQuery& q);

struct Admissibility {
  bool ok = false;
  std::vector<std::string> violated;
  std::string explanation() const;
};

Admissibility admissible(const Exponents& e);

}  // namespace skdv
