#pragma once

#include <stdexcept>
#include <vector>

#include "skdv/spectral.hpp"

namespace skdv {

enum class SymbolKind { schrodinger, fifth_order };

// Dispersion relation omega(xi) of the group exp(-i t omega(xi)):
// xi^2 for U(t), xi^5 for V(t).
struct PropagatorSymbol {
  SymbolKind kind;

  double omega(double xi) const;
  cplx phase(double xi, double t) const;
  const char* name() const;
};

inline constexpr PropagatorSymbol schrodinger{SymbolKind::schrodinger};
inline constexpr PropagatorSymbol fifth_order{SymbolKind::fifth_order};

// A time carried as an unevaluated sum hi + lo, used when t is itself the
// result of an inexact operation (t1 + t2, m * dt).
struct PreciseTime {
  double hi = 0.0;
  double lo = 0.0;
};

PreciseTime exact_sum(double a, double b);
PreciseTime exact_product(double a, double b);

class AccuracyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// omega on every storage index. Odd symbols use xi = 0 at the Nyquist mode,
// matching the odd-derivative convention, so V(t) maps real fields to real
// fields.
std::vector<double> symbol_on_grid(PropagatorSymbol sym, const Grid1D& g);

// exp(-i t omega), with t*omega formed exactly and reduced modulo 2*pi in
// double-double arithmetic.
cplx precise_phase(double omega, PreciseTime t);

// Per-mode multipliers exp(-i t omega(xi_k)) in storage order.
std::vector<cplx> phase_table(PropagatorSymbol sym, const Grid1D& g, PreciseTime t);
std::vector<cplx> phase_table(PropagatorSymbol sym, const Grid1D& g, double t);

Field apply_group(PropagatorSymbol sym, const Field& f, double t);
Field apply_group(PropagatorSymbol sym, const Field& f, PreciseTime t);

double group_law_defect(PropagatorSymbol sym, const Field& f, double t1, double t2);

}  // namespace skdv
