#pragma once

#include <random>

#include "skdv/spectral.hpp"

namespace skdv::testing {

// Smooth random field: random spectrum on |k| <= kmax with Gaussian roll-off.
inline Field random_field(const Grid1D& g, unsigned seed, bool real = false, long kmax = -1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  const long n_points = static_cast<long>(g.n_points());
  if (kmax < 0) kmax = n_points / 4;
  Field f(g, Rep::spectral, real);
  for (std::size_t i = 0; i < g.n_points(); ++i) {
    const long k = g.wavenumber(i);
    if (std::abs(k) <= kmax) f.values[i] = cplx(n(rng), n(rng)) * std::exp(-0.5 * double(k * k) / double(kmax * kmax));
  }
  if (real) {  // Hermitian symmetry
    for (std::size_t i = 1; i < g.n_points() / 2; ++i) {
      const cplx avg = 0.5 * (f.values[i] + std::conj(f.values[g.n_points() - i]));
      f.values[i] = avg;
      f.values[g.n_points() - i] = std::conj(avg);
    }
    f.values[0] = f.values[0].real();
    f.values[g.n_points() / 2] = 0.0;
  }
  return to_physical(f);
}

inline double sup_diff(const Field& a, const Field& b) {
  const Field pa = as_physical(a), pb = as_physical(b);
  double m = 0.0;
  for (std::size_t j = 0; j < pa.size(); ++j) m = std::max(m, std::abs(pa[j] - pb[j]));
  return m;
}

}  // namespace skdv::testing
