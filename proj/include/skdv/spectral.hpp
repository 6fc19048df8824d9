#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace skdv {

using cplx = std::complex<double>;

class Grid1D {
 public:
  Grid1D(std::size_t n_points, double box_length);

  std::size_t n_points() const { return n_; }
  double box_length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }

  // Physical node j sits at -L/2 + j*dx, so x = 0 is node n/2.
  double x(std::size_t j) const;

  // Spectral storage follows FFT order: index i holds wavenumber k = i for
  // i < n/2 and k = i - n otherwise. Index n/2 is the Nyquist mode k = -n/2.
  long wavenumber(std::size_t i) const;
  double xi(std::size_t i) const;
  std::size_t nyquist_index() const { return n_ / 2; }
  double xi_max() const;  // |xi| of the Nyquist mode

  // Frequencies in storage order.
  std::vector<double> frequencies() const;

  bool operator==(const Grid1D& o) const { return n_ == o.n_ && length_ == o.length_; }
  bool operator!=(const Grid1D& o) const { return !(*this == o); }

 private:
  std::size_t n_;
  double length_;
};

Grid1D make_grid(std::size_t n_points, double box_length);

enum class Rep { physical, spectral };

struct Field {
  Grid1D grid;
  std::vector<cplx> values;
  Rep rep = Rep::physical;
  bool real_valued = false;

  Field(Grid1D g, Rep r = Rep::physical, bool real = false);
  Field(Grid1D g, std::vector<cplx> vals, Rep r, bool real = false);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RepresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Samples fn(x_j) on the grid.
template <class Fn>
Field sample(const Grid1D& g, Fn&& fn, bool real = false) {
  Field f(g, Rep::physical, real);
  for (std::size_t j = 0; j < g.n_points(); ++j) f.values[j] = fn(g.x(j));
  return f;
}

Field to_spectral(const Field& f);
Field to_physical(const Field& f);
// Conversions that pass through fields already in the target representation.
Field as_spectral(const Field& f);
Field as_physical(const Field& f);

Field spectral_derivative(const Field& f, int order);
Field dealias(const Field& f);
// Pointwise product of two physical fields with the 2/3 rule applied.
Field dealiased_product(const Field& f, const Field& g);

// sqrt(dx * sum |f_j|^2); the unitary normalisation makes this
// representation independent.
double l2_norm(const Field& f);
// sum f_j * dx, physical representation.
cplx integral(const Field& f);
double max_abs(const Field& f);
// max |Im f| / max |f| in physical representation.
double imag_fraction(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx c, const Field& a);

void require_same_grid(const Field& a, const Field& b, const char* where);

}  // namespace skdv
