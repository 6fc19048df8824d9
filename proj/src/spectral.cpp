#include "skdv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft_backend.hpp"

namespace skdv {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void transform(const Field& f, Field& out, detail::Direction dir) {
  detail::fft_1d(f.values.data(), out.values.data(), f.size(), dir);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& c : out.values) c *= scale;
}

// i^order, exact.
cplx unit_power(int order) {
  static const cplx table[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return table[order % 4];
}

}  // namespace

Grid1D::Grid1D(std::size_t n_points, double box_length) : n_(n_points), length_(box_length) {
  if (n_points < 8 || !is_power_of_two(n_points))
    throw std::invalid_argument("grid: n_points must be a power of two >= 8, got " + std::to_string(n_points));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("grid: box_length must be positive and finite");
}

double Grid1D::x(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * spacing(); }

long Grid1D::wavenumber(std::size_t i) const {
  const auto k = static_cast<long>(i);
  return i < n_ / 2 ? k : k - static_cast<long>(n_);
}

double Grid1D::xi(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(wavenumber(i)) / length_;
}

double Grid1D::xi_max() const { return std::abs(xi(nyquist_index())); }

std::vector<double> Grid1D::frequencies() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = xi(i);
  return out;
}

Grid1D make_grid(std::size_t n_points, double box_length) { return Grid1D(n_points, box_length); }

Field::Field(Grid1D g, Rep r, bool real) : grid(g), values(g.n_points()), rep(r), real_valued(real) {}

Field::Field(Grid1D g, std::vector<cplx> vals, Rep r, bool real)
    : grid(g), values(std::move(vals)), rep(r), real_valued(real) {
  if (values.size() != grid.n_points()) throw std::invalid_argument("field: value count does not match grid");
}

Field to_spectral(const Field& f) {
  if (f.rep != Rep::physical) throw RepresentationError("to_spectral: field is already spectral");
  Field out(f.grid, Rep::spectral, f.real_valued);
  transform(f, out, detail::Direction::forward);
  return out;
}

Field to_physical(const Field& f) {
  if (f.rep != Rep::spectral) throw RepresentationError("to_physical: field is already physical");
  Field out(f.grid, Rep::physical, f.real_valued);
  transform(f, out, detail::Direction::backward);
  return out;
}

Field as_spectral(const Field& f) { return f.rep == Rep::spectral ? f : to_spectral(f); }
Field as_physical(const Field& f) { return f.rep == Rep::physical ? f : to_physical(f); }

Field spectral_derivative(const Field& f, int order) {
  if (order < 1 || order > 5) throw std::invalid_argument("spectral_derivative: order must be in 1..5");
  Field s = as_spectral(f);
  const auto& g = s.grid;
  for (std::size_t i = 0; i < g.n_points(); ++i) {
    if (order % 2 == 1 && i == g.nyquist_index()) {
      s.values[i] = 0.0;
      continue;
    }
    s.values[i] *= unit_power(order) * std::pow(g.xi(i), order);
  }
  return f.rep == Rep::spectral ? s : to_physical(s);
}

Field dealias(const Field& f) {
  Field s = as_spectral(f);
  const long cutoff = static_cast<long>(s.grid.n_points()) / 3;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s.grid.wavenumber(i)) > cutoff) s.values[i] = 0.0;
  return f.rep == Rep::spectral ? s : to_physical(s);
}

Field dealiased_product(const Field& f, const Field& g) {
  require_same_grid(f, g, "dealiased_product");
  Field a = as_physical(f), b = as_physical(g);
  Field p(a.grid, Rep::physical, a.real_valued && b.real_valued);
  for (std::size_t j = 0; j < p.size(); ++j) p.values[j] = a.values[j] * b.values[j];
  return dealias(p);
}

double l2_norm(const Field& f) {
  double acc = 0.0;
  for (const auto& c : f.values) acc += std::norm(c);
  return std::sqrt(acc * f.grid.spacing());
}

cplx integral(const Field& f) {
  const Field p = as_physical(f);
  cplx acc = 0.0;
  for (const auto& c : p.values) acc += c;
  return acc * p.grid.spacing();
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& c : f.values) m = std::max(m, std::abs(c));
  return m;
}

double imag_fraction(const Field& f) {
  const Field p = as_physical(f);
  double im = 0.0, mag = 0.0;
  for (const auto& c : p.values) {
    im = std::max(im, std::abs(c.imag()));
    mag = std::max(mag, std::abs(c));
  }
  return mag > 0.0 ? im / mag : 0.0;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (a.grid != b.grid) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

namespace {
Field combine(const Field& a, const Field& b, double sign, const char* where) {
  require_same_grid(a, b, where);
  const Field bb = b.rep == a.rep ? b : (a.rep == Rep::spectral ? to_spectral(b) : to_physical(b));
  Field out(a.grid, a.rep, a.real_valued && b.real_valued);
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = a.values[i] + sign * bb.values[i];
  return out;
}
}  // namespace

Field operator+(const Field& a, const Field& b) { return combine(a, b, 1.0, "operator+"); }
Field operator-(const Field& a, const Field& b) { return combine(a, b, -1.0, "operator-"); }

Field operator*(cplx c, const Field& a) {
  Field out = a;
  for (auto& v : out.values) v *= c;
  out.real_valued = a.real_valued && c.imag() == 0.0;
  return out;
}

}  // namespace skdv
