#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skdv/spectral.hpp"
#include "support.hpp"

using namespace skdv;
using skdv::testing::random_field;
using skdv::testing::sup_diff;

TEST_CASE("grid construction") {
  SUBCASE("lattice of an 8-point 2pi box") {
    const Grid1D g = make_grid(8, 2 * std::numbers::pi);
    std::vector<double> xi;
    for (std::size_t i = 0; i < 8; ++i) xi.push_back(g.xi(i));
    std::sort(xi.begin(), xi.end());
    for (int k = -4; k <= 3; ++k) CHECK(xi[k + 4] == doctest::Approx(k).epsilon(1e-15));
  }
  SUBCASE("spacing") { CHECK(make_grid(16, 100).spacing() == 6.25); }
  SUBCASE("largest positive frequency") {
    const Grid1D g = make_grid(1024, 200);
    CHECK(g.xi(511) == doctest::Approx(2 * std::numbers::pi * 511 / 200).epsilon(1e-15));
    CHECK(g.wavenumber(g.nyquist_index()) == -512);
  }
  SUBCASE("node placement") {
    const Grid1D g = make_grid(64, 10);
    CHECK(g.x(0) == -5.0);
    CHECK(g.x(32) == 0.0);
    CHECK(g.spacing() * 64 == doctest::Approx(10).epsilon(1e-15));
  }
  SUBCASE("symmetric lattice away from Nyquist") {
    const Grid1D g = make_grid(256, 37.5);
    for (std::size_t i = 1; i < 128; ++i) CHECK(g.xi(256 - i) == -g.xi(i));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(make_grid(12, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, -3.0), std::invalid_argument);
  }
}

TEST_CASE("transforms") {
  const Grid1D g(128, 20.0);
  SUBCASE("constant goes to the zero mode") {
    const Field c = to_spectral(sample(g, [](double) { return cplx(1.0); }));
    CHECK(std::abs(c[0] - std::sqrt(128.0)) < 1e-12);
    for (std::size_t i = 1; i < 128; ++i) CHECK(std::abs(c[i]) < 1e-12);
  }
  SUBCASE("single lattice mode") {
    const double xi3 = g.xi(3);
    const Field s = to_spectral(sample(g, [&](double x) { return std::polar(1.0, xi3 * x); }));
    for (std::size_t i = 0; i < 128; ++i)
      if (i == 3)
        CHECK(std::abs(s[i]) == doctest::Approx(std::sqrt(128.0)).epsilon(1e-13));
      else
        CHECK(std::abs(s[i]) < 1e-11);
  }
  SUBCASE("round trip, Parseval and linearity on random fields") {
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const Field f = random_field(g, seed, false, 64);
      const Field h = random_field(g, seed + 100, false, 64);
      const Field back = to_physical(to_spectral(f));
      CHECK(l2_norm(back - f) <= 1e-12 * l2_norm(f));
      const Field fs = to_spectral(f);
      double phys = 0.0, spec = 0.0;
      for (std::size_t j = 0; j < 128; ++j) phys += std::norm(f[j]), spec += std::norm(fs[j]);
      CHECK(std::abs(phys - spec) <= 1e-12 * phys);
      const cplx a(0.3, -1.1), b(2.0, 0.5);
      const Field lhs = to_spectral(a * f + b * h);
      const Field rhs = a * to_spectral(f) + b * to_spectral(h);
      CHECK(l2_norm(lhs - rhs) <= 1e-12 * l2_norm(lhs));
    }
  }
  SUBCASE("representation errors") {
    const Field f = random_field(g, 9);
    CHECK_THROWS_AS(to_physical(f), RepresentationError);
    CHECK_THROWS_AS(to_spectral(to_spectral(f)), RepresentationError);
    CHECK_THROWS_AS(f + random_field(Grid1D(64, 20.0), 1), GridMismatch);
  }
}

TEST_CASE("spectral derivative") {
  SUBCASE("sine of the first mode") {
    const Grid1D g(64, 10.0);
    const double k1 = g.xi(1);
    const Field d = spectral_derivative(sample(g, [&](double x) { return cplx(std::sin(k1 * x)); }), 1);
    const Field exact = sample(g, [&](double x) { return cplx(k1 * std::cos(k1 * x)); });
    CHECK(sup_diff(d, exact) <= 1e-10);
    CHECK(d.rep == Rep::physical);
  }
  SUBCASE("constant has zero derivatives") {
    const Grid1D g(32, 3.0);
    const Field c = sample(g, [](double) { return cplx(2.5); });
    for (int order = 1; order <= 5; ++order) CHECK(max_abs(spectral_derivative(c, order)) <= 1e-12);
  }
  SUBCASE("second derivative of a Gaussian") {
    const Grid1D g(1024, 100.0);
    const Field f = sample(g, [](double x) { return cplx(std::exp(-x * x)); });
    const Field exact = sample(g, [](double x) { return cplx((4 * x * x - 2) * std::exp(-x * x)); });
    CHECK(sup_diff(spectral_derivative(f, 2), exact) <= 1e-8);
  }
  SUBCASE("composition and reality") {
    const Grid1D g(256, 30.0);
    const Field f = random_field(g, 4, true, 40);
    CHECK(sup_diff(spectral_derivative(spectral_derivative(f, 1), 1), spectral_derivative(f, 2)) <=
          1e-10 * max_abs(spectral_derivative(f, 2)));
    for (int order = 1; order <= 5; ++order) CHECK(imag_fraction(spectral_derivative(f, order)) <= 1e-12);
  }
  SUBCASE("odd orders drop the Nyquist mode") {
    const Grid1D g(16, 16.0);
    Field s(g, Rep::spectral);
    s[g.nyquist_index()] = 1.0;
    CHECK(max_abs(spectral_derivative(s, 1)) == 0.0);
    CHECK(max_abs(spectral_derivative(s, 2)) > 0.0);
  }
  SUBCASE("unsupported order") {
    const Grid1D g(16, 1.0);
    CHECK_THROWS_AS(spectral_derivative(Field(g), 0), std::invalid_argument);
    CHECK_THROWS_AS(spectral_derivative(Field(g), 6), std::invalid_argument);
  }
}

TEST_CASE("dealiasing") {
  const Grid1D g(128, 12.0);  // cutoff |k| <= 42
  SUBCASE("low mode kept, high mode removed") {
    Field s(g, Rep::spectral);
    s[1] = 1.0;
    CHECK(sup_diff(dealias(s), s) == 0.0);
    Field t(g, Rep::spectral);
    t[g.n_points() / 2 - 1] = 1.0;
    CHECK(max_abs(dealias(t)) == 0.0);
  }
  SUBCASE("product matches a twice-finer grid") {
    // Both factors live on |k| <= N/3; the exact product reaches 2N/3 and is
    // formed without aliasing on the 2N grid.
    const long kc = static_cast<long>(g.n_points() / 3);
    const Field f = random_field(g, 11, false, kc);
    const Field h = random_field(g, 12, false, kc);
    auto band = [&](const Field& x) {
      Field s = to_spectral(x);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(g.wavenumber(i)) > kc) s[i] = 0.0;
      return s;
    };
    const Field fs = band(f), hs = band(h);
    const Grid1D fine(2 * g.n_points(), g.box_length());
    auto lift = [&](const Field& s) {
      Field out(fine, Rep::spectral);
      const double scale = std::sqrt(2.0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const long k = g.wavenumber(i);
        if (k == -static_cast<long>(g.n_points() / 2)) continue;
        out[k >= 0 ? k : fine.n_points() + k] = s[i] * scale;
      }
      return to_physical(out);
    };
    const Field pf = lift(fs), ph = lift(hs);
    Field prod(fine, Rep::physical);
    for (std::size_t j = 0; j < fine.n_points(); ++j) prod[j] = pf[j] * ph[j];
    const Field ps = to_spectral(prod);
    Field oracle(g, Rep::spectral);
    for (std::size_t i = 0; i < g.n_points(); ++i) {
      const long k = g.wavenumber(i);
      if (std::abs(k) <= kc) oracle[i] = ps[k >= 0 ? k : fine.n_points() + k] / std::sqrt(2.0);
    }
    const Field got = to_spectral(dealiased_product(to_physical(fs), to_physical(hs)));
    CHECK(l2_norm(got - oracle) <= 1e-12 * l2_norm(oracle));
  }
}
