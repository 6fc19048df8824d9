#include <quadmath.h>

#include <cmath>
#include <random>

#include "doctest.h"
#include "skdv/propagators.hpp"
#include "support.hpp"

using namespace skdv;
using skdv::testing::random_field;
using skdv::testing::sup_diff;

TEST_CASE("symbols") {
  CHECK(schrodinger.omega(3.0) == 9.0);
  CHECK(fifth_order.omega(-2.0) == -32.0);
  for (double xi : {-7.3, 0.0, 0.5, 11.0})
    for (double t : {-2.0, 0.0, 0.37, 5.0}) {
      CHECK(std::abs(std::abs(schrodinger.phase(xi, t)) - 1.0) < 1e-15);
      CHECK(std::abs(std::abs(fifth_order.phase(xi, t)) - 1.0) < 1e-15);
    }
  CHECK(fifth_order.phase(4.0, 0.0) == cplx(1.0, 0.0));
  const Grid1D g(32, 10.0);
  CHECK(symbol_on_grid(fifth_order, g)[g.nyquist_index()] == 0.0);
  CHECK(symbol_on_grid(schrodinger, g)[g.nyquist_index()] == doctest::Approx(g.xi_max() * g.xi_max()));
}

TEST_CASE("reduced phase against a quad-precision reference") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xi_d(-40.0, 40.0), t_d(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double omega = fifth_order.omega(xi_d(rng));
    const double t = t_d(rng);
    const cplx got = precise_phase(omega, PreciseTime{t, 0.0});
    const __float128 arg = -static_cast<__float128>(t) * static_cast<__float128>(omega);
    const __float128 red = fmodq(arg, 2 * M_PIq);
    const cplx want(static_cast<double>(cosq(red)), static_cast<double>(sinq(red)));
    CHECK(std::abs(got - want) < 1e-13);
  }
}

TEST_CASE("apply_group examples") {
  const Grid1D g(256, 40.0);
  SUBCASE("time zero is the identity") {
    const Field f = random_field(g, 3);
    CHECK(sup_diff(apply_group(schrodinger, f, 0.0), f) <= 1e-13);
    CHECK(sup_diff(apply_group(fifth_order, f, 0.0), f) <= 1e-13);
  }
  SUBCASE("single mode picks up its phase") {
    const double xi2 = g.xi(2), t = 0.73;
    const Field m = sample(g, [&](double x) { return std::polar(1.0, xi2 * x); });
    const Field exact = sample(g, [&](double x) { return std::polar(1.0, xi2 * x - t * xi2 * xi2); });
    CHECK(sup_diff(apply_group(schrodinger, m, t), exact) <= 1e-13);
  }
  SUBCASE("output representation follows the input") {
    const Field f = random_field(g, 5);
    CHECK(apply_group(schrodinger, f, 0.1).rep == Rep::physical);
    CHECK(apply_group(schrodinger, to_spectral(f), 0.1).rep == Rep::spectral);
  }
  SUBCASE("rejections") {
    const Field f = random_field(g, 5);
    CHECK_THROWS_AS(apply_group(schrodinger, f, NAN), std::invalid_argument);
    CHECK_THROWS_AS(apply_group(fifth_order, f, INFINITY), std::invalid_argument);
    const Grid1D fine(1024, 1.0);  // max|xi|^5 ~ 3.4e17
    CHECK_THROWS_AS(apply_group(fifth_order, Field(fine), 1.0), AccuracyError);
    CHECK_NOTHROW(apply_group(schrodinger, Field(fine), 1.0));
  }
}

TEST_CASE("free Gaussian against the closed form") {
  const Grid1D g(2048, 100.0);
  const double t = 0.1;
  const Field u0 = sample(g, [](double x) { return cplx(std::exp(-x * x)); });
  const cplx den(1.0, 4.0 * t);
  const Field exact = sample(g, [&](double x) { return std::exp(-x * x / den) / std::sqrt(den); });
  CHECK(sup_diff(apply_group(schrodinger, u0, t), exact) <= 1e-8);
}

TEST_CASE("unitarity, group law and reality on random data") {
  const Grid1D g(1024, 100.0);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> t_d(-5.0, 5.0);
  for (unsigned seed = 1; seed <= 6; ++seed) {
    const Field f = random_field(g, seed, false, 400);
    for (PropagatorSymbol sym : {schrodinger, fifth_order}) {
      const double t = t_d(rng);
      CHECK(std::abs(l2_norm(apply_group(sym, f, t)) - l2_norm(f)) <= 1e-12 * l2_norm(f));
      CHECK(group_law_defect(sym, f, t_d(rng), t_d(rng)) <= 1e-12);
    }
  }
  const Field f = random_field(g, 99, false, 400);
  for (PropagatorSymbol sym : {schrodinger, fifth_order}) {
    CHECK(group_law_defect(sym, f, 0.0, 0.0) <= 1e-15);
    CHECK(group_law_defect(sym, f, 0.3, -0.3) <= 1e-12);
    CHECK(group_law_defect(sym, f, 1.7, 2.4) <= 1e-12);
  }
  CHECK_THROWS_AS(group_law_defect(schrodinger, Field(g), 0.1, 0.2), std::invalid_argument);

  const Field r = random_field(g, 17, true, 500);
  for (double t : {0.01, 0.9, -3.3}) CHECK(imag_fraction(apply_group(fifth_order, r, t)) <= 1e-12);
}
