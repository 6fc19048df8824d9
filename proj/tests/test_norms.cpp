#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skdv/initial_data.hpp"
#include "skdv/norms.hpp"
#include "skdv/propagators.hpp"
#include "support.hpp"

using namespace skdv;
using skdv::testing::random_field;

TEST_CASE("Sobolev norm") {
  const Grid1D g(1024, 100.0);
  const Field gauss = sample(g, [](double x) { return cplx(std::exp(-x * x)); });
  SUBCASE("s = 0 is the L2 norm") { CHECK(sobolev_norm(gauss, 0.0) == doctest::Approx(l2_norm(gauss)).epsilon(1e-12)); }
  SUBCASE("single mode") {
    const double xi = g.xi(7);
    const Field m = sample(g, [&](double x) { return std::polar(1.0, xi * x); });
    CHECK(sobolev_norm(m, 1.3) == doctest::Approx(std::pow(1.0 + xi, 1.3) * l2_norm(m)).epsilon(1e-12));
  }
  SUBCASE("Gaussian at s = 1 against quadrature of the continuum transform") {
    // |g^(xi)|^2 = exp(-xi^2 / 2) / 2 for the unitary transform of exp(-x^2).
    // The weight (1 + |xi|)^2 has a kink at 0, so the lattice sum carries an
    // O((2 pi / L)^2) error; a long box brings it under 1e-6.
    const Grid1D wide(16384, 2048.0);
    const Field gauss = sample(wide, [](double x) { return cplx(std::exp(-x * x)); });
    auto integrand = [](double xi) { return (1 + std::abs(xi)) * (1 + std::abs(xi)) * 0.5 * std::exp(-xi * xi / 2); };
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -40.0, 40.0, 15, 1e-14);
    CHECK(quad == doctest::Approx(std::sqrt(2 * std::numbers::pi) + 2).epsilon(1e-12));
    CHECK(std::abs(sobolev_norm(gauss, 1.0) - std::sqrt(quad)) <= 1e-6);
  }
  SUBCASE("monotone in s") {
    const Field f = random_field(g, 8, false, 300);
    double prev = 0.0;
    for (double s = 0.0; s <= 3.0; s += 0.25) {
      const double n = sobolev_norm(f, s);
      CHECK(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("Holder seminorm") {
  const Grid1D g(2048, 100.0);
  SUBCASE("constant") {
    const Field c = sample(g, [](double) { return cplx(3.0); });
    CHECK(holder_seminorm(c, 0, 0.5, 256) == 0.0);
    CHECK(holder_seminorm(c, 1, 1.0, 256) <= 1e-12);
  }
  SUBCASE("Lipschitz constant of a hat") {
    const Field hat = sample(g, [](double x) { return cplx(std::max(0.0, 5.0 - std::abs(x))); }, true);
    CHECK(holder_seminorm(hat, 0, 1.0, default_holder_window(g)) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("exact scaling") {
    const Field f = random_field(g, 21, false, 200);
    const cplx c(-2.0, 1.5);
    for (int k : {0, 1})
      CHECK(holder_seminorm(c * f, k, 0.7, 64) == doctest::Approx(std::abs(c) * holder_seminorm(f, k, 0.7, 64)).epsilon(1e-13));
  }
  SUBCASE("kink diverges under refinement, a Gaussian does not") {
    std::vector<double> kink, smooth;
    for (std::size_t n : {2048u, 4096u, 8192u}) {
      const Grid1D h(n, 100.0);
      kink.push_back(holder_seminorm(kink_profile(h), 1, 1.0, default_holder_window(h)));
      smooth.push_back(holder_seminorm(sample(h, [](double x) { return cplx(std::exp(-x * x)); }, true), 1, 1.0,
                                       default_holder_window(h)));
    }
    CHECK(kink[1] / kink[0] > 1.8);
    CHECK(kink[2] / kink[1] > 1.8);
    CHECK(std::abs(smooth[2] / smooth[1] - 1.0) < 1e-3);
    const HolderProbe p = holder_probe(kink_profile(Grid1D(4096, 100.0)), 1, 1.0, 512);
    CHECK(std::abs(p.x) <= 5 * 100.0 / 4096);
  }
  SUBCASE("embedding: a kink is uniformly 1/2-Holder") {
    std::vector<double> v;
    for (std::size_t n : {2048u, 4096u, 8192u}) {
      const Grid1D h(n, 100.0);
      v.push_back(holder_seminorm(kink_profile(h), 0, 0.5, default_holder_window(h)));
    }
    CHECK(v[2] / v[0] < 1.05);
  }
  SUBCASE("argument checks") {
    const Field f(g);
    CHECK_THROWS_AS(holder_seminorm(f, 2, 0.5, 8), std::invalid_argument);
    CHECK_THROWS_AS(holder_seminorm(f, 0, 1.5, 8), std::invalid_argument);
    CHECK_THROWS_AS(holder_seminorm(f, 0, 0.5, 0), std::invalid_argument);
  }
}

namespace {

SpaceTimeField windowed_free(const Field& u0, PropagatorSymbol sym, std::size_t n_times, double half_span) {
  const double dt = 2 * half_span / static_cast<double>(n_times);
  SpaceTimeField w(u0.grid, -half_span, dt, n_times, sym);
  for (std::size_t m = 0; m < n_times; ++m) {
    const double t = w.time(m);
    const Field s = as_physical(apply_group(sym, u0, t));
    for (std::size_t j = 0; j < u0.size(); ++j) w.at(m, j) = bump_eta(t) * s[j];
  }
  return w;
}

}  // namespace

TEST_CASE("Bourgain norm") {
  SUBCASE("unit weights give the space-time L2 norm") {
    const Grid1D g(64, 10.0);
    SpaceTimeField w(g, 0.0, 0.1, 16, schrodinger);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    double sum = 0.0;
    for (auto& c : w.samples) {
      c = cplx(n(rng), n(rng));
      sum += std::norm(c);
    }
    // Random samples are not small at the lattice ends, so compare through a
    // windowed copy.
    for (std::size_t m = 0; m < 16; ++m)
      for (std::size_t j = 0; j < 64; ++j) {
        const double e = (m == 0 || m == 15) ? 0.0 : 1.0;
        sum -= (1 - e) * std::norm(w.at(m, j));
        w.at(m, j) *= e;
      }
    CHECK(bourgain_norm(w, 0.0, 0.0) == doctest::Approx(std::sqrt(sum * g.spacing() * 0.1)).epsilon(1e-12));
  }
  SUBCASE("a free mode concentrates on its characteristic") {
    const Grid1D g(64, 2 * std::numbers::pi * 8);  // xi_k = k / 8
    const std::size_t k = 12;
    const Field mode = sample(g, [&](double x) { return std::polar(1.0, g.xi(k) * x); });
    const SpaceTimeField w = windowed_free(mode, schrodinger, 128, 8.0);
    const auto spec = space_time_spectrum(w);
    std::size_t best = 0;
    for (std::size_t m = 0; m < 128; ++m)
      if (std::abs(spec[m * 64 + k]) > std::abs(spec[best * 64 + k])) best = m;
    const double dtau = w.tau(1) - w.tau(0);
    CHECK(std::abs(w.tau(best) + g.xi(k) * g.xi(k)) <= 0.5 * std::abs(dtau) + 1e-12);
  }
  SUBCASE("free evolution: norm over data norm is stable") {
    const Grid1D g(1024, 512.0);
    BlowupParams p;
    p.theta = 0.5;
    const double s = 1.0, b = 0.49;
    std::vector<Field> data{sample(g, [](double x) { return cplx(std::exp(-x * x / 4)); }), make_u0(p, g),
                            random_field(g, 5, false, 200)};
    std::vector<double> ratio;
    for (const auto& u0 : data)
      ratio.push_back(bourgain_norm(windowed_free(u0, schrodinger, 64, 1.25), s, b) / sobolev_norm(u0, s));
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    CHECK(*hi / *lo < 1.10);
  }
  SUBCASE("signal at the lattice ends is rejected") {
    const Grid1D g(32, 10.0);
    SpaceTimeField w(g, 0.0, 0.1, 8, fifth_order);
    for (auto& c : w.samples) c = 1.0;
    CHECK_THROWS_AS(bourgain_norm(w, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SpaceTimeField(g, 0.0, 0.1, 12, schrodinger), std::invalid_argument);
  }
}

TEST_CASE("tail regularity") {
  SUBCASE("kink profile") {
    const Grid1D g(8192, 100.0);
    CHECK(tail_regularity(kink_profile(g), 4.0, g.xi_max() / 2) == doctest::Approx(1.5).epsilon(0.1 / 1.5));
  }
  SUBCASE("blow-up datum") {
    const Grid1D g(8192, 512.0);
    BlowupParams p;
    p.theta = 0.5;
    CHECK(tail_regularity(make_u0(p, g), 4.0, g.xi_max() / 2) == doctest::Approx(2.0).epsilon(0.15 / 2));
  }
  SUBCASE("errors") {
    const Grid1D g(256, 50.0);
    const Field band_limited = random_field(g, 2, false, 10);  // |xi| <= 1.26
    CHECK_THROWS_AS(tail_regularity(band_limited, 4.0, 15.0), std::invalid_argument);
    CHECK_THROWS_AS(tail_regularity(kink_profile(g), 4.0, 6.0), std::invalid_argument);
    CHECK_THROWS_AS(tail_regularity(kink_profile(g), 4.0, 100.0), std::invalid_argument);
  }
}

TEST_CASE("regularity budget") {
  CHECK(budget_violations(Exponents{0.0, 0.49, 0.55, 0.05, 0.5}).empty());
  CHECK_NOTHROW(RegularityBudget(Exponents{0.0, 0.49, 0.55, 0.05, 0.5}));
  CHECK_THROWS_AS(RegularityBudget(Exponents{0.0, 0.45, 0.5, 0.0, 0.0}), BudgetError);
  CHECK_FALSE(budget_violations(Exponents{0.0, 0.49, 0.5, 0.0, 0.0}).empty());
  CHECK_FALSE(budget_violations(Exponents{-0.1, 0.49, 0.55, 0.05, 0.5}).empty());
}
