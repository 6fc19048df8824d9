#include "skdv/estimates.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace skdv {

namespace {

constexpr double slack = 1e-12;  // see budget_violations
bool lt(double x, double y) { return x < y - slack; }
bool le(double x, double y) { return x <= y + slack; }

std::string rule(const char* text, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << text << " (" << lhs << " vs " << rhs << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Whole-line integral of the calculus inequality.

double core_and_tails(double beta, double gamma, double a1, double a2) {
  const double lo = std::min(a1, a2), hi = std::max(a1, a2);
  // Exponent attached to the lower / upper kink.
  const double p_lo = a1 <= a2 ? beta : gamma;
  const double p_hi = a1 <= a2 ? gamma : beta;
  const double gap = hi - lo;
  const double tol = 1e-10;
  double err = 0.0, l1 = 0.0, total = 0.0;

  // Half-lines, parametrised by the distance s to the nearest kink.
  static boost::math::quadrature::exp_sinh<double> half_line;
  const double inf = std::numeric_limits<double>::infinity();
  auto right = [&](double s) { return std::pow(1.0 + s, -p_hi) * std::pow(1.0 + s + gap, -p_lo); };
  auto left = [&](double s) { return std::pow(1.0 + s, -p_lo) * std::pow(1.0 + s + gap, -p_hi); };
  for (int side = 0; side < 2; ++side) {
    const double v = side == 0 ? half_line.integrate(right, 0.0, inf, tol, &err, &l1)
                               : half_line.integrate(left, 0.0, inf, tol, &err, &l1);
    if (!(err <= 1e-6 * l1) || !std::isfinite(v))
      throw QuadratureError("calculus_integral: half-line quadrature did not converge");
    total += v;
  }

  if (gap > 0.0) {
    static boost::math::quadrature::tanh_sinh<double> interval;
    // s in [0, gap] measured from the lower kink.
    auto mid = [&](double s) { return std::pow(1.0 + s, -p_lo) * std::pow(1.0 + (gap - s), -p_hi); };
    const double v = interval.integrate(mid, 0.0, gap, tol, &err, &l1);
    if (!(err <= 1e-6 * l1) || !std::isfinite(v))
      throw QuadratureError("calculus_integral: interval quadrature did not converge");
    total += v;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre on panels graded toward the integrand's peaks.

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x.push_back(z);
    r.w.push_back(w);
    if (z != 0.0) {
      r.x.push_back(-z);
      r.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(r)).first->second;
}

template <class F>
double panel(const F& f, const Rule& r, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return acc * h;
}

struct Break {
  double at;
  double scale;  // width of the feature sitting at this point
};

// Integral over [p, q] graded geometrically toward both ends.
template <class F>
double graded_segment(const F& f, const Rule& r, const Break& p, const Break& q, std::size_t& evals) {
  const double mid = 0.5 * (p.at + q.at);
  double acc = 0.0;
  for (int side = 0; side < 2; ++side) {
    const double end = side == 0 ? p.at : q.at;
    const double len = std::abs(mid - end);
    if (len == 0.0) continue;
    const double floor = 0.1 * (side == 0 ? p.scale : q.scale);
    const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(len / floor))), 0, 80);
    const double dir = side == 0 ? 1.0 : -1.0;
    double inner = len * std::ldexp(1.0, -levels);
    acc += std::abs(panel(f, r, end, end + dir * inner));
    for (int k = levels; k > 0; --k) {
      const double outer = 2.0 * inner;
      acc += std::abs(panel(f, r, end + dir * inner, end + dir * outer));
      inner = outer;
    }
    evals += r.x.size() * static_cast<std::size_t>(levels + 1);
  }
  return acc;
}

// Integral over [b.at, +inf) (dir = 1) or (-inf, b.at] (dir = -1), panels
// doubling away from the breakpoint until the contributions die out.
template <class F>
double graded_tail(const F& f, const Rule& r, const Break& b, double dir, std::size_t& evals) {
  double inner = 0.1 * b.scale;
  double acc = std::abs(panel(f, r, b.at, b.at + dir * inner));
  int quiet = 0;
  for (int k = 0; k < 400 && quiet < 4; ++k) {
    const double outer = 2.0 * inner;
    const double part = std::abs(panel(f, r, b.at + dir * inner, b.at + dir * outer));
    acc += part;
    quiet = (part < 1e-16 * acc && outer > 10.0 * (1.0 + std::abs(b.at))) ? quiet + 1 : 0;
    inner = outer;
    evals += r.x.size();
  }
  if (quiet < 4) throw QuadratureError("kernel quadrature: tail did not decay");
  return acc;
}

template <class F>
double integrate_with_breaks(const F& f, std::vector<Break> br, int n, std::size_t& evals) {
  std::sort(br.begin(), br.end(), [](const Break& x, const Break& y) { return x.at < y.at; });
  std::vector<Break> merged;
  for (const auto& b : br) {
    if (!merged.empty() && std::abs(b.at - merged.back().at) <= 1e-13 * (1.0 + std::abs(b.at))) {
      merged.back().scale = std::min(merged.back().scale, b.scale);
      continue;
    }
    merged.push_back(b);
  }
  const Rule& r = gauss_legendre(n);
  double acc = graded_tail(f, r, merged.front(), -1.0, evals) + graded_tail(f, r, merged.back(), 1.0, evals);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) acc += graded_segment(f, r, merged[i], merged[i + 1], evals);
  return acc;
}

// Breakpoints for a weight <d(s)>^{-p}: the real roots of d and the real
// parts of the complex roots of d and d -+ 1, where <d> has its nearest
// singularities. `coeffs` lists d in increasing degree.
void add_polynomial_breaks(const std::vector<double>& coeffs, std::vector<Break>& out) {
  const auto eval = [&](double s, int deriv) {
    double acc = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= deriv; --k) {
      double c = coeffs[k];
      for (int j = 0; j < deriv; ++j) c *= (k - j);
      acc = acc * s + c;
    }
    return acc;
  };
  const auto scale_at = [&](double s) {
    return 1.0 / (1.0 + std::abs(eval(s, 1)) + std::sqrt(std::abs(eval(s, 2))));
  };
  for (double shift : {0.0, 1.0, -1.0}) {
    Eigen::VectorXd c(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k];
    c[0] += shift;
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
    for (const auto& z : solver.roots()) {
      double s = z.real();
      if (shift == 0.0 && std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(s))) {
        for (int it = 0; it < 4; ++it) {  // polish the kink location
          const double d1 = eval(s, 1);
          if (d1 == 0.0) break;
          s -= eval(s, 0) / d1;
        }
      }
      if (std::isfinite(s)) out.push_back({s, scale_at(s)});
    }
  }
}

double pw(double x, double p) { return std::pow(x, p); }

}  // namespace

double calculus_integral(double beta, double gamma, double a1, double a2) {
  if (!std::isfinite(a1) || !std::isfinite(a2)) throw std::invalid_argument("calculus_integral: non-finite shift");
  if (!(beta + gamma > 1.0)) throw std::invalid_argument("calculus_integral: need beta + gamma > 1");
  return core_and_tails(beta, gamma, a1, a2);
}

double phi_beta(double beta, double a) {
  if (beta > 1.0 + slack) return 1.0;
  if (beta >= 1.0 - slack) return std::log(1.0 + japanese(a));
  return std::pow(japanese(a), 1.0 - beta);
}

double calculus_bound_ratio(double beta, double gamma, double a1, double a2) {
  if (!(beta >= gamma && gamma >= 0.0)) throw std::invalid_argument("calculus_bound_ratio: need beta >= gamma >= 0");
  if (!(beta + gamma > 1.0)) throw std::invalid_argument("calculus_bound_ratio: need beta + gamma > 1");
  const double a = a1 - a2;
  return calculus_integral(beta, gamma, a1, a2) / (phi_beta(beta, a) / std::pow(japanese(a), gamma));
}

void KernelQuery::validate() const {
  if (quad_points < 64) throw std::invalid_argument("kernel query: quad_points must be >= 64");
  if (!(xi_range > 0.0) || !std::isfinite(xi_range) || !(tau_range > 0.0) || !std::isfinite(tau_range))
    throw std::invalid_argument("kernel query: ranges must be positive and finite");
  for (double x : {a, beta, b})
    if (!std::isfinite(x)) throw std::invalid_argument("kernel query: exponents must be finite");
}

std::vector<std::string> schrodinger_kernel_violations(const KernelQuery& q) {
  std::vector<std::string> out;
  const double top = 2.5 * q.b - 0.625;
  if (!lt(9.0 / 20.0, q.b)) out.push_back(rule("9/20 < b", q.b, 0.45));
  if (!lt(q.b, 0.5)) out.push_back(rule("b < 1/2", q.b, 0.5));
  if (!lt(0.5, q.beta)) out.push_back(rule("1/2 < beta", q.beta, 0.5));
  if (!lt(q.beta, q.a)) out.push_back(rule("beta < a", q.beta, q.a));
  if (!le(q.a, top)) out.push_back(rule("a <= 5b/2 - 5/8", q.a, top));
  return out;
}

std::vector<std::string> kdv5_kernel_violations(const KernelQuery& q) {
  std::vector<std::string> out;
  if (!lt(3.0 / 8.0, q.b)) out.push_back(rule("3/8 < b", q.b, 0.375));
  if (!lt(q.b, 0.5)) out.push_back(rule("b < 1/2", q.b, 0.5));
  if (!lt(0.5, q.beta)) out.push_back(rule("1/2 < beta", q.beta, 0.5));
  if (!le(q.beta, 2.0 * q.b - 0.25)) out.push_back(rule("beta <= 2b - 1/4", q.beta, 2.0 * q.b - 0.25));
  if (!le(0.0, q.a)) out.push_back(rule("0 <= a", q.a, 0.0));
  if (!le(q.a, 5.0 * q.beta - 2.25)) out.push_back(rule("a <= 5 beta - 9/4", q.a, 5.0 * q.beta - 2.25));
  return out;
}

namespace {

void require(const KernelQuery& q, bool kdv5) {
  q.validate();
  if (q.override_admissibility) return;
  const auto bad = kdv5 ? kdv5_kernel_violations(q) : schrodinger_kernel_violations(q);
  if (bad.empty()) return;
  std::string msg = kdv5 ? "kdv5 kernel: exponents outside the admissible range:" : "schrodinger kernel: exponents outside the admissible range:";
  for (const auto& b : bad) msg += " [" + b + "]";
  throw InadmissibleExponents(msg);
}

// d(s) for the two kernels, increasing degree.
std::vector<double> resonance_schrodinger(double xi, double tau) {
  // tau + (xi - s)^5 + s^2
  const double x2 = xi * xi, x3 = x2 * xi, x4 = x3 * xi, x5 = x4 * xi;
  return {tau + x5, -5.0 * x4, 10.0 * x3 + 1.0, -10.0 * x2, 5.0 * xi, -1.0};
}

std::vector<double> resonance_kdv5(double xi, double tau) {
  // tau + s^2 + (xi - s)^2
  return {tau + xi * xi, -2.0 * xi, 2.0};
}

struct Reduced {
  double prefactor;
  std::vector<Break> breaks;
};

Reduced setup(const KernelQuery& q, double xi, double tau, bool kdv5) {
  Reduced r;
  if (kdv5) {
    const double x5 = xi * xi * xi * xi * xi;
    r.prefactor = xi * xi * pw(japanese(xi), 2.0 * q.a) / pw(japanese(tau + x5), 2.0 * q.b);
    add_polynomial_breaks(resonance_kdv5(xi, tau), r.breaks);
    r.breaks.push_back({xi, 1.0});
  } else {
    r.prefactor = pw(japanese(xi), 2.0 * q.a) / pw(japanese(tau + xi * xi), 2.0 * q.b);
    add_polynomial_breaks(resonance_schrodinger(xi, tau), r.breaks);
  }
  r.breaks.push_back({0.0, 1.0});
  return r;
}

double kernel_1d(const KernelQuery& q, double xi, double tau, bool kdv5, std::size_t& evals) {
  require(q, kdv5);
  const Reduced r = setup(q, xi, tau, kdv5);
  if (r.prefactor == 0.0) return 0.0;
  const double pd = 4.0 * q.b - 1.0, pb = 2.0 * q.beta;
  double integral;
  if (kdv5) {
    integral = integrate_with_breaks(
        [&](double s) {
          const double e = xi - s;
          const double d = tau + s * s + e * e;
          return 1.0 / (pw(japanese(e), pb) * pw(japanese(d), pd) * pw(japanese(s), pb));
        },
        r.breaks, q.quad_points, evals);
  } else {
    integral = integrate_with_breaks(
        [&](double s) {
          const double e = xi - s;
          const double d = tau + e * e * e * e * e + s * s;
          return 1.0 / (pw(japanese(d), pd) * pw(japanese(s), pb));
        },
        r.breaks, q.quad_points, evals);
  }
  return r.prefactor * integral;
}

double kernel_2d(const KernelQuery& q, double xi, double tau, bool kdv5) {
  require(q, kdv5);
  const Reduced r = setup(q, xi, tau, kdv5);
  if (r.prefactor == 0.0) return 0.0;
  const double pb = 2.0 * q.beta, tb = 2.0 * q.b;
  std::size_t evals = 0;
  const double integral = integrate_with_breaks(
      [&](double s) {
        const double e = xi - s;
        // tau1 runs against <tau1 + s^2>^{2b} <tau - tau1 + phase(e)>^{2b}.
        const double shift = kdv5 ? tau + e * e : tau + e * e * e * e * e;
        double w = calculus_integral(tb, tb, -s * s, shift) / pw(japanese(s), pb);
        if (kdv5) w /= pw(japanese(e), pb);
        return w;
      },
      r.breaks, q.quad_points, evals);
  return r.prefactor * integral;
}

KernelSup sweep(const KernelQuery& q, bool kdv5) {
  require(q, kdv5);
  KernelSup out;
  const auto lattice = kernel_lattice(q, kdv5);
  std::vector<double> values(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    values[i] = kernel_1d(q, lattice[i].xi, lattice[i].tau, kdv5, out.evaluations);
    if (values[i] > out.value) {
      out.value = values[i];
      out.xi = lattice[i].xi;
      out.tau = lattice[i].tau;
    }
  }
  std::vector<double> radii;
  for (double R = q.xi_range; R >= 1.0; R *= 0.5) radii.push_back(R);
  std::reverse(radii.begin(), radii.end());
  for (double R : radii) {
    double s = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i)
      if (std::abs(lattice[i].xi) <= R) s = std::max(s, values[i]);
    out.running.emplace_back(R, s);
  }
  if (out.running.size() >= 2) {
    const double prev = out.running[out.running.size() - 2].second;
    out.last_growth = prev > 0.0 ? out.running.back().second / prev - 1.0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

double schrodinger_kernel(const KernelQuery& q, double xi, double tau) {
  std::size_t evals = 0;
  return kernel_1d(q, xi, tau, false, evals);
}

double kdv5_kernel(const KernelQuery& q, double xi, double tau) {
  std::size_t evals = 0;
  return kernel_1d(q, xi, tau, true, evals);
}

double schrodinger_kernel_2d(const KernelQuery& q, double xi, double tau) { return kernel_2d(q, xi, tau, false); }
double kdv5_kernel_2d(const KernelQuery& q, double xi, double tau) { return kernel_2d(q, xi, tau, true); }

std::vector<LatticePoint> kernel_lattice(const KernelQuery& q, bool kdv5) {
  std::vector<LatticePoint> pts;
  const auto characteristic = [&](double xi) { return kdv5 ? -std::pow(xi, 5) : -xi * xi; };
  // Resonance of the other factor: tau where d(xi1) vanishes at the
  // cheapest xi1 (xi1 = 0 for the schrodinger kernel, xi1 = xi/2 for kdv5).
  const auto secondary = [&](double xi) { return kdv5 ? -0.5 * xi * xi : -std::pow(xi, 5); };

  // Low-frequency core.
  const double core = std::min(2.0, q.xi_range);
  for (int i = 0; i <= 32; ++i) {
    const double xi = -core + core * i / 16.0;
    for (int k = 0; k <= 32; ++k) pts.push_back({xi, -q.tau_range + q.tau_range * k / 16.0});
  }

  std::vector<double> xis;
  for (double base = 2.0; base < q.xi_range; base *= 2.0)
    for (int j = 0; j < 4; ++j) {
      const double xi = base * (1.0 + j / 4.0);
      if (xi < q.xi_range) xis.push_back(xi);
    }
  xis.push_back(q.xi_range);

  for (double m : xis)
    for (double xi : {m, -m}) {
      const double c = characteristic(xi);
      pts.push_back({xi, c});
      for (double off = 0.25; off <= 4.0 * std::abs(c) + 1.0; off *= 4.0) {
        pts.push_back({xi, c + off});
        pts.push_back({xi, c - off});
      }
      for (double theta : {-1.5, -1.25, -1.125, -0.875, -0.75, -0.5}) pts.push_back({xi, -theta * c});
      const double c2 = secondary(xi);
      for (double off : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0}) pts.push_back({xi, c2 + off});
    }
  return pts;
}

KernelSup schrodinger_kernel_sup(const KernelQuery& q) { return sweep(q, false); }
KernelSup kdv5_kernel_sup(const KernelQuery& q) { return sweep(q, true); }

std::string Admissibility::explanation() const {
  if (ok) return "all constraints hold";
  std::string s = "violated:";
  for (const auto& v : violated) s += " [" + v + "]";
  return s;
}

Admissibility admissible(const Exponents& e) {
  Admissibility a;
  a.violated = budget_violations(e);
  a.ok = a.violated.empty();
  return a;
}

}  // namespace skdv
