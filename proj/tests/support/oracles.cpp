#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/laguerre.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using boost::multiprecision::cpp_int;
using big = boost::multiprecision::cpp_bin_float_100;

double hermite_exact(int n, double x) {
  cpp_int factorial_n = 1;
  for (int i = 2; i <= n; ++i) factorial_n *= i;
  big h = 0;
  const big two_x = 2 * big(x);
  for (int m = 0; 2 * m <= n; ++m) {
    cpp_int fm = 1, fr = 1;
    for (int i = 2; i <= m; ++i) fm *= i;
    for (int i = 2; i <= n - 2 * m; ++i) fr *= i;
    const cpp_int coeff = factorial_n / (fm * fr);
    big term = big(coeff) * pow(two_x, n - 2 * m);
    h += (m % 2 == 0) ? term : -term;
  }
  const big pi = boost::math::constants::pi<big>();
  const big norm = sqrt(sqrt(pi) * pow(big(2), n) * big(factorial_n));
  const big value = exp(-big(x) * big(x) / 2) * h / norm;
  return static_cast<double>(value);
}

GaussRule gauss_legendre(int n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = 0;
      for (int j = 1; j <= n; ++j) {
        const long double p2 = p1;
        p1 = p0;
        p0 = ((2 * j - 1) * z * p1 - (j - 1) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      const long double step = p0 / dp;
      z -= step;
      if (std::fabs(static_cast<double>(step)) < 1e-19) break;
    }
    rule.x[i] = -static_cast<double>(z);
    rule.x[n - 1 - i] = static_cast<double>(z);
    const double w = static_cast<double>(2 / ((1 - z * z) * dp * dp));
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

cplx transform_gl(int n, int n0, double xi, double k, int panels, int nodes) {
  static thread_local int cached_nodes = 0;
  static thread_local GaussRule rule;
  if (cached_nodes != nodes) {
    rule = gauss_legendre(nodes);
    cached_nodes = nodes;
  }
  const double lo = 0.5 * xi - 18.0, width = 36.0 / panels;
  cplx sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (int i = 0; i < nodes; ++i) {
      const double x = a + 0.5 * width * (rule.x[i] + 1.0);
      const double f = hermite_exact(n, x) * hermite_exact(n0, xi - x);
      sum += 0.5 * width * rule.w[i] * f * std::polar(1.0, -k * x);
    }
  }
  return sum * std::polar(1.0, 0.5 * k * xi) / std::sqrt(2.0 * std::numbers::pi);
}

cplx displaced_number(int n, int m, cplx beta) {
  using fixed = boost::multiprecision::cpp_bin_float_50;
  const fixed u = fixed(std::norm(beta));
  const fixed gauss = exp(-u / 2);
  auto ratio = [](int small, int large) {  // sqrt(small! / large!)
    fixed r = 1;
    for (int i = small + 1; i <= large; ++i) r /= sqrt(fixed(i));
    return r;
  };
  const int lo = std::min(n, m), d = std::abs(n - m);
  const fixed radial = ratio(lo, lo + d) * pow(sqrt(u), d) * gauss *
                       boost::math::laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(d), u);
  // beta^d for n >= m, (-conj beta)^d otherwise; only the phase is taken in double.
  const cplx unit = std::abs(beta) == 0.0 ? cplx(1.0) : beta / std::abs(beta);
  const cplx phase = n >= m ? std::pow(unit, d) : std::pow(-std::conj(unit), d);
  return static_cast<double>(radial) * phase;
}

cplx transform_closed(int n, int n0, double xi, double k) {
  const cplx beta = cplx(xi, -k) / std::numbers::sqrt2;
  const double sign = (n0 % 2 == 0) ? 1.0 : -1.0;
  return sign * displaced_number(n, n0, beta) / std::sqrt(2.0 * std::numbers::pi);
}

double poisson(double mean, int n) { return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0)); }

double vacuum_power_integral(double alpha) {
  return std::pow(2.0 * std::numbers::pi, 1.0 - alpha) / alpha;
}

}  // namespace oracle

namespace gen {

nxent::FockVector Gen::sparse_state(int truncation) {
  std::normal_distribution<double> normal;
  std::vector<nxent::cplx> c(truncation + 1);
  for (int n = 0; n <= truncation; ++n) {
    const double scale = std::exp(-0.3 * n);
    c[n] = scale * nxent::cplx(normal(rng_), normal(rng_));
  }
  return nxent::FockVector::normalized(std::move(c));
}

nxent::MixedState Gen::mixture(int truncation, int components) {
  std::vector<nxent::MixtureComponent> parts;
  std::vector<double> w(components);
  double total = 0.0;
  for (double& x : w) total += (x = uniform(0.1, 1.0));
  for (int i = 0; i < components; ++i) parts.push_back({w[i] / total, state(truncation)});
  return nxent::mixed(std::move(parts));
}

std::vector<double> Gen::distribution(std::size_t size) {
  std::vector<double> p(size);
  double total = 0.0;
  for (double& x : p) {
    x = uniform(0.0, 1.0) < 0.2 ? 0.0 : -std::log(uniform(1e-12, 1.0));
    total += x;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace gen
