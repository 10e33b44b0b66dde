#include <cmath>
#include <numbers>
#include <vector>

#include "nxent/kernels.hpp"

namespace nxent::kernels {
namespace {

const double kPhi0Scale = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

void hermite_table_scalar(std::span<const double> xs, int nmax, std::span<double> out) {
  const std::size_t cols = xs.size();
  for (std::size_t j = 0; j < cols; ++j) out[j] = kPhi0Scale * std::exp(-0.5 * xs[j] * xs[j]);
  if (nmax >= 1) {
    for (std::size_t j = 0; j < cols; ++j) out[cols + j] = std::numbers::sqrt2 * xs[j] * out[j];
  }
  for (int n = 2; n <= nmax; ++n) {
    const double a = std::sqrt(2.0 / n);
    const double b = std::sqrt((n - 1.0) / n);
    const double* p1 = out.data() + (n - 1) * cols;
    const double* p2 = out.data() + (n - 2) * cols;
    double* cur = out.data() + n * cols;
    for (std::size_t j = 0; j < cols; ++j) cur[j] = xs[j] * a * p1[j] - b * p2[j];
  }
}

void hermite_expand_scalar(std::span<const double> xs, std::span<const double> c_re,
                           std::span<const double> c_im, std::span<double> out_re,
                           std::span<double> out_im) {
  const int nmax = static_cast<int>(c_re.size()) - 1;
  std::vector<double> a(nmax + 1, 0.0), b(nmax + 1, 0.0);
  for (int n = 2; n <= nmax; ++n) {
    a[n] = std::sqrt(2.0 / n);
    b[n] = std::sqrt((n - 1.0) / n);
  }
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    double p2 = kPhi0Scale * std::exp(-0.5 * x * x);
    double re = c_re[0] * p2;
    double im = c_im[0] * p2;
    if (nmax >= 1) {
      double p1 = std::numbers::sqrt2 * x * p2;
      re += c_re[1] * p1;
      im += c_im[1] * p1;
      for (int n = 2; n <= nmax; ++n) {
        const double p = x * a[n] * p1 - b[n] * p2;
        re += c_re[n] * p;
        im += c_im[n] * p;
        p2 = p1;
        p1 = p;
      }
    }
    out_re[j] = re;
    out_im[j] = im;
  }
}

void osc_sum_scalar(std::span<const double> g_re, std::span<const double> g_im, double z0,
                    double h, std::span<const double> ks, std::span<double> out_re,
                    std::span<double> out_im) {
  const std::size_t count = g_re.size();
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const double k = ks[j];
    double pr = std::cos(k * z0), pi = -std::sin(k * z0);
    const double sr = std::cos(k * h), si = -std::sin(k * h);
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t m = 0; m < count; ++m) {
      acc_re += g_re[m] * pr - g_im[m] * pi;
      acc_im += g_re[m] * pi + g_im[m] * pr;
      const double t = pr * sr - pi * si;
      pi = pr * si + pi * sr;
      pr = t;
    }
    out_re[j] = acc_re;
    out_im[j] = acc_im;
  }
}

void accumulate_abs2_scalar(double weight, std::span<const double> re,
                            std::span<const double> im, std::span<double> w) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += weight * (re[i] * re[i] + im[i] * im[i]);
}

const KernelTable kScalar{Isa::Scalar, hermite_table_scalar, hermite_expand_scalar,
                          osc_sum_scalar, accumulate_abs2_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace nxent::kernels
