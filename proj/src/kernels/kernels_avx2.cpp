// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after the CPUID check in dispatch.cpp.

#include <immintrin.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kernels_internal.hpp"
#include "nxent/kernels.hpp"

namespace nxent::kernels {
namespace {

const double kPhi0Scale = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void hermite_table_avx2(std::span<const double> xs, int nmax, std::span<double> out) {
  const std::size_t cols = xs.size();
  const std::size_t body = cols & ~std::size_t{3};
  for (std::size_t j = 0; j < cols; ++j) out[j] = kPhi0Scale * std::exp(-0.5 * xs[j] * xs[j]);
  if (nmax >= 1) {
    const __m256d r2 = _mm256_set1_pd(std::numbers::sqrt2);
    std::size_t j = 0;
    for (; j < body; j += 4) {
      __m256d x = _mm256_loadu_pd(xs.data() + j);
      __m256d p0 = _mm256_loadu_pd(out.data() + j);
      _mm256_storeu_pd(out.data() + cols + j, _mm256_mul_pd(_mm256_mul_pd(r2, x), p0));
    }
    for (; j < cols; ++j) out[cols + j] = std::numbers::sqrt2 * xs[j] * out[j];
  }
  for (int n = 2; n <= nmax; ++n) {
    const double a = std::sqrt(2.0 / n);
    const double b = std::sqrt((n - 1.0) / n);
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const double* p1 = out.data() + (n - 1) * cols;
    const double* p2 = out.data() + (n - 2) * cols;
    double* cur = out.data() + n * cols;
    std::size_t j = 0;
    for (; j < body; j += 4) {
      __m256d xa = _mm256_mul_pd(_mm256_loadu_pd(xs.data() + j), va);
      __m256d bp = _mm256_mul_pd(vb, _mm256_loadu_pd(p2 + j));
      _mm256_storeu_pd(cur + j, _mm256_fmsub_pd(xa, _mm256_loadu_pd(p1 + j), bp));
    }
    for (; j < cols; ++j) cur[j] = xs[j] * a * p1[j] - b * p2[j];
  }
}

void hermite_expand_avx2(std::span<const double> xs, std::span<const double> c_re,
                         std::span<const double> c_im, std::span<double> out_re,
                         std::span<double> out_im) {
  const int nmax = static_cast<int>(c_re.size()) - 1;
  const std::size_t body = xs.size() & ~std::size_t{3};
  std::vector<double> a(nmax + 1, 0.0), b(nmax + 1, 0.0);
  for (int n = 2; n <= nmax; ++n) {
    a[n] = std::sqrt(2.0 / n);
    b[n] = std::sqrt((n - 1.0) / n);
  }
  alignas(32) double phi0[4];
  const __m256d r2 = _mm256_set1_pd(std::numbers::sqrt2);
  for (std::size_t j = 0; j < body; j += 4) {
    for (int l = 0; l < 4; ++l) phi0[l] = kPhi0Scale * std::exp(-0.5 * xs[j + l] * xs[j + l]);
    const __m256d x = _mm256_loadu_pd(xs.data() + j);
    __m256d p2 = _mm256_load_pd(phi0);
    __m256d re = _mm256_mul_pd(_mm256_set1_pd(c_re[0]), p2);
    __m256d im = _mm256_mul_pd(_mm256_set1_pd(c_im[0]), p2);
    if (nmax >= 1) {
      __m256d p1 = _mm256_mul_pd(_mm256_mul_pd(r2, x), p2);
      re = _mm256_fmadd_pd(_mm256_set1_pd(c_re[1]), p1, re);
      im = _mm256_fmadd_pd(_mm256_set1_pd(c_im[1]), p1, im);
      for (int n = 2; n <= nmax; ++n) {
        __m256d xa = _mm256_mul_pd(x, _mm256_set1_pd(a[n]));
        __m256d p = _mm256_fmsub_pd(xa, p1, _mm256_mul_pd(_mm256_set1_pd(b[n]), p2));
        re = _mm256_fmadd_pd(_mm256_set1_pd(c_re[n]), p, re);
        im = _mm256_fmadd_pd(_mm256_set1_pd(c_im[n]), p, im);
        p2 = p1;
        p1 = p;
      }
    }
    _mm256_storeu_pd(out_re.data() + j, re);
    _mm256_storeu_pd(out_im.data() + j, im);
  }
  if (body < xs.size()) {
    scalar_table().hermite_expand(xs.subspan(body), c_re, c_im, out_re.subspan(body),
                                  out_im.subspan(body));
  }
}

// Two independent chains of four lanes each; lane l of chain c handles the
// points m = 8t + 4c + l, and every chain advances by exp(-i k 8h) per step.
void osc_sum_avx2(std::span<const double> g_re, std::span<const double> g_im, double z0,
                  double h, std::span<const double> ks, std::span<double> out_re,
                  std::span<double> out_im) {
  const std::size_t count = g_re.size();
  const std::size_t body = count & ~std::size_t{7};
  alignas(32) double lane_re[8], lane_im[8];
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const double k = ks[j];
    const double sr = std::cos(k * h), si = -std::sin(k * h);
    lane_re[0] = std::cos(k * z0);
    lane_im[0] = -std::sin(k * z0);
    for (int l = 1; l < 8; ++l) {
      lane_re[l] = lane_re[l - 1] * sr - lane_im[l - 1] * si;
      lane_im[l] = lane_re[l - 1] * si + lane_im[l - 1] * sr;
    }
    // exp(-i k 8h) by repeated squaring.
    double s8r = sr, s8i = si;
    for (int q = 0; q < 3; ++q) {
      const double t = s8r * s8r - s8i * s8i;
      s8i = 2.0 * s8r * s8i;
      s8r = t;
    }
    const __m256d step_re = _mm256_set1_pd(s8r);
    const __m256d step_im = _mm256_set1_pd(s8i);
    __m256d pa_re = _mm256_load_pd(lane_re), pa_im = _mm256_load_pd(lane_im);
    __m256d pb_re = _mm256_load_pd(lane_re + 4), pb_im = _mm256_load_pd(lane_im + 4);
    __m256d aa_re = _mm256_setzero_pd(), aa_im = _mm256_setzero_pd();
    __m256d ab_re = _mm256_setzero_pd(), ab_im = _mm256_setzero_pd();
    for (std::size_t m = 0; m < body; m += 8) {
      const __m256d ga_re = _mm256_loadu_pd(g_re.data() + m);
      const __m256d ga_im = _mm256_loadu_pd(g_im.data() + m);
      const __m256d gb_re = _mm256_loadu_pd(g_re.data() + m + 4);
      const __m256d gb_im = _mm256_loadu_pd(g_im.data() + m + 4);
      aa_re = _mm256_fnmadd_pd(ga_im, pa_im, _mm256_fmadd_pd(ga_re, pa_re, aa_re));
      aa_im = _mm256_fmadd_pd(ga_im, pa_re, _mm256_fmadd_pd(ga_re, pa_im, aa_im));
      ab_re = _mm256_fnmadd_pd(gb_im, pb_im, _mm256_fmadd_pd(gb_re, pb_re, ab_re));
      ab_im = _mm256_fmadd_pd(gb_im, pb_re, _mm256_fmadd_pd(gb_re, pb_im, ab_im));
      const __m256d na_re = _mm256_fmsub_pd(pa_re, step_re, _mm256_mul_pd(pa_im, step_im));
      const __m256d na_im = _mm256_fmadd_pd(pa_re, step_im, _mm256_mul_pd(pa_im, step_re));
      const __m256d nb_re = _mm256_fmsub_pd(pb_re, step_re, _mm256_mul_pd(pb_im, step_im));
      const __m256d nb_im = _mm256_fmadd_pd(pb_re, step_im, _mm256_mul_pd(pb_im, step_re));
      pa_re = na_re;
      pa_im = na_im;
      pb_re = nb_re;
      pb_im = nb_im;
    }
    double acc_re = hsum(_mm256_add_pd(aa_re, ab_re));
    double acc_im = hsum(_mm256_add_pd(aa_im, ab_im));
    // Lane 0 of chain a now holds the phasor of point `body`.
    double pr = _mm256_cvtsd_f64(pa_re), pi = _mm256_cvtsd_f64(pa_im);
    for (std::size_t m = body; m < count; ++m) {
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

void accumulate_abs2_avx2(double weight, std::span<const double> re, std::span<const double> im,
                          std::span<double> w) {
  const std::size_t body = w.size() & ~std::size_t{3};
  const __m256d vw = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i < body; i += 4) {
    const __m256d r = _mm256_loadu_pd(re.data() + i);
    const __m256d q = _mm256_loadu_pd(im.data() + i);
    const __m256d m2 = _mm256_fmadd_pd(r, r, _mm256_mul_pd(q, q));
    _mm256_storeu_pd(w.data() + i, _mm256_fmadd_pd(vw, m2, _mm256_loadu_pd(w.data() + i)));
  }
  for (; i < w.size(); ++i) w[i] += weight * (re[i] * re[i] + im[i] * im[i]);
}

const KernelTable kAvx2{Isa::Avx2, hermite_table_avx2, hermite_expand_avx2, osc_sum_avx2,
                        accumulate_abs2_avx2};

}  // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2; }

}  // namespace nxent::kernels
