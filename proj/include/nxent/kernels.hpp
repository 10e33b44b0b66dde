#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference
// implementation and, on x86-64, an AVX2+FMA variant. The variant is chosen
// once at runtime from CPUID; NXENT_SIMD=scalar|avx2 overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace nxent::kernels {

enum class Isa { Scalar, Avx2 };

/// |x| above which exp(-x^2/2) leaves the normal double range; the table
/// kernels below require every abscissa to stay inside it.
inline constexpr double kFastHermiteRange = 35.0;

struct KernelTable {
  Isa isa;

  /// out[n * xs.size() + j] = phi_n(xs[j]) for n = 0..nmax.
  void (*hermite_table)(std::span<const double> xs, int nmax, std::span<double> out);

  /// out[j] = sum_n c[n] phi_n(xs[j]) with c split into real/imag parts.
  void (*hermite_expand)(std::span<const double> xs, std::span<const double> c_re,
                         std::span<const double> c_im, std::span<double> out_re,
                         std::span<double> out_im);

  /// out[j] = sum_m g[m] exp(-i ks[j] (z0 + m h)).
  void (*osc_sum)(std::span<const double> g_re, std::span<const double> g_im, double z0,
                  double h, std::span<const double> ks, std::span<double> out_re,
                  std::span<double> out_im);

  /// w[i] += weight * (re[i]^2 + im[i]^2).
  void (*accumulate_abs2)(double weight, std::span<const double> re,
                          std::span<const double> im, std::span<double> w);
};

const KernelTable& scalar_table();

/// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// Table selected for this process (CPU detection plus NXENT_SIMD).
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace nxent::kernels
