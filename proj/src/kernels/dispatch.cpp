#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "nxent/kernels.hpp"

namespace nxent::kernels {

const KernelTable* avx2_table() {
#if defined(NXENT_BUILD_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("NXENT_SIMD");
    const std::string_view want = env ? env : "auto";
    if (want == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace nxent::kernels
