#pragma once

#include "nxent/kernels.hpp"

namespace nxent::kernels {

// Defined only when the AVX2 translation unit is part of the build.
const KernelTable& avx2_table_unchecked();

}  // namespace nxent::kernels
