#pragma once

#include "wbnet/simd/kernels.hpp"

namespace wbnet::simd::detail {

const KernelTable& scalar_table();
/// nullptr when the variant is not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace wbnet::simd::detail
