#pragma once

#include "kpiforge/simd/kernels.hpp"

namespace kpiforge::simd::detail {

extern const KernelTable kScalarTable;

#if defined(KPIFORGE_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

#if defined(KPIFORGE_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace kpiforge::simd::detail
