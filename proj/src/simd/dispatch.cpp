#include <cstdlib>
#include <string>

#include "kernel_variants.hpp"

namespace kpiforge::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() { return detail::kScalarTable; }

const KernelTable* avx2_kernels() {
#if defined(KPIFORGE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(KPIFORGE_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* t = avx2_kernels()) out.push_back(t);
  if (const auto* t = neon_kernels()) out.push_back(t);
  return out;
}

namespace {

const KernelTable& select_kernels() {
  const char* env = std::getenv("KPIFORGE_SIMD");
  const std::string want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" && avx2_kernels()) return *avx2_kernels();
  if (want == "neon" && neon_kernels()) return *neon_kernels();
  if (const auto* t = avx2_kernels()) return *t;
  if (const auto* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace kpiforge::simd
