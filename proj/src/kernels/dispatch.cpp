#include <cstdlib>
#include <string_view>

#include "cim/kernels.hpp"

namespace cim::kernels {

#if defined(CIM_HAVE_AVX2)
const KernelSet* avx2_impl();
#endif
#if defined(CIM_HAVE_NEON)
const KernelSet* neon_impl();
#endif

const KernelSet* avx2() {
#if defined(CIM_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon() {
#if defined(CIM_HAVE_NEON)
  return neon_impl();
#else
  return nullptr;
#endif
}

std::vector<const KernelSet*> available() {
  std::vector<const KernelSet*> out{&scalar()};
  if (const KernelSet* k = avx2()) out.push_back(k);
  if (const KernelSet* k = neon()) out.push_back(k);
  return out;
}

const KernelSet& active() {
  static const KernelSet& chosen = [&]() -> const KernelSet& {
    const char* env = std::getenv("CIM_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelSet* k = avx2()) return *k;
    if (const KernelSet* k = neon()) return *k;
    return scalar();
  }();
  return chosen;
}

}  // namespace cim::kernels
