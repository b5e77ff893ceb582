#include <cstdlib>
#include <string_view>

#include "gframe/kernels.hpp"

namespace gframe::kernels {

#if defined(GFRAME_HAVE_AVX2)
namespace detail {
const KernelSet& avx2_set();
}
#endif

const KernelSet* avx2() {
#if defined(GFRAME_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("GFRAME_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelSet* fast = avx2()) return *fast;
    return scalar();
  }();
  return chosen;
}

}  // namespace gframe::kernels
