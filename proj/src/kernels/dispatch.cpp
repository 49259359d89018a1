#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace qd::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{Isa::scalar, detail::caxpy_scalar, detail::cdotc_scalar,
                                     detail::norm_sq_scalar, detail::rot2_scalar};
  return table;
}

const KernelTable* avx2_table() noexcept {
#if defined(QD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static constexpr KernelTable table{Isa::avx2, detail::caxpy_avx2, detail::cdotc_avx2,
                                     detail::norm_sq_avx2, detail::rot2_avx2};
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("QD_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace qd::kernels
