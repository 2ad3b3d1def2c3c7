#include <cstdlib>
#include <string_view>

#include "periodlab/kernels.hpp"

namespace periodlab::kernels {

#if defined(PERIODLAB_HAVE_AVX2)
const KernelTable* avx2_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(PERIODLAB_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? avx2_table_impl() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("PERIODLAB_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
        const KernelTable* simd = avx2_table();
        return simd != nullptr ? simd : &scalar_table();
    }();
    return *chosen;
}

}  // namespace periodlab::kernels
