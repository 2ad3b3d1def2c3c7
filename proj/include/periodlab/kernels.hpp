#pragma once

// Data-parallel inner loops of the period routes. Every kernel has a scalar
// reference implementation; an AVX2+FMA variant is selected at runtime when the
// CPU supports it. Variants may differ in summation order only.

#include <cstddef>
#include <span>
#include <string_view>

namespace periodlab::kernels {

struct RsqrtSum {
    double sum;    // sum_i w_i / sqrt(y_i)
    double min_y;  // smallest radicand seen
};

struct KernelTable {
    std::string_view name;

    /// out[i] = sum_k coeffs[k] * x[i]^k.
    void (*horner)(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);

    /// Weighted sum of w_i / sqrt(y_i). Radicands <= 0 contribute nothing but
    /// are reported through min_y so the caller can reject the integrand.
    RsqrtSum (*weighted_rsqrt_sum)(std::span<const double> w, std::span<const double> y);

    /// signed_out[j] = sum_i w_i d_i^j and abs_out[j] = sum_i w_i |d_i|^j for
    /// j = 0 .. signed_out.size()-1.
    void (*power_moments)(std::span<const double> w, std::span<const double> d,
                          std::span<double> signed_out, std::span<double> abs_out);
};

const KernelTable& scalar_table() noexcept;

/// AVX2+FMA table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table() noexcept;

/// The table used by the library. AVX2 when available unless the environment
/// variable PERIODLAB_KERNELS is set to "scalar".
const KernelTable& active() noexcept;

}  // namespace periodlab::kernels
