#include <algorithm>
#include <cmath>
#include <limits>

#include "periodlab/kernels.hpp"

namespace periodlab::kernels {

namespace {

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x[i] + coeffs[k];
        out[i] = acc;
    }
}

RsqrtSum weighted_rsqrt_sum(std::span<const double> w, std::span<const double> y) {
    RsqrtSum r{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < y.size(); ++i) {
        r.min_y = std::min(r.min_y, y[i]);
        if (y[i] > 0.0) r.sum += w[i] / std::sqrt(y[i]);
    }
    return r;
}

void power_moments(std::span<const double> w, std::span<const double> d, std::span<double> signed_out,
                   std::span<double> abs_out) {
    std::fill(signed_out.begin(), signed_out.end(), 0.0);
    std::fill(abs_out.begin(), abs_out.end(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double p = w[i];
        double q = w[i];
        const double a = std::abs(d[i]);
        for (std::size_t j = 0; j < signed_out.size(); ++j) {
            signed_out[j] += p;
            abs_out[j] += q;
            p *= d[i];
            q *= a;
        }
    }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{"scalar", &horner, &weighted_rsqrt_sum, &power_moments};
    return table;
}

}  // namespace periodlab::kernels
