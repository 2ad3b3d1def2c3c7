// Built with -mavx2 -mfma on x86-64 only; selected at runtime by kernels_dispatch.cpp.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "periodlab/kernels.hpp"

namespace periodlab::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_min_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    const std::size_t nc = coeffs.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x.data() + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = nc; k-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(coeffs[k]));
        _mm256_storeu_pd(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = nc; k-- > 0;) acc = std::fma(acc, x[i], coeffs[k]);
        out[i] = acc;
    }
}

RsqrtSum weighted_rsqrt_sum(std::span<const double> w, std::span<const double> y) {
    const std::size_t n = y.size();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d sum = zero;
    __m256d mn = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yv = _mm256_loadu_pd(y.data() + i);
        const __m256d wv = _mm256_loadu_pd(w.data() + i);
        mn = _mm256_min_pd(mn, yv);
        const __m256d pos = _mm256_cmp_pd(yv, zero, _CMP_GT_OQ);
        // Non-positive lanes take sqrt(1) and a zero weight.
        const __m256d safe = _mm256_blendv_pd(one, yv, pos);
        const __m256d term = _mm256_div_pd(_mm256_and_pd(wv, pos), _mm256_sqrt_pd(safe));
        sum = _mm256_add_pd(sum, term);
    }
    RsqrtSum r{hsum(sum), hmin(mn)};
    for (; i < n; ++i) {
        r.min_y = std::min(r.min_y, y[i]);
        if (y[i] > 0.0) r.sum += w[i] / std::sqrt(y[i]);
    }
    return r;
}

void power_moments(std::span<const double> w, std::span<const double> d, std::span<double> signed_out,
                   std::span<double> abs_out) {
    const std::size_t m = signed_out.size();
    const std::size_t n = d.size();
    // Lane-wise accumulators, 4 doubles per moment.
    std::vector<double> acc_s(4 * m, 0.0);
    std::vector<double> acc_a(4 * m, 0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dv = _mm256_loadu_pd(d.data() + i);
        const __m256d av = vabs(dv);
        __m256d p = _mm256_loadu_pd(w.data() + i);
        __m256d q = p;
        for (std::size_t j = 0; j < m; ++j) {
            double* s = acc_s.data() + 4 * j;
            double* a = acc_a.data() + 4 * j;
            _mm256_storeu_pd(s, _mm256_add_pd(_mm256_loadu_pd(s), p));
            _mm256_storeu_pd(a, _mm256_add_pd(_mm256_loadu_pd(a), q));
            p = _mm256_mul_pd(p, dv);
            q = _mm256_mul_pd(q, av);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        signed_out[j] = hsum(_mm256_loadu_pd(acc_s.data() + 4 * j));
        abs_out[j] = hsum(_mm256_loadu_pd(acc_a.data() + 4 * j));
    }
    for (; i < n; ++i) {
        double p = w[i];
        double q = w[i];
        const double a = std::abs(d[i]);
        for (std::size_t j = 0; j < m; ++j) {
            signed_out[j] += p;
            abs_out[j] += q;
            p *= d[i];
            q *= a;
        }
    }
}

}  // namespace

const KernelTable* avx2_table_impl() noexcept {
    static const KernelTable table{"avx2", &horner, &weighted_rsqrt_sum, &power_moments};
    return &table;
}

}  // namespace periodlab::kernels
