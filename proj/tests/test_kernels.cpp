#include <doctest.h>

#include <cmath>
#include <vector>

#include "periodlab/kernels.hpp"
#include "reference.hpp"

namespace k = periodlab::kernels;

namespace {

struct Inputs {
    std::vector<double> w, x, y, d, coeffs;
};

Inputs random_inputs(std::size_t n, unsigned long long salt) {
    auto rng = periodlab::testing::seeded_rng(salt);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Inputs in;
    for (std::size_t i = 0; i < n; ++i) {
        in.w.push_back(0.5 + 0.5 * std::abs(u(rng)));
        in.x.push_back(2.0 * u(rng));
        in.y.push_back(0.1 + std::abs(u(rng)));
        in.d.push_back(0.95 * u(rng));
    }
    for (int c = 0; c < 6; ++c) in.coeffs.push_back(u(rng));
    return in;
}

double abs_poly(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * std::abs(x) + std::abs(c[k]);
    return acc;
}

}  // namespace

TEST_CASE("scalar kernels against direct loops") {
    const Inputs in = random_inputs(37, 3);
    const auto& s = k::scalar_table();

    std::vector<double> out(in.x.size());
    s.horner(in.coeffs, in.x, out);
    for (std::size_t i = 0; i < in.x.size(); ++i) {
        double direct = 0.0;
        for (std::size_t p = 0; p < in.coeffs.size(); ++p) direct += in.coeffs[p] * std::pow(in.x[i], double(p));
        CHECK(std::abs(out[i] - direct) <= 1e-14 * abs_poly(in.coeffs, in.x[i]));
    }

    double direct = 0.0;
    for (std::size_t i = 0; i < in.y.size(); ++i) direct += in.w[i] / std::sqrt(in.y[i]);
    const auto r = s.weighted_rsqrt_sum(in.w, in.y);
    CHECK(r.sum == doctest::Approx(direct).epsilon(1e-14));

    std::vector<double> sm(9), am(9);
    s.power_moments(in.w, in.d, sm, am);
    for (int j = 0; j < 9; ++j) {
        double ds = 0.0, da = 0.0;
        for (std::size_t i = 0; i < in.d.size(); ++i) {
            ds += in.w[i] * std::pow(in.d[i], j);
            da += in.w[i] * std::pow(std::abs(in.d[i]), j);
        }
        CHECK(std::abs(sm[j] - ds) <= 1e-14 * da);
        CHECK(am[j] == doctest::Approx(da).epsilon(1e-14));
    }
}

TEST_CASE("radicand guard reports non-positive values") {
    const std::vector<double> w(6, 1.0);
    const std::vector<double> y = {1.0, 4.0, -0.5, 1.0, 0.0, 4.0};
    for (const k::KernelTable* t : {&k::scalar_table(), k::avx2_table()}) {
        if (t == nullptr) continue;
        const auto r = t->weighted_rsqrt_sum(w, y);
        CHECK(r.min_y == -0.5);
        CHECK(r.sum == doctest::Approx(3.0));
    }
}

TEST_CASE("AVX2 variants are equivalent to the scalar reference") {
    const k::KernelTable* simd = k::avx2_table();
    if (simd == nullptr) {
        MESSAGE("AVX2 kernels not available on this machine; equivalence skipped");
        return;
    }
    const auto& s = k::scalar_table();
    // Sizes cover empty input, pure tails and mixed vector/tail paths.
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u, 1000u, 4097u}) {
        CAPTURE(n);
        const Inputs in = random_inputs(n, 100 + n);

        std::vector<double> a(n), b(n);
        s.horner(in.coeffs, in.x, a);
        simd->horner(in.coeffs, in.x, b);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(a[i] - b[i]) <= 8e-16 * in.coeffs.size() * abs_poly(in.coeffs, in.x[i]));

        const auto ra = s.weighted_rsqrt_sum(in.w, in.y);
        const auto rb = simd->weighted_rsqrt_sum(in.w, in.y);
        CHECK(rb.min_y == ra.min_y);
        CHECK(std::abs(ra.sum - rb.sum) <= 1e-15 * static_cast<double>(n + 1) * std::abs(ra.sum));

        const std::size_t m = 25;
        std::vector<double> sa(m), aa(m), sb(m), ab(m);
        s.power_moments(in.w, in.d, sa, aa);
        simd->power_moments(in.w, in.d, sb, ab);
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(std::abs(sa[j] - sb[j]) <= 1e-15 * static_cast<double>(n + j + 1) * aa[j]);
            CHECK(std::abs(aa[j] - ab[j]) <= 1e-15 * static_cast<double>(n + j + 1) * aa[j]);
        }
    }
}

TEST_CASE("active table honours the scalar override") {
    const auto& a = k::active();
    CHECK((a.name == "scalar" || a.name == "avx2"));
}
