// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "periodlab/errors.hpp"
#include "periodlab/oracle.hpp"
#include "periodlab/period.hpp"

using namespace periodlab;

namespace {

const double kPi = std::acos(-1.0);

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

template <class F>
bool throws_separatrix(F&& f) {
    try {
        f();
    } catch (const SeparatrixError&) {
        return true;
    } catch (const Error&) {
        return false;
    }
    return false;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

EnergyShell duffing_shell(double rho) {
    return turning_points(PolynomialPotential::duffing(rho), duffing_energy(rho, 1.0));
}

EnergyShell cubic_shell(double energy) { return turning_points(PolynomialPotential::quadratic_cubic(1.0), energy); }

Outcome large_rho_constant() {
    const auto t0 = Clock::now();
    const double c = duffing_scaled_limit();
    const double ms = elapsed_ms(t0);
    const double err = std::abs(c - 7.4162987);
    return {err <= 5e-7 && ms < 1.0, fmt("value=%.10f |diff|=%.2e time=%.3f ms", c, err, ms)};
}

Outcome truncations() {
    double worst = 0.0;
    for (double rho : {0.0, 0.5, 1.0, 10.0}) {
        const double q = 4.0 + 3.0 * rho;
        worst = std::max(worst, rel(duffing_T0(rho), 4.0 * kPi / std::sqrt(q)));
        worst = std::max(
            worst, rel(duffing_T1(rho), kPi * (147.0 * rho * rho + 384.0 * rho + 256.0) / (4.0 * std::pow(q, 2.5))));
        // The truncations are the first partial sums of the balanced series.
        const auto s = duffing_series_balanced(rho, 1, {false});
        worst = std::max(worst, rel(std::sqrt(2.0) * s.partial_sums[0], duffing_T0(rho)));
        worst = std::max(worst, rel(std::sqrt(2.0) * s.partial_sums[1], duffing_T1(rho)));
    }
    // Scaled limits, both from the coefficient sums and from sqrt(rho) T^(N) at large rho.
    const double l0 = duffing_truncation_limit(0);
    const double l1 = duffing_truncation_limit(1);
    const double big = 1e12;
    const bool printed = std::abs(l0 - 7.26) < 0.005 && std::abs(l1 - 7.406) < 0.0005 &&
                         std::abs(std::sqrt(big) * duffing_T0(big) - 7.26) < 0.005 &&
                         std::abs(std::sqrt(big) * duffing_T1(big) - 7.406) < 0.0005;
    return {worst <= 1e-12 && printed, fmt("max rel diff=%.2e limits=%.6f, %.6f", worst, l0, l1)};
}

Outcome regimes() {
    struct Row {
        double rho;
        Regime nayfeh;
    };
    const Row rows[] = {{-0.95, Regime::Divergent}, {-0.8, Regime::Divergent}, {-0.7, Regime::Divergent},
                        {-0.6, Regime::Convergent}, {0.0, Regime::Convergent}, {5.0, Regime::Convergent}};
    Outcome o;
    for (const auto& r : rows) {
        // The flags from the predicates and from the series objects must agree.
        const bool ok = duffing_nayfeh_regime(r.rho) == r.nayfeh &&
                        duffing_series_nayfeh(r.rho, 4).regime == r.nayfeh &&
                        duffing_balanced_regime(r.rho) == Regime::Convergent &&
                        duffing_series_balanced(r.rho, 4).regime == Regime::Convergent;
        o.pass = o.pass && ok;
        o.detail += fmt("%g:", r.rho) + std::string(to_string(duffing_nayfeh_regime(r.rho))) + " ";
    }
    o.detail = "nayfeh " + o.detail + "| balanced convergent on all";
    return o;
}

Outcome cross_method() {
    const auto t0 = Clock::now();
    double analytic = 0.0;
    double oracle = 0.0;
    bool reliable = true;
    auto compare = [&](const std::vector<double>& exact, double measured) {
        for (double a : exact)
            for (double b : exact) analytic = std::max(analytic, rel(a, b));
        for (double a : exact) oracle = std::max(oracle, rel(measured, a));
    };
    for (double rho : {-0.9, 0.5, 1.0, 10.0}) {
        const auto shell = duffing_shell(rho);
        const auto f = balanced_frame(shell);
        const auto series = period_series(f, 30);
        const auto r = measure_period(shell.potential, shell.energy);
        reliable = reliable && r.reliable && series.truncation_error <= 1e-10 * series.value();
        compare({period_quadrature(f).T, duffing_elliptic(rho).T, period_elliptic(shell).T,
                 period_from_series(series, 1.0).T},
                r.period);
    }
    for (double e : {0.01, 0.1, 0.15}) {
        const auto shell = cubic_shell(e);
        const auto f = balanced_frame(shell);
        const auto series = period_series(f, 30);
        const auto r = measure_period(shell.potential, shell.energy);
        reliable = reliable && r.reliable && series.truncation_error <= 1e-10 * series.value();
        compare({period_quadrature(f).T, cubic_apostol(shell).T, period_from_series(series, 1.0).T}, r.period);
    }
    const double ms = elapsed_ms(t0);
    return {reliable && analytic <= 1e-10 && oracle <= 1e-6 && ms < 1000.0,
            fmt("analytic max rel=%.2e oracle max rel=%.2e time=%.1f ms", analytic, oracle, ms)};
}

Outcome separatrix() {
    const auto u = PolynomialPotential::quadratic_cubic(1.0);
    const auto sep = separatrix_shell(u);
    const double xi = *balanced_frame(sep).xi;
    const double k2 = apostol_form(sep).modulus_m;
    const bool rejects = throws_separatrix([&] { (void)cubic_apostol(sep); }) &&
                         throws_separatrix([&] { (void)cubic_series_balanced(sep, 10); }) &&
                         throws_separatrix([&] { (void)period_elliptic(sep); }) &&
                         throws_separatrix([&] { (void)period_quadrature(balanced_frame(sep)); }) &&
                         throws_separatrix([&] { (void)turning_points(u, 1.0 / 6.0); });
    bool monotone = true;
    double prev = 0.0;
    double last = 0.0;
    for (int n = 2; n <= 6; ++n) {
        last = period_quadrature(balanced_frame(turning_points(u, 1.0 / 6.0 - std::pow(10.0, -n)))).T;
        monotone = monotone && last > prev;
        prev = last;
    }
    const bool pass = std::abs(xi - 1.0) < 1e-12 && std::abs(k2 - 1.0) < 1e-12 && rejects && monotone;
    return {pass, fmt("xi=%.15f k^2=%.15f T(n=6)=%.6f", xi, k2, last) + (rejects ? " closed forms reject" : " NOT rejected")};
}

Outcome balance_property() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> frac(0.01, 0.99);
    double worst_balance = 0.0;
    double worst_sup = 0.0;
    int shells = 0;
    while (shells < 100) {
        // U = c2 x^2 + c3 x^3 (+ c4 x^4), a well at the origin.
        const bool quartic = shells % 2 == 0;
        std::vector<double> c = {0.0, 0.0, 0.1 + std::abs(coef(rng)), coef(rng)};
        if (quartic) c.push_back(coef(rng));
        const auto u = PolynomialPotential::dimensionless(c);
        const auto b = barrier_info(u);
        const double top = b.has_barrier ? b.barrier_energy : 10.0;
        const auto shell = turning_points(u, frac(rng) * top);
        const auto f = balanced_frame(shell);
        const double scale = std::max(std::abs(f.delta_max), std::abs(f.delta_min));
        worst_balance = std::max(worst_balance, std::abs(f.delta_max + f.delta_min) / std::max(1.0, scale));
        worst_sup = std::max(worst_sup, f.sup_abs_delta());
        ++shells;
    }
    return {worst_balance <= 1e-12 && worst_sup < 1.0,
            fmt("%g shells max|dmax+dmin|=%.2e max sup|D|=%.6f", shells, worst_balance, worst_sup)};
}

Outcome generic_equals_closed() {
    const SeriesOptions full{false};
    double worst = 0.0;
    auto check_even = [&](const SeriesResult& g, const SeriesResult& c) {
        for (int k = 0; k < 10; ++k) worst = std::max(worst, rel(g.terms[2 * k], c.terms[k]));
    };
    for (double rho : {-0.9, -0.5, 0.5, 1.0, 10.0}) {
        const auto shell = duffing_shell(rho);
        check_even(period_series_generic(balanced_frame(shell), 18, full), duffing_series_balanced(rho, 9, full));
        const auto gn = period_series_generic(nayfeh_frame(shell), 9, full);
        const auto cn = duffing_series_nayfeh(rho, 9, full);
        for (int j = 0; j < 10; ++j) worst = std::max(worst, rel(gn.terms[j], cn.terms[j]));
    }
    for (double e : {0.01, 0.1, 0.15}) {
        const auto shell = cubic_shell(e);
        check_even(period_series_generic(balanced_frame(shell), 18, full), cubic_series_balanced(shell, 9, full));
    }
    return {worst <= 1e-12, fmt("max rel term diff=%.2e", worst)};
}

Outcome oracle_gates() {
    const auto h = PolynomialPotential::dimensionless({0.0, 0.0, 0.5});
    const double err = std::abs(measure_period(h, 0.5).tau_period - 2.0 * kPi);
    const auto d = PolynomialPotential::duffing(1.0);
    const double exact = duffing_elliptic(1.0).T;
    OracleOptions coarse, fine;
    coarse.fixed_dtau = 0.1;
    fine.fixed_dtau = 0.05;
    const double ratio = std::abs(measure_period(d, 0.75, coarse).tau_period - exact) /
                         std::abs(measure_period(d, 0.75, fine).tau_period - exact);
    return {err <= 1e-9 && std::abs(ratio - 16.0) <= 3.0, fmt("harmonic |T-2pi|=%.2e halving ratio=%.2f", err, ratio)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"large-amplitude constant", large_rho_constant},
        {"closed-form truncations T0, T1", truncations},
        {"series convergence domains", regimes},
        {"cross-method equivalence", cross_method},
        {"separatrix behaviour", separatrix},
        {"balance property", balance_property},
        {"generic series equals closed forms", generic_equals_closed},
        {"oracle quality gates", oracle_gates},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
