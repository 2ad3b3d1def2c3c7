#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "periodlab/frame.hpp"

namespace periodlab {

enum class Regime { Convergent, Divergent, Boundary };

std::string_view to_string(Regime r) noexcept;

/// Terms I_j of the binomial expansion of the period integral and their partial sums.
struct SeriesResult {
    std::vector<double> terms;
    std::vector<double> partial_sums;
    std::optional<double> xi;
    bool converged = false;
    double truncation_error = 0.0;
    Regime regime = Regime::Convergent;
    bool closed_form = false;

    double value() const noexcept { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
    /// Index of the last term kept (N, or less when summation stopped early).
    int order() const noexcept { return static_cast<int>(terms.size()) - 1; }
};

enum class Method { Quadrature, Series, EllipticDuffing, EllipticApostol, Oracle };

std::string_view to_string(Method m) noexcept;

struct PeriodResult {
    double T = 0.0;
    double Omega = 0.0;
    Method method = Method::Quadrature;
    double err_estimate = 0.0;
    int series_order = -1;  // N for Method::Series

    static PeriodResult make(double T, Method m, double err, int order = -1);
};

/// prefactor * K(modulus_m) is the period.
struct EllipticForm {
    double modulus_m = 0.0;
    double prefactor = 0.0;
};

struct SeriesOptions {
    /// Stop once two consecutive terms fall below 1e-16 of the running sum.
    bool stop_early = true;
};

/// Generalized binomial coefficients (-1/2 choose j), j = 0..n, by recurrence.
std::vector<double> binomial_minus_half(int n);

/// Regime of a series with ratio |xi| (Boundary within 1e-12 of 1).
Regime regime_of(double magnitude) noexcept;

// --- exact routes -----------------------------------------------------------

/// T = (sqrt(2)/w0) * (sqrt(2)/w) int_0^pi dtheta / sqrt(1 + Delta), Gauss-Legendre
/// on [0, pi] doubling from 32 nodes until successive estimates agree to the
/// quadrature tolerance. Throws SeparatrixError when 1 + Delta <= 0 at a node or
/// R vanishes on the interval; ConvergenceError past 4096 nodes.
PeriodResult period_quadrature(const BalancedFrame& frame);

/// Complete elliptic integral of the first kind K(m) = int_0^{pi/2} da / sqrt(1 - m sin^2 a),
/// by the arithmetic-geometric mean. Domain 0 <= m < 1.
double elliptic_K(double m);

/// Duffing (x^2/2 + lambda x^4/4): I = sqrt(2)/sqrt(1+rho) * 2 K(rho / (2 rho + 2)).
EllipticForm duffing_elliptic_form(double rho, double omega0 = 1.0);
PeriodResult duffing_elliptic(double rho, double omega0 = 1.0);

/// Quadratic-cubic well: T = sqrt(2/c3) * 2 / (w0 sqrt(x+ - x3)) * K(k^2),
/// k^2 = (x+ - x-) / (x+ - x3) in the canonical frame (c3 > 0). With c3 = lambda/3
/// this is sqrt(3/(2 lambda)) * 4 / (w0 sqrt(x+ - x3)) * K.
EllipticForm apostol_form(const EnergyShell& shell);
PeriodResult cubic_apostol(const EnergyShell& shell);

/// Elliptic route for any shell of a recognized family (even quartic or cubic).
/// Throws UsageError for other potentials.
PeriodResult period_elliptic(const EnergyShell& shell);

// --- series routes ----------------------------------------------------------

/// I_j = (sqrt(2)/w) (-1/2 choose j) int_0^pi Delta^j dtheta with the theta-moments
/// from an equispaced trapezoid rule that is exact for the trigonometric
/// polynomial Delta^j. Terms whose moment is zero to rounding are stored as 0.
SeriesResult period_series_generic(const BalancedFrame& frame, int N, SeriesOptions opts = {});

/// I = sqrt(2) pi / w * sum_k (-1)^k (-1/2 choose k)(-1/2 choose 2k) xi^{2k}.
SeriesResult balanced_closed_series(double omega, double xi, int N, SeriesOptions opts = {});

/// Balanced Duffing series with w^2 = (4 + 3 rho)/4 and xi = rho/(4 + 3 rho).
/// Throws SeparatrixError for rho <= -1.
SeriesResult duffing_series_balanced(double rho, int N, SeriesOptions opts = {});

/// Nayfeh Duffing series sqrt(2) pi/sqrt(1+rho) sum_j (-1/2 choose j)^2 xi^j,
/// xi = rho/(2 rho + 2). Divergent regimes still return their terms.
SeriesResult duffing_series_nayfeh(double rho, int N, SeriesOptions opts = {});

/// Balanced cubic series; throws SeparatrixError when |xi| >= 1 - 1e-12.
SeriesResult cubic_series_balanced(const EnergyShell& shell, int N, SeriesOptions opts = {});

/// Closed-form series for the frame when its family has one, generic otherwise.
SeriesResult period_series(const BalancedFrame& frame, int N, SeriesOptions opts = {});

/// T = (sqrt(2)/w0) I^(N).
PeriodResult period_from_series(const SeriesResult& s, double omega0);

/// Formal convergence of the closed-form Duffing series (|xi| < 1), over all rho.
Regime duffing_balanced_regime(double rho) noexcept;
Regime duffing_nayfeh_regime(double rho) noexcept;

// --- Duffing truncations and large-amplitude limits (w0 = 1) ---------------

/// T^(0) = 4 pi / sqrt(4 + 3 rho).
double duffing_T0(double rho);
/// T^(1) = pi (147 rho^2 + 384 rho + 256) / (4 (4 + 3 rho)^{5/2}).
double duffing_T1(double rho);
/// lim_{rho -> inf} sqrt(rho) T^(N) = (4 pi / sqrt 3) sum_{k<=N} (-1)^k (-1/2 choose k)(-1/2 choose 2k) 9^{-k}.
double duffing_truncation_limit(int N);
/// lim_{rho -> inf} sqrt(rho) T = 4 int_0^pi dtheta / sqrt(3 + cos 2 theta), by quadrature.
double duffing_scaled_limit();
/// sqrt(rho) T(rho) from the exact quadrature route.
double duffing_scaled_period(double rho);

}  // namespace periodlab
