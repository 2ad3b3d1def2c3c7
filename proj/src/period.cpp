#include "periodlab/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "periodlab/errors.hpp"
#include "periodlab/kernels.hpp"
#include "periodlab/quadrature.hpp"

namespace periodlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBoundaryTol = 1e-12;
constexpr double kStopRatio = 1e-16;
constexpr double kConvergedRatio = 1e-12;
constexpr int kFirstNodes = 32;
constexpr int kMaxNodes = 4096;

const double kSqrt2 = std::numbers::sqrt2;
const double kPi = std::numbers::pi;

struct QuadratureValue {
    double value;
    double error;
};

// int_0^pi dtheta / sqrt(y(theta)) by Gauss-Legendre with node doubling.
// `fill` maps theta nodes to radicands.
template <typename Fill>
QuadratureValue integrate_rsqrt_0_pi(Fill&& fill) {
    const auto& k = kernels::active();
    const double tol = quadrature_tolerance();
    double prev = std::numeric_limits<double>::quiet_NaN();
    double diff = std::numeric_limits<double>::infinity();
    std::vector<double> theta;
    std::vector<double> w;
    std::vector<double> y;
    for (int n = kFirstNodes; n <= kMaxNodes; n *= 2) {
        const auto rule = gauss_legendre(n);
        theta.resize(n);
        w.resize(n);
        y.resize(n);
        for (int i = 0; i < n; ++i) {
            theta[i] = 0.5 * kPi * (1.0 + rule->nodes[i]);
            w[i] = 0.5 * kPi * rule->weights[i];
        }
        fill(std::span<const double>(theta), std::span<double>(y));
        const kernels::RsqrtSum s = k.weighted_rsqrt_sum(w, y);
        if (!(s.min_y > 0.0)) {
            std::ostringstream msg;
            msg << "non-positive radicand 1 + Delta = " << s.min_y << " at a quadrature node (separatrix)";
            throw SeparatrixError(msg.str());
        }
        if (!std::isnan(prev)) {
            diff = std::abs(s.sum - prev);
            if (diff <= tol * std::abs(s.sum)) return {s.sum, diff};
        }
        prev = s.sum;
    }
    std::ostringstream msg;
    msg << "quadrature did not reach relative tolerance " << tol << " with " << kMaxNodes
        << " nodes (last difference " << diff << ")";
    throw ConvergenceError(msg.str());
}

double truncation_estimate(double last, double ratio) {
    const double r = std::clamp(ratio, 0.0, 1.0);
    if (r >= 1.0) return std::abs(last);
    return std::abs(last) * r / (1.0 - r);
}

void finish_series(SeriesResult& s, double ratio) {
    // Last and previous nonzero terms.
    double last = 0.0;
    for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it)
        if (*it != 0.0) {
            last = *it;
            break;
        }
    if (s.regime == Regime::Convergent) {
        s.truncation_error = truncation_estimate(last, ratio);
        s.converged = s.truncation_error <= kConvergedRatio * std::abs(s.value());
    } else {
        s.truncation_error = std::abs(last);
        s.converged = false;
    }
}

bool should_stop(const SeriesResult& s, const SeriesOptions& opts) {
    if (!opts.stop_early || s.terms.size() < 2) return false;
    const double sum = std::abs(s.value());
    const std::size_t n = s.terms.size();
    return std::abs(s.terms[n - 1]) < kStopRatio * sum && std::abs(s.terms[n - 2]) < kStopRatio * sum;
}

SeriesResult nayfeh_closed_series(double omega, double xi, int N, SeriesOptions opts) {
    if (N < 0) throw UsageError("series order N must be >= 0");
    SeriesResult s;
    s.xi = xi;
    s.closed_form = true;
    s.regime = regime_of(std::abs(xi));
    if (s.regime != Regime::Convergent) opts.stop_early = false;
    const std::vector<double> b = binomial_minus_half(N);
    const double pref = kSqrt2 * kPi / omega;
    double xpow = 1.0;
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
        const double t = pref * b[j] * b[j] * xpow;
        sum += t;
        s.terms.push_back(t);
        s.partial_sums.push_back(sum);
        xpow *= xi;
        if (should_stop(s, opts)) break;
    }
    finish_series(s, std::abs(xi));
    return s;
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Convergent: return "convergent";
        case Regime::Divergent: return "divergent";
        case Regime::Boundary: return "boundary";
    }
    return "?";
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Quadrature: return "quadrature";
        case Method::Series: return "series";
        case Method::EllipticDuffing: return "elliptic_duffing";
        case Method::EllipticApostol: return "elliptic_apostol";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

PeriodResult PeriodResult::make(double T, Method m, double err, int order) {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConvergenceError("non-positive or non-finite period");
    return PeriodResult{T, 2.0 * kPi / T, m, err, order};
}

std::vector<double> binomial_minus_half(int n) {
    std::vector<double> b(static_cast<std::size_t>(std::max(n, 0)) + 1);
    b[0] = 1.0;
    for (int j = 1; j <= n; ++j) b[j] = b[j - 1] * (-0.5 - j + 1.0) / j;
    return b;
}

Regime regime_of(double magnitude) noexcept {
    if (std::abs(magnitude - 1.0) <= kBoundaryTol) return Regime::Boundary;
    return magnitude < 1.0 ? Regime::Convergent : Regime::Divergent;
}

PeriodResult period_quadrature(const BalancedFrame& frame) {
    const EnergyShell& shell = frame.shell;
    if (!(frame.extrema.r_min > kBoundaryTol * std::abs(frame.extrema.r_max)))
        throw SeparatrixError("residual R vanishes on the orbit: energy at the separatrix");

    const double mid = 0.5 * (shell.x_plus + shell.x_minus);
    const double half = 0.5 * (shell.x_plus - shell.x_minus);
    const double w2 = frame.omega * frame.omega;
    const auto& coeffs = shell.residual.coeffs();
    const auto& k = kernels::active();
    std::vector<double> x;

    const QuadratureValue q = integrate_rsqrt_0_pi([&](std::span<const double> theta, std::span<double> y) {
        x.resize(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) x[i] = mid + half * std::cos(theta[i]);
        k.horner(coeffs, x, y);
        // 1 + Delta = 2 R / w^2
        for (double& v : y) v *= 2.0 / w2;
    });

    const double scale = kSqrt2 / frame.omega;
    const double t_scale = kSqrt2 / shell.potential.omega0();
    return PeriodResult::make(t_scale * scale * q.value, Method::Quadrature, t_scale * scale * q.error);
}

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "elliptic_K: parameter m = " << m << " outside [0, 1)";
        throw DomainError(msg.str());
    }
    double a = 1.0;
    double g = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - g) > 2.0 * kEps * a; ++i) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return kPi / (2.0 * a);
}

EllipticForm duffing_elliptic_form(double rho, double omega0) {
    if (!(rho > -1.0)) throw SeparatrixError("Duffing elliptic form needs rho > -1");
    const double xi = rho / (2.0 * rho + 2.0);
    const double base = 4.0 / (omega0 * std::sqrt(1.0 + rho));
    if (xi >= 0.0) return {xi, base};
    // K(-n) = K(n / (1 + n)) / sqrt(1 + n) keeps the parameter inside [0, 1).
    return {-xi / (1.0 - xi), base / std::sqrt(1.0 - xi)};
}

PeriodResult duffing_elliptic(double rho, double omega0) {
    const EllipticForm f = duffing_elliptic_form(rho, omega0);
    if (f.modulus_m >= 1.0 - kBoundaryTol) throw SeparatrixError("Duffing elliptic parameter reaches 1");
    const double T = f.prefactor * elliptic_K(f.modulus_m);
    return PeriodResult::make(T, Method::EllipticDuffing, 4.0 * kEps * T);
}

EllipticForm apostol_form(const EnergyShell& shell) {
    const CubicFactors f = cubic_factorization(shell);
    const double c3 = std::abs(shell.potential.centered()[3]);
    const double span3 = f.x_plus - f.x3;
    EllipticForm e;
    e.modulus_m = (f.x_plus - f.x_minus) / span3;
    e.prefactor = std::sqrt(2.0 / c3) * 2.0 / (shell.potential.omega0() * std::sqrt(span3));
    return e;
}

PeriodResult cubic_apostol(const EnergyShell& shell) {
    const EllipticForm e = apostol_form(shell);
    if (!(e.modulus_m < 1.0 - kBoundaryTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cubic elliptic modulus k^2 = " << e.modulus_m << " reaches 1: separatrix";
        throw SeparatrixError(msg.str());
    }
    const double T = e.prefactor * elliptic_K(e.modulus_m);
    return PeriodResult::make(T, Method::EllipticApostol, 8.0 * kEps * T);
}

PeriodResult period_elliptic(const EnergyShell& shell) {
    const PolynomialPotential& u = shell.potential;
    if (u.is_even_quartic() && shell.rho) {
        // U = 2 c2 (y^2/2 + lambda y^4/4): the integral scales by 1/sqrt(2 c2).
        const double c2 = u.centered()[2];
        PeriodResult r = duffing_elliptic(*shell.rho, u.omega0());
        return PeriodResult::make(r.T / std::sqrt(2.0 * c2), r.method, r.err_estimate / std::sqrt(2.0 * c2));
    }
    if (u.is_cubic()) return cubic_apostol(shell);
    throw UsageError("no elliptic closed form for this potential (needs an even quartic or a cubic)");
}

SeriesResult period_series_generic(const BalancedFrame& frame, int N, SeriesOptions opts) {
    if (N < 0) throw UsageError("series order N must be >= 0");
    const EnergyShell& shell = frame.shell;
    const std::size_t deg = shell.residual.degree();
    // Delta^j is a cosine polynomial of degree j*deg; the (M+1)-point trapezoid
    // rule on [0, pi] integrates cos(k theta) exactly for k < 2M.
    const std::size_t M = std::max<std::size_t>(16, static_cast<std::size_t>(N) * deg / 2 + 1);
    std::vector<double> x(M + 1);
    std::vector<double> w(M + 1, kPi / static_cast<double>(M));
    w.front() *= 0.5;
    w.back() *= 0.5;
    const double mid = 0.5 * (shell.x_plus + shell.x_minus);
    const double half = 0.5 * (shell.x_plus - shell.x_minus);
    for (std::size_t i = 0; i <= M; ++i) x[i] = mid + half * std::cos(kPi * static_cast<double>(i) / M);

    const auto& k = kernels::active();
    std::vector<double> delta(M + 1);
    k.horner(shell.residual.coeffs(), x, delta);
    const double w2 = frame.omega * frame.omega;
    for (double& d : delta) d = (2.0 * d - w2) / w2;

    std::vector<double> moments(N + 1);
    std::vector<double> abs_moments(N + 1);
    k.power_moments(w, delta, moments, abs_moments);

    const std::vector<double> b = binomial_minus_half(N);
    SeriesResult s;
    s.xi = frame.xi;
    s.regime = regime_of(frame.sup_abs_delta());
    if (s.regime != Regime::Convergent) opts.stop_early = false;
    const double pref = kSqrt2 / frame.omega;
    double sum = 0.0;
    double prev_nonzero = 0.0;
    double ratio = frame.sup_abs_delta();
    for (int j = 0; j <= N; ++j) {
        // Summation rounding plus the rounding of Delta itself carried through the j-th power.
        const double carried = j > 0 ? static_cast<double>(j) * (1.0 + ratio) * abs_moments[j - 1] : 0.0;
        const double noise = 4.0 * static_cast<double>(j + M) * kEps * (abs_moments[j] + carried);
        const double m = std::abs(moments[j]) <= noise ? 0.0 : moments[j];
        const double t = pref * b[j] * m;
        if (t != 0.0) {
            if (prev_nonzero != 0.0) ratio = std::abs(t / prev_nonzero);
            prev_nonzero = t;
        }
        sum += t;
        s.terms.push_back(t);
        s.partial_sums.push_back(sum);
        if (should_stop(s, opts)) break;
    }
    finish_series(s, ratio);
    return s;
}

SeriesResult balanced_closed_series(double omega, double xi, int N, SeriesOptions opts) {
    if (N < 0) throw UsageError("series order N must be >= 0");
    SeriesResult s;
    s.xi = xi;
    s.closed_form = true;
    s.regime = regime_of(std::abs(xi));
    if (s.regime != Regime::Convergent) opts.stop_early = false;
    const std::vector<double> b = binomial_minus_half(2 * N);
    const double pref = kSqrt2 * kPi / omega;
    const double xi2 = xi * xi;
    double xpow = 1.0;
    double sign = 1.0;
    double sum = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double t = pref * sign * b[k] * b[2 * k] * xpow;
        sum += t;
        s.terms.push_back(t);
        s.partial_sums.push_back(sum);
        xpow *= xi2;
        sign = -sign;
        if (should_stop(s, opts)) break;
    }
    finish_series(s, xi2);
    return s;
}

SeriesResult duffing_series_balanced(double rho, int N, SeriesOptions opts) {
    if (!(rho > -1.0)) throw SeparatrixError("balanced Duffing series needs rho > -1 (periodic motion)");
    const double omega = 0.5 * std::sqrt(4.0 + 3.0 * rho);
    return balanced_closed_series(omega, rho / (4.0 + 3.0 * rho), N, opts);
}

SeriesResult duffing_series_nayfeh(double rho, int N, SeriesOptions opts) {
    if (!(rho > -1.0)) throw SeparatrixError("Nayfeh Duffing series needs rho > -1 (periodic motion)");
    return nayfeh_closed_series(std::sqrt(1.0 + rho), rho / (2.0 * rho + 2.0), N, opts);
}

SeriesResult cubic_series_balanced(const EnergyShell& shell, int N, SeriesOptions opts) {
    if (!shell.potential.is_cubic()) throw UsageError("cubic series needs a degree-3 potential");
    const BalancedFrame f = balanced_frame(shell);
    const double xi = *f.xi;
    if (!(std::abs(xi) < 1.0 - kBoundaryTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cubic series parameter |xi| = " << std::abs(xi) << " reaches 1: separatrix";
        throw SeparatrixError(msg.str());
    }
    return balanced_closed_series(f.omega, xi, N, opts);
}

SeriesResult period_series(const BalancedFrame& frame, int N, SeriesOptions opts) {
    switch (frame.shape) {
        case DeltaShape::CosTwoTheta:
            return balanced_closed_series(frame.omega, *frame.xi, N, opts);
        case DeltaShape::MinusSinSq:
            return nayfeh_closed_series(frame.omega, *frame.xi, N, opts);
        case DeltaShape::CosTheta:
            return cubic_series_balanced(frame.shell, N, opts);
        case DeltaShape::None:
            break;
    }
    return period_series_generic(frame, N, opts);
}

PeriodResult period_from_series(const SeriesResult& s, double omega0) {
    const double scale = kSqrt2 / omega0;
    return PeriodResult::make(scale * s.value(), Method::Series, scale * s.truncation_error, s.order());
}

Regime duffing_balanced_regime(double rho) noexcept { return regime_of(std::abs(rho / (4.0 + 3.0 * rho))); }

Regime duffing_nayfeh_regime(double rho) noexcept { return regime_of(std::abs(rho / (2.0 * rho + 2.0))); }

double duffing_T0(double rho) { return 4.0 * kPi / std::sqrt(4.0 + 3.0 * rho); }

double duffing_T1(double rho) {
    return kPi * (147.0 * rho * rho + 384.0 * rho + 256.0) / (4.0 * std::pow(4.0 + 3.0 * rho, 2.5));
}

double duffing_truncation_limit(int N) {
    const std::vector<double> b = binomial_minus_half(2 * N);
    double sum = 0.0;
    double pw = 1.0;
    double sign = 1.0;
    for (int k = 0; k <= N; ++k) {
        sum += sign * b[k] * b[2 * k] * pw;
        pw /= 9.0;
        sign = -sign;
    }
    return 4.0 * kPi / std::sqrt(3.0) * sum;
}

double duffing_scaled_limit() {
    const QuadratureValue q = integrate_rsqrt_0_pi([](std::span<const double> theta, std::span<double> y) {
        for (std::size_t i = 0; i < theta.size(); ++i) y[i] = 3.0 + std::cos(2.0 * theta[i]);
    });
    return 4.0 * q.value;
}

double duffing_scaled_period(double rho) {
    if (!(rho > 0.0)) throw DomainError("scaled period sqrt(rho) T needs rho > 0");
    const EnergyShell shell = turning_points(PolynomialPotential::duffing(rho), duffing_energy(rho, 1.0));
    return std::sqrt(rho) * period_quadrature(balanced_frame(shell)).T;
}

}  // namespace periodlab
