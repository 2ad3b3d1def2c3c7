#include "periodlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "periodlab/errors.hpp"
#include "periodlab/frame.hpp"

namespace periodlab {

namespace {

double accel(const PolynomialPotential& u, double x) { return -u.derivative(x); }

// Root in (0, 1) of the cubic Hermite interpolant of v over one step, given the
// end values and slopes (already multiplied by the step).
double hermite_root(double v0, double m0, double v1, double m1) {
    auto p = [&](double s) {
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * v1 + (s3 - s2) * m1;
    };
    auto dp = [&](double s) {
        const double s2 = s * s;
        return (6 * s2 - 6 * s) * v0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * v1 + (3 * s2 - 2 * s) * m1;
    };
    double a = 0.0;
    double b = 1.0;
    const double fa = p(a);
    double s = (v0 != v1) ? v0 / (v0 - v1) : 0.5;  // linear guess
    for (int it = 0; it < 100; ++it) {
        const double fs = p(s);
        if (fs == 0.0) return s;
        if ((fs > 0.0) == (fa > 0.0))
            a = s;
        else
            b = s;
        const double d = dp(s);
        double next = d != 0.0 ? s - fs / d : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - s) <= 1e-16) return next;
        s = next;
    }
    return s;
}

struct Run {
    double tau_period = 0.0;
    double half_period = 0.0;
    double drift = 0.0;
    long steps = 0;
    bool completed = false;
};

Run run_once(const PolynomialPotential& u, double x_start, double energy, double h, double tau_cap) {
    Run r;
    TrajectoryState s{0.0, x_start, 0.0};
    bool half_found = false;
    const long max_steps = static_cast<long>(std::ceil(tau_cap / h)) + 1;
    for (long n = 0; n < max_steps; ++n) {
        const TrajectoryState next = rk4_step(u, s, h);
        ++r.steps;
        const double e = 0.5 * next.v * next.v + u(next.x);
        r.drift = std::max(r.drift, std::abs(e - energy) / energy);

        const bool up = !half_found && s.v < 0.0 && next.v >= 0.0;
        const bool down = half_found && s.v > 0.0 && next.v <= 0.0;
        if (up || down) {
            const double frac =
                hermite_root(s.v, h * accel(u, s.x), next.v, h * accel(u, next.x));
            const double t_event = s.tau + frac * h;
            if (up) {
                r.half_period = t_event;
                half_found = true;
            } else {
                r.tau_period = t_event;
                r.completed = true;
                return r;
            }
        }
        s = next;
    }
    return r;
}

}  // namespace

TrajectoryState rk4_step(const PolynomialPotential& u, const TrajectoryState& s, double h) {
    const double k1x = s.v;
    const double k1v = accel(u, s.x);
    const double k2x = s.v + 0.5 * h * k1v;
    const double k2v = accel(u, s.x + 0.5 * h * k1x);
    const double k3x = s.v + 0.5 * h * k2v;
    const double k3v = accel(u, s.x + 0.5 * h * k2x);
    const double k4x = s.v + h * k3v;
    const double k4v = accel(u, s.x + h * k3x);
    return {s.tau + h, s.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

std::vector<TrajectoryState> integrate(const PolynomialPotential& u, TrajectoryState state0, double dtau, int n) {
    if (!(dtau > 0.0)) throw UsageError("integration step must be positive");
    if (n < 0) throw UsageError("step count must be >= 0");
    std::vector<TrajectoryState> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(state0);
    for (int i = 0; i < n; ++i) out.push_back(rk4_step(u, out.back(), dtau));
    return out;
}

OracleReport measure_period(const PolynomialPotential& u, double energy, OracleOptions opts) {
    const EnergyShell shell = turning_points(u, energy);
    const double x_start = shell.x_plus;
    const double e0 = u(x_start);

    OracleReport rep;
    double h = opts.fixed_dtau;
    int halvings = 0;
    if (!(h > 0.0)) {
        const BalancedFrame f = balanced_frame(shell);
        h = 2.0 * std::numbers::pi / f.omega / 1000.0;
    }
    for (;;) {
        const Run r = run_once(u, x_start, e0, h, opts.tau_cap);
        rep.steps += r.steps;
        rep.dtau = h;
        rep.energy_drift = r.drift;
        rep.tau_period = r.tau_period;
        rep.half_period = r.half_period;
        if (!r.completed) {
            rep.reliable = false;
            break;
        }
        if (opts.fixed_dtau > 0.0 || r.drift < opts.drift_bound) break;
        if (++halvings > opts.max_halvings) {
            rep.reliable = false;
            break;
        }
        h *= 0.5;
    }
    rep.period = rep.tau_period / u.omega0();
    return rep;
}

}  // namespace periodlab
