#include "periodlab/frame.hpp"

#include <algorithm>
#include <cmath>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

void fill_delta_extrema(BalancedFrame& f) {
    const double w2 = f.omega * f.omega;
    f.delta_min = 2.0 * f.extrema.r_min / w2 - 1.0;
    f.delta_max = 2.0 * f.extrema.r_max / w2 - 1.0;
}

}  // namespace

double BalancedFrame::sup_abs_delta() const noexcept { return std::max(std::abs(delta_min), std::abs(delta_max)); }

double x_of_theta(const EnergyShell& shell, double theta) {
    return 0.5 * (shell.x_plus + shell.x_minus) + 0.5 * (shell.x_plus - shell.x_minus) * std::cos(theta);
}

ResidualExtrema extrema_of_r(const EnergyShell& shell) {
    const Polynomial& r = shell.residual;
    const double a = shell.x_minus;
    const double b = shell.x_plus;
    ResidualExtrema e{r(a), r(a), a, a};
    auto consider = [&](double x) {
        const double v = r(x);
        if (v < e.r_min) {
            e.r_min = v;
            e.argmin = x;
        }
        if (v > e.r_max) {
            e.r_max = v;
            e.argmax = x;
        }
    };
    consider(b);
    for (double c : r.derivative().real_roots(a, b)) consider(c);
    return e;
}

BalancedFrame balanced_frame(const EnergyShell& shell) {
    BalancedFrame f(shell);
    f.strategy = FrameStrategy::Balanced;
    f.extrema = extrema_of_r(shell);
    f.omega = std::sqrt(f.extrema.r_min + f.extrema.r_max);
    fill_delta_extrema(f);

    const PolynomialPotential& u = shell.potential;
    if (u.is_even_quartic() && shell.rho) {
        const double rho = *shell.rho;
        f.xi = rho / (4.0 + 3.0 * rho);
        f.shape = DeltaShape::CosTwoTheta;
    } else if (u.is_cubic()) {
        // R linear: 2R - R(x+) - R(x-) = b1 (x+ - x-) cos(theta).
        const double b1 = shell.residual[1];
        const double b0 = shell.residual[0];
        f.xi = b1 * (shell.x_plus - shell.x_minus) / (2.0 * b0 + b1 * (shell.x_plus + shell.x_minus));
        f.shape = DeltaShape::CosTheta;
    }
    return f;
}

BalancedFrame nayfeh_frame(const EnergyShell& shell) {
    if (!shell.potential.is_even_quartic() || !shell.rho)
        throw UsageError("the Nayfeh frame is defined for even quartic (Duffing) potentials only");
    BalancedFrame f(shell);
    f.strategy = FrameStrategy::Nayfeh;
    f.extrema = extrema_of_r(shell);
    const double rho = *shell.rho;
    const double c2 = shell.potential.centered()[2];
    // 2 R(A) = 2 c2 (1 + rho); equals 1 + rho for c2 = 1/2.
    f.omega = std::sqrt(2.0 * c2 * (1.0 + rho));
    fill_delta_extrema(f);
    f.xi = rho / (2.0 * rho + 2.0);
    f.shape = DeltaShape::MinusSinSq;
    return f;
}

BalancedFrame fixed_frame(const EnergyShell& shell, double omega) {
    if (!(omega > 0.0)) throw UsageError("fixed reference frequency must be positive");
    BalancedFrame f(shell);
    f.strategy = FrameStrategy::Fixed;
    f.extrema = extrema_of_r(shell);
    f.omega = omega;
    fill_delta_extrema(f);
    return f;
}

double delta_at(const BalancedFrame& frame, double theta) {
    const double w2 = frame.omega * frame.omega;
    return (2.0 * frame.shell.residual(x_of_theta(frame.shell, theta)) - w2) / w2;
}

}  // namespace periodlab
