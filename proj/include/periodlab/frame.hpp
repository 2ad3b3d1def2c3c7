#pragma once

#include <optional>
#include <utility>

#include "periodlab/potential.hpp"

namespace periodlab {

enum class FrameStrategy { Balanced, Nayfeh, Fixed };

/// Closed form of Delta(theta) when the potential family admits one.
enum class DeltaShape {
    None,
    CosTwoTheta,   // Delta = xi cos(2 theta): balanced even quartic
    MinusSinSq,    // Delta = -xi sin^2(theta): Nayfeh even quartic
    CosTheta,      // Delta = xi cos(theta): balanced cubic
};

struct ResidualExtrema {
    double r_min = 0.0;
    double r_max = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
};

/// Reference function Q0(x) = (w^2/2)(x+ - x)(x - x-) for a shell, and the
/// deviation Delta = (2R - w^2)/w^2 it induces.
struct BalancedFrame {
    explicit BalancedFrame(EnergyShell s) : shell(std::move(s)) {}

    EnergyShell shell;
    FrameStrategy strategy = FrameStrategy::Balanced;
    double omega = 1.0;
    ResidualExtrema extrema;
    double delta_min = 0.0;
    double delta_max = 0.0;
    std::optional<double> xi;
    DeltaShape shape = DeltaShape::None;

    double sup_abs_delta() const noexcept;
};

/// Global extrema of R on [x-, x+]: interior roots of R' plus the endpoints.
ResidualExtrema extrema_of_r(const EnergyShell& shell);

/// w^2 = R_max + R_min, so that Delta_max = -Delta_min.
BalancedFrame balanced_frame(const EnergyShell& shell);

/// w^2 = 2 R(A), the classical Duffing choice w = sqrt(1 + rho) in the
/// x^2/2 + lambda x^4/4 normalization. Throws UsageError unless rho is defined.
BalancedFrame nayfeh_frame(const EnergyShell& shell);

/// User-supplied reference frequency.
BalancedFrame fixed_frame(const EnergyShell& shell, double omega);

/// Delta at theta, with x(theta) = (x+ + x-)/2 + ((x+ - x-)/2) cos(theta).
double delta_at(const BalancedFrame& frame, double theta);

double x_of_theta(const EnergyShell& shell, double theta);

}  // namespace periodlab
