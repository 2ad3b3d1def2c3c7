#pragma once

#include <vector>

#include "periodlab/potential.hpp"

namespace periodlab {

/// Phase-space point in dimensionless time tau = w0 t.
struct TrajectoryState {
    double tau = 0.0;
    double x = 0.0;
    double v = 0.0;
};

struct OracleReport {
    double period = 0.0;      // physical time units (tau period / w0)
    double tau_period = 0.0;  // dimensionless
    double half_period = 0.0; // tau from x+ to x-
    double energy_drift = 0.0;
    long steps = 0;
    int method_order = 4;
    double dtau = 0.0;
    bool reliable = true;
};

struct OracleOptions {
    double drift_bound = 1e-10;
    double tau_cap = 1e6;
    int max_halvings = 12;
    /// When > 0, use this step and skip the drift-driven refinement.
    double fixed_dtau = 0.0;
};

/// Classic fourth-order Runge-Kutta steps of x'' = -U'(x); n + 1 states.
std::vector<TrajectoryState> integrate(const PolynomialPotential& u, TrajectoryState state0, double dtau, int n);

/// Single RK4 step.
TrajectoryState rk4_step(const PolynomialPotential& u, const TrajectoryState& s, double dtau);

/// Starts at x+ with v = 0 and times the return of v through zero from above
/// (cubic Hermite root of v between steps). The step starts at T0/1000 with
/// T0 = 2 pi / w_b and halves until the energy drift over the period is below
/// the bound. Unreliable when the period exceeds the tau cap or the drift bound
/// cannot be met.
OracleReport measure_period(const PolynomialPotential& u, double energy, OracleOptions opts = {});

}  // namespace periodlab
