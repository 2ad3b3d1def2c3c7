#pragma once

#include <optional>
#include <vector>

#include "periodlab/polynomial.hpp"

namespace periodlab {

/// Dimensionless polynomial potential U(x) = V(x) / (m w0^2), shifted so that the
/// reference minimum has U = 0. Lengths stay dimensional; U carries length^2.
class PolynomialPotential {
public:
    /// Builds U from physical coefficients v (v[k] multiplies x^k). The reference
    /// minimum is the root of U' with U'' > 0 nearest `reference_x`.
    static PolynomialPotential from_physical(std::vector<double> v_coeffs, double mass = 1.0,
                                             double omega0 = 1.0, double reference_x = 0.0);
    /// Builds U directly from dimensionless coefficients (mass = omega0 = 1).
    static PolynomialPotential dimensionless(std::vector<double> coeffs, double reference_x = 0.0);

    /// U(x) = x^2/2 + lambda x^4/4.
    static PolynomialPotential duffing(double lambda);
    /// U(x) = x^2/2 + lambda x^3/3.
    static PolynomialPotential quadratic_cubic(double lambda);

    const Polynomial& poly() const noexcept { return u_; }
    const std::vector<double>& coeffs() const noexcept { return u_.coeffs(); }
    const std::vector<double>& physical_coeffs() const noexcept { return v_; }
    double mass() const noexcept { return mass_; }
    double omega0() const noexcept { return omega0_; }
    double minimum_x() const noexcept { return x_min_; }
    std::size_t degree() const noexcept { return u_.degree(); }

    double operator()(double x) const noexcept { return u_(x); }
    double derivative(double x) const noexcept { return du_(x); }
    double curvature() const noexcept { return du_.derivative()(x_min_); }

    /// Coefficients of U(y + minimum_x) in powers of y.
    const Polynomial& centered() const noexcept { return centered_; }
    /// True when U(minimum_x + y) = U(minimum_x - y).
    bool is_even() const noexcept;
    /// Degree-3 potential (the quadratic-cubic family after centering).
    bool is_cubic() const noexcept { return u_.degree() == 3; }
    /// Even potential of degree 2 or 4 (Duffing family, harmonic included).
    bool is_even_quartic() const noexcept { return (u_.degree() == 2 || u_.degree() == 4) && is_even(); }

private:
    PolynomialPotential(std::vector<double> v, Polynomial u, double mass, double omega0, double x_min);

    std::vector<double> v_;
    Polynomial u_;
    Polynomial du_;
    Polynomial centered_;
    double mass_ = 1.0;
    double omega0_ = 1.0;
    double x_min_ = 0.0;
};

/// The well between a minimum and its nearest barriers.
struct BarrierInfo {
    bool has_barrier = false;
    double barrier_energy = 0.0;  // lowest adjacent barrier top
    double barrier_x = 0.0;
    double amplitude_limit = 0.0;  // |barrier_x - minimum_x|
    std::optional<double> left_x;
    std::optional<double> right_x;
};

BarrierInfo barrier_info(const PolynomialPotential& u);

/// An energy level inside the well with its turning points and the residual
/// R(x) from Q(x) = E - U(x) = (x+ - x)(x - x-) R(x).
struct EnergyShell {
    PolynomialPotential potential;
    double energy = 0.0;
    double x_minus = 0.0;
    double x_plus = 0.0;
    Polynomial residual;
    std::vector<double> extra_roots;
    std::optional<double> amplitude;  // even potentials: (x+ - x-)/2
    std::optional<double> rho;        // even quartics: lambda A^2 in Duffing normalization

    Polynomial q() const { return potential.poly().scaled(-1.0).offset(energy); }
};

/// Turning points adjacent to the minimum and the deflated residual.
/// Throws DomainError for energy <= 0 (or below 1e-30), SeparatrixError at or
/// above the lowest adjacent barrier (relative guard 1e-12).
EnergyShell turning_points(const PolynomialPotential& u, double energy);

/// Shell with prescribed turning points (no barrier guard). Used for limiting
/// cases such as the separatrix where a turning point meets a barrier top.
EnergyShell make_shell(const PolynomialPotential& u, double energy, double x_minus, double x_plus);

/// Shell at the barrier energy: one turning point sits on the barrier top.
/// Throws DomainError when the well has no barrier.
EnergyShell separatrix_shell(const PolynomialPotential& u);

/// Energy of the Duffing normalization U = x^2/2 + lambda x^4/4 at amplitude A.
double duffing_energy(double lambda, double amplitude);

/// Linear residual R(y) = b0 + b1 y of a cubic shell, in the canonical frame
/// y = s (x - minimum_x) with s = sign of the cubic coefficient, so b1 > 0.
struct CubicFactors {
    double b0 = 0.0;
    double b1 = 0.0;
    double x3 = 0.0;       // third root of Q, canonical frame (x3 <= x-)
    double x_minus = 0.0;  // canonical turning points
    double x_plus = 0.0;
    bool reflected = false;
    double x3_original() const noexcept;
    double minimum_x = 0.0;
};

/// Throws UsageError for non-cubic or even potentials.
CubicFactors cubic_factorization(const EnergyShell& shell);

}  // namespace periodlab
