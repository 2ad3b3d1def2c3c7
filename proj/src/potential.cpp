#include "periodlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "periodlab/errors.hpp"

namespace periodlab {

namespace {

constexpr double kSeparatrixGuard = 1e-12;
constexpr double kMinEnergy = 1e-30;

double locate_minimum(const Polynomial& u, double reference_x) {
    const Polynomial du = u.derivative();
    const Polynomial d2u = du.derivative();
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double r : du.real_roots()) {
        if (!(d2u(r) > 0.0)) continue;
        if (std::isnan(best) || std::abs(r - reference_x) < std::abs(best - reference_x)) best = r;
    }
    if (std::isnan(best)) {
        std::ostringstream msg;
        msg << "potential has no local minimum with U'' > 0 (degree " << u.degree() << ")";
        throw DomainError(msg.str());
    }
    return best;
}

}  // namespace

PolynomialPotential::PolynomialPotential(std::vector<double> v, Polynomial u, double mass, double omega0,
                                         double x_min)
    : v_(std::move(v)),
      u_(std::move(u)),
      du_(u_.derivative()),
      centered_(u_.shifted(x_min)),
      mass_(mass),
      omega0_(omega0),
      x_min_(x_min) {
    // The centered form has exact zero constant and linear terms by construction.
    std::vector<double> c = centered_.coeffs();
    if (!c.empty()) c[0] = 0.0;
    if (c.size() > 1) c[1] = 0.0;
    centered_ = Polynomial(std::move(c));
}

PolynomialPotential PolynomialPotential::from_physical(std::vector<double> v_coeffs, double mass,
                                                       double omega0, double reference_x) {
    if (!(mass > 0.0)) throw UsageError("mass must be positive");
    if (!(omega0 > 0.0)) throw UsageError("omega0 must be positive");
    const double scale = 1.0 / (mass * omega0 * omega0);
    std::vector<double> c = v_coeffs;
    for (auto& x : c) x *= scale;
    Polynomial u(std::move(c));
    if (u.degree() < 2) throw UsageError("potential must have degree >= 2");
    const double x_min = locate_minimum(u, reference_x);
    u = u.offset(-u(x_min));
    // Re-pin the constant so U(x_min) vanishes to rounding of the remaining terms.
    return PolynomialPotential(std::move(v_coeffs), std::move(u), mass, omega0, x_min);
}

PolynomialPotential PolynomialPotential::dimensionless(std::vector<double> coeffs, double reference_x) {
    return from_physical(std::move(coeffs), 1.0, 1.0, reference_x);
}

PolynomialPotential PolynomialPotential::duffing(double lambda) {
    return dimensionless({0.0, 0.0, 0.5, 0.0, lambda / 4.0});
}

PolynomialPotential PolynomialPotential::quadratic_cubic(double lambda) {
    return dimensionless({0.0, 0.0, 0.5, lambda / 3.0});
}

bool PolynomialPotential::is_even() const noexcept {
    const auto& c = centered_.coeffs();
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 1; k < c.size(); k += 2)
        if (std::abs(c[k]) > 1e-14 * scale) return false;
    return true;
}

BarrierInfo barrier_info(const PolynomialPotential& u) {
    BarrierInfo info;
    const Polynomial du = u.poly().derivative();
    const double x0 = u.minimum_x();
    const std::vector<double> crit = du.real_roots();

    // Classify each critical point by the sign of U' on the neighbouring intervals.
    auto slope_between = [&](double a, double b) { return du(0.5 * (a + b)); };
    const double far = du.root_bound() + std::abs(x0) + 1.0;

    for (std::size_t i = 0; i < crit.size(); ++i) {
        const double c = crit[i];
        if (std::abs(c - x0) <= 1e-12 * std::max(1.0, std::abs(x0))) continue;
        const double before = slope_between(i == 0 ? c - far : crit[i - 1], c);
        const double after = slope_between(c, i + 1 == crit.size() ? c + far : crit[i + 1]);
        if (!(before > 0.0 && after < 0.0)) continue;  // not a local maximum
        if (c > x0) {
            if (!info.right_x || c < *info.right_x) info.right_x = c;
        } else {
            if (!info.left_x || c > *info.left_x) info.left_x = c;
        }
    }

    if (!info.left_x && !info.right_x) return info;
    info.has_barrier = true;
    const double e_left = info.left_x ? u(*info.left_x) : std::numeric_limits<double>::infinity();
    const double e_right = info.right_x ? u(*info.right_x) : std::numeric_limits<double>::infinity();
    if (e_right <= e_left) {
        info.barrier_x = *info.right_x;
        info.barrier_energy = e_right;
    } else {
        info.barrier_x = *info.left_x;
        info.barrier_energy = e_left;
    }
    info.amplitude_limit = std::abs(info.barrier_x - x0);
    return info;
}

EnergyShell make_shell(const PolynomialPotential& u, double energy, double x_minus, double x_plus) {
    EnergyShell s{u, energy, x_minus, x_plus, {}, {}, std::nullopt, std::nullopt};
    const Polynomial q = s.q();
    s.residual = q.deflate_quadratic(x_minus, x_plus).scaled(-1.0);

    for (double r : q.real_roots()) {
        if (r >= x_minus && r <= x_plus) continue;
        s.extra_roots.push_back(r);
    }
    // A turning point that is a double root of Q (separatrix) also appears as an extra root.
    const double r_scale = std::max(std::abs(s.residual(x_minus)), std::abs(s.residual(x_plus)));
    for (double tp : {x_minus, x_plus})
        if (std::abs(s.residual(tp)) <= 1e-12 * r_scale) s.extra_roots.push_back(tp);
    std::sort(s.extra_roots.begin(), s.extra_roots.end());

    if (u.is_even()) {
        const double a = 0.5 * (x_plus - x_minus);
        s.amplitude = a;
        if (u.is_even_quartic()) {
            const Polynomial& c = u.centered();
            s.rho = 2.0 * c[4] * a * a / c[2];
        }
    }
    return s;
}

EnergyShell turning_points(const PolynomialPotential& u, double energy) {
    if (!(energy > 0.0)) throw DomainError("energy must be positive (measured from the well minimum)");
    if (energy < kMinEnergy) throw DomainError("energy below 1e-30 is treated as rest at the minimum");

    const BarrierInfo b = barrier_info(u);
    if (b.has_barrier && energy >= b.barrier_energy * (1.0 - kSeparatrixGuard)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "energy " << energy << " reaches the barrier at x = " << b.barrier_x << " (height "
            << b.barrier_energy << "): separatrix, motion is not periodic";
        throw SeparatrixError(msg.str());
    }

    const double x0 = u.minimum_x();
    const Polynomial q = u.poly().scaled(-1.0).offset(energy);
    const std::vector<double> roots = q.real_roots();
    auto above = std::upper_bound(roots.begin(), roots.end(), x0);
    if (above == roots.end() || above == roots.begin()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "no bracketing turning points around x = " << x0 << " at energy " << energy;
        throw ConvergenceError(msg.str());
    }
    return make_shell(u, energy, *(above - 1), *above);
}

EnergyShell separatrix_shell(const PolynomialPotential& u) {
    const BarrierInfo b = barrier_info(u);
    if (!b.has_barrier) throw DomainError("confining well: no separatrix energy");
    const double e = b.barrier_energy;
    const double x0 = u.minimum_x();
    const Polynomial q = u.poly().scaled(-1.0).offset(e);
    double other = 0.0;
    bool found = false;
    for (double r : q.real_roots()) {
        const bool opposite = (b.barrier_x > x0) ? (r < x0) : (r > x0);
        if (!opposite) continue;
        if (!found || std::abs(r - x0) < std::abs(other - x0)) other = r;
        found = true;
    }
    if (!found) throw ConvergenceError("separatrix shell: no turning point opposite the barrier");
    return b.barrier_x > x0 ? make_shell(u, e, other, b.barrier_x) : make_shell(u, e, b.barrier_x, other);
}

double duffing_energy(double lambda, double amplitude) {
    const double a2 = amplitude * amplitude;
    return 0.5 * a2 + 0.25 * lambda * a2 * a2;
}

double CubicFactors::x3_original() const noexcept { return minimum_x + (reflected ? -x3 : x3); }

CubicFactors cubic_factorization(const EnergyShell& shell) {
    const PolynomialPotential& u = shell.potential;
    if (!u.is_cubic()) throw UsageError("cubic factorization needs a degree-3 potential");
    const Polynomial& c = u.centered();
    const double c3 = c[3];
    CubicFactors f;
    f.reflected = c3 < 0.0;
    f.minimum_x = u.minimum_x();
    const double s = f.reflected ? -1.0 : 1.0;
    double xm = s * (shell.x_minus - f.minimum_x);
    double xp = s * (shell.x_plus - f.minimum_x);
    if (xm > xp) std::swap(xm, xp);
    f.x_minus = xm;
    f.x_plus = xp;
    // Q(y) = E - c2 y^2 - |c3| y^3 = (y+ - y)(y - y-)(b0 + b1 y) in the canonical frame.
    const Polynomial qc({shell.energy, 0.0, -c[2], -std::abs(c3)});
    const Polynomial r = qc.deflate_quadratic(xm, xp).scaled(-1.0);
    f.b1 = r[1];
    f.b0 = r[0];
    f.x3 = -f.b0 / f.b1;
    return f;
}

}  // namespace periodlab
