#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace periodlab {

/// Dense real polynomial, coefficients in ascending powers: p(x) = sum c[k] x^k.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const noexcept { return c_; }
    /// Degree after trimming trailing zeros; the zero polynomial reports 0.
    std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
    double operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }
    bool is_zero() const noexcept { return c_.empty(); }

    double operator()(double x) const noexcept;
    /// Running error bound for Horner evaluation at x (sum |c_k| |x|^k scaled by eps).
    double eval_error_bound(double x) const noexcept;

    Polynomial derivative() const;
    /// q(y) = p(y + x0).
    Polynomial shifted(double x0) const;
    Polynomial scaled(double factor) const;
    /// Adds `value` to the constant term.
    Polynomial offset(double value) const;

    /// Divides by (x - a)(x - b) and drops the remainder. Synthetic division runs
    /// from the leading coefficient down, which stays stable for small |a|, |b|.
    Polynomial deflate_quadratic(double a, double b) const;

    /// Product (x - a)(x - b) * this.
    Polynomial times_quadratic(double a, double b) const;

    /// All real roots in [lo, hi], ascending. Roots are isolated between the
    /// real roots of the derivative (recursively) and polished by safeguarded
    /// Newton inside each monotone bracket. A critical point where |p| is below
    /// the evaluation error bound is reported as a (multiple) root.
    std::vector<double> real_roots(double lo, double hi) const;
    /// All real roots, using the Cauchy bound as the search interval.
    std::vector<double> real_roots() const;

    /// Cauchy upper bound on |root|.
    double root_bound() const noexcept;

private:
    std::vector<double> c_;
};

/// Polishes a root of p inside [a, b] where p(a) and p(b) have opposite signs
/// (or one of them vanishes). Converges to the bracket limit of representable doubles.
double polish_root(const Polynomial& p, const Polynomial& dp, double a, double b);

}  // namespace periodlab
