#include "periodlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace periodlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval_error_bound(double x) const noexcept {
    const double ax = std::abs(x);
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
    return 4.0 * static_cast<double>(c_.size() + 1) * kEps * acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double x0) const {
    std::vector<double> a = c_;
    const std::size_t n = a.size();
    // Repeated synthetic division by (y - x0) yields the Taylor coefficients at x0.
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += x0 * a[k];
    return Polynomial(std::move(a));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> a = c_;
    for (auto& v : a) v *= factor;
    return Polynomial(std::move(a));
}

Polynomial Polynomial::offset(double value) const {
    std::vector<double> a = c_;
    if (a.empty()) a.push_back(0.0);
    a[0] += value;
    return Polynomial(std::move(a));
}

Polynomial Polynomial::deflate_quadratic(double a, double b) const {
    const std::size_t n = c_.size();
    if (n < 3) return Polynomial{};
    const double s = a + b;
    const double p = a * b;
    std::vector<double> q(n - 2, 0.0);
    // x^2 - s x + p divides from the top down.
    for (std::size_t k = n - 2; k-- > 0;) {
        double v = c_[k + 2];
        if (k + 1 < n - 2) v += s * q[k + 1];
        if (k + 2 < n - 2) v -= p * q[k + 2];
        q[k] = v;
    }
    return Polynomial(std::move(q));
}

Polynomial Polynomial::times_quadratic(double a, double b) const {
    if (c_.empty()) return Polynomial{};
    const double s = a + b;
    const double p = a * b;
    std::vector<double> r(c_.size() + 2, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        r[k + 2] += c_[k];
        r[k + 1] -= s * c_[k];
        r[k] += p * c_[k];
    }
    return Polynomial(std::move(r));
}

double Polynomial::root_bound() const noexcept {
    if (c_.size() < 2) return 1.0;
    const double lead = std::abs(c_.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) m = std::max(m, std::abs(c_[k]) / lead);
    return 1.0 + m;
}

double polish_root(const Polynomial& p, const Polynomial& dp, double a, double b) {
    double fa = p(a);
    if (fa == 0.0) return a;
    if (p(b) == 0.0) return b;

    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 400; ++iter) {
        const double fx = p(x);
        if (fx == 0.0) return x;
        if (sign_of(fx) == sign_of(fa)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        const double width = b - a;
        if (width <= 2.0 * kEps * std::max(std::abs(a), std::abs(b)) ||
            width <= std::numeric_limits<double>::min())
            break;

        const double d = dp(x);
        double next = (d != 0.0) ? x - fx / d : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        const double step = std::abs(next - x);
        x = next;
        if (step <= kEps * std::abs(x)) break;
    }
    return x;
}

std::vector<double> Polynomial::real_roots(double lo, double hi) const {
    std::vector<double> roots;
    const std::size_t n = degree();
    if (c_.empty() || n == 0 || !(lo <= hi)) return roots;
    if (n == 1) {
        const double r = -c_[0] / c_[1];
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }

    const Polynomial dp = derivative();
    std::vector<double> pts;
    pts.push_back(lo);
    for (double c : dp.real_roots(lo, hi))
        if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);

    std::vector<double> vals(pts.size());
    std::vector<bool> vanishes(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = (*this)(pts[i]);
        vanishes[i] = std::abs(vals[i]) <= eval_error_bound(pts[i]);
    }

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (vanishes[i]) roots.push_back(pts[i]);
        if (i + 1 == pts.size()) break;
        if (vanishes[i] || vanishes[i + 1]) continue;
        if (sign_of(vals[i]) * sign_of(vals[i + 1]) < 0)
            roots.push_back(polish_root(*this, dp, pts[i], pts[i + 1]));
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double u, double v) {
                                return std::abs(u - v) <= 4.0 * kEps * std::max(std::abs(u), std::abs(v));
                            }),
                roots.end());
    return roots;
}

std::vector<double> Polynomial::real_roots() const {
    const double b = root_bound();
    return real_roots(-b, b);
}

}  // namespace periodlab
