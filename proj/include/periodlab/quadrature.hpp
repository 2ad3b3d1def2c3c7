#pragma once

#include <memory>
#include <vector>

namespace periodlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule; safe to call concurrently.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

/// Default relative tolerance of the node-doubling quadrature (1e-13), or the
/// value of PERIODLAB_TOL when set to a positive number.
double quadrature_tolerance();

}  // namespace periodlab
