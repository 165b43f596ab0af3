#pragma once

#include <Eigen/Core>

namespace nanoplate {

/// One-dimensional quadrature rule on the reference interval [-1, 1].
struct GaussRule {
    Eigen::VectorXd points;
    Eigen::VectorXd weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// Gauss-Legendre rule with n points (exact for polynomials of degree 2n-1).
/// The rule is built symmetric: points[i] == -points[n-1-i] bitwise, so
/// odd integrands cancel exactly when accumulated in mirrored pairs.
GaussRule gauss_legendre(int n);

}  // namespace nanoplate
