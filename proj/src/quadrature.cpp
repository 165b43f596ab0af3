#include "nanoplate/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nanoplate {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");

    GaussRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);

    // Newton iteration on the Legendre polynomial P_n, seeded with the
    // Chebyshev-like estimate for the k-th root.  Only the lower half is
    // computed; the upper half is mirrored so the rule is exactly symmetric.
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.points(k) = -x;
        rule.points(n - 1 - k) = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights(k) = w;
        rule.weights(n - 1 - k) = w;
    }
    if (n % 2 == 1) rule.points(n / 2) = 0.0;
    return rule;
}

}  // namespace nanoplate
