#include "bezbvp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bezbvp {

// Nodes are the roots of the Legendre polynomial P_n on [-1,1], found by
// Newton iteration from the Chebyshev-based initial guess, then mapped to
// [0,1]. Accurate to machine precision for the node counts used here.
QuadratureRule QuadratureRule::gauss_legendre(int n)
{
    if (n < 2) throw std::invalid_argument("Gauss-Legendre rule needs at least 2 nodes");

    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // P_n(x) and P_n'(x) by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        // map x in [-1,1] to s in [0,1]; halve weights so they sum to 1
        rule.nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - x);
        rule.nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace bezbvp
