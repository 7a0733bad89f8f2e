#pragma once

#include <vector>

namespace bezbvp {

// Quadrature rule on [0,1] with weights normalized to sum to 1.
struct QuadratureRule {
    std::vector<double> nodes;    // strictly inside (0,1)
    std::vector<double> weights;  // positive

    int point_count() const { return static_cast<int>(nodes.size()); }

    // Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree
    // <= 2n-1. Throws std::invalid_argument for n < 2.
    static QuadratureRule gauss_legendre(int n);
};

}  // namespace bezbvp
