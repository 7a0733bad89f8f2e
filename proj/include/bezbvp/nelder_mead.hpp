#pragma once

#include <functional>

#include <Eigen/Core>

namespace bezbvp {

struct SimplexOptions {
    double function_tolerance = 1e-10;  // absolute spread of simplex values
    double parameter_tolerance = 1e-8;  // absolute infinity-norm spread of vertices
    int max_evaluations = 0;            // <= 0 means 2000 * dimension
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Derivative-free Nelder-Mead simplex minimization. Initial simplex perturbs
// each coordinate by 5% (0.00025 when the coordinate is zero); termination
// requires both the value spread and the vertex spread to fall below the
// tolerances.
SimplexResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& start, const SimplexOptions& options = {});

}  // namespace bezbvp
