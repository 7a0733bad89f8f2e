#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "bezbvp/problem.hpp"

namespace bezbvp {

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive embedded Runge-Kutta 5(4), Dormand-Prince coefficients.
struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    long max_steps = 1000000;
};

struct TrajectorySample {
    double t;
    Eigen::VectorXd x;
    Eigen::VectorXd xdot;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // accepted steps, first is (t_i, x_i, xdot_i)
    const TrajectorySample& final_sample() const { return samples.back(); }
};

// Integrate the first-order augmentation of the problem dynamics from
// (t_initial, x_initial, xdot_initial) to t_final. Throws IntegrationError on
// step exhaustion or step-size underflow, DynamicsDomainError when the
// trajectory leaves the admissible region.
Trajectory integrate_ivp(const BvpProblem& problem, const Eigen::VectorXd& xdot_initial,
                         const IntegratorConfig& config = {});

}  // namespace bezbvp
