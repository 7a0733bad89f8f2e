#pragma once

#include <limits>
#include <stdexcept>

#include <Eigen/Core>

#include "bezbvp/integrator.hpp"
#include "bezbvp/problem.hpp"

namespace bezbvp {

struct ShootingConfig {
    IntegratorConfig integrator;
    // Convergence threshold on |x(t_f) - x_f| (1-D) or its norm (m >= 2),
    // in the problem's state units.
    double boundary_tolerance = 1e-8;
    int max_bracket_expansions = 60;
    int max_root_iterations = 100;
    int max_newton_iterations = 50;
    int max_damping_rejections = 20;
    double jacobian_step = 1e-7;  // forward-difference step scale
};

struct ShootingOutcome {
    Eigen::VectorXd xdot_initial;   // converged (or best-so-far) initial derivative
    int iterations_bracket = 0;     // 1-D bracket expansion rounds; 0 for m >= 2
    int iterations_root = 0;        // Brent steps (1-D) or accepted Newton steps
    double terminal_residual = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    double wall_time_s = 0.0;

    // evaluation accounting; see tests for the exact bookkeeping identity
    int function_evaluations = 0;  // every terminal-miss evaluation
    int bracket_evaluations = 0;   // initial evaluation(s) + bracket expansions
    int jacobian_evaluations = 0;  // miss evaluations consumed by FD Jacobian columns
    int damping_rejections = 0;    // rejected damped-Newton trial points
};

// Raised when the solver cannot continue (no bracket, stagnation, singular
// Jacobian, damping underflow, iteration cap). Carries the partial outcome.
class ShootingFailure : public std::runtime_error {
public:
    ShootingFailure(const std::string& what, ShootingOutcome outcome)
        : std::runtime_error(what), outcome(std::move(outcome)) {}
    ShootingOutcome outcome;
};

// Terminal miss F(v) = x(t_final; v) - x_final.
Eigen::VectorXd terminal_miss(const BvpProblem& problem, const Eigen::VectorXd& xdot_initial,
                              const IntegratorConfig& config = {});

// 1-D shooting: geometric bracket expansion around the guess followed by a
// Brent root phase; both iteration kinds are counted separately.
ShootingOutcome shoot_1d(const BvpProblem& problem, double guess, const ShootingConfig& config = {});

// Multi-dimensional shooting: damped Newton with a forward-difference
// Jacobian (m extra integrations per step).
ShootingOutcome shoot_nd(const BvpProblem& problem, const Eigen::VectorXd& guess,
                         const ShootingConfig& config = {});

// Dispatches on the problem dimension.
ShootingOutcome shoot(const BvpProblem& problem, const Eigen::VectorXd& guess,
                      const ShootingConfig& config = {});

}  // namespace bezbvp
