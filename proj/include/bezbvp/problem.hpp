#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace bezbvp {

// Raised when dynamics are evaluated outside their admissible region
// (e.g. the gravitational singularity at ||r|| -> 0).
class DynamicsDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A two-point boundary value problem in second-order form:
//   xddot = f(t, x, xdot),  x(t_initial) = x_initial,  x(t_final) = x_final.
struct BvpProblem {
    using Dynamics =
        std::function<Eigen::VectorXd(double, const Eigen::VectorXd&, const Eigen::VectorXd&)>;
    using Admissible =
        std::function<bool(double, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

    int dimension = 0;
    Dynamics dynamics;
    Admissible admissible;  // optional; empty means everything is admissible
    double t_initial = 0.0;
    double t_final = 0.0;
    Eigen::VectorXd x_initial;
    Eigen::VectorXd x_final;
    std::string units;

    // Throws std::invalid_argument if the fields are inconsistent.
    void validate() const;

    bool is_admissible(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& xdot) const
    {
        return !admissible || admissible(t, x, xdot);
    }
};

// Time-domain residual g = xddot - f(t, x, xdot); the zero vector exactly
// when the triple satisfies the ODE. Propagates DynamicsDomainError.
Eigen::VectorXd residual(const BvpProblem& problem, double t, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& xdot, const Eigen::VectorXd& xddot);

// A residual paired with the time it was evaluated at, for tabulation.
struct ResidualSample {
    double t;
    Eigen::VectorXd g;  // finite by construction
};

ResidualSample sample_residual(const BvpProblem& problem, double t, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& xdot, const Eigen::VectorXd& xddot);

// The 1-D benchmark problem
//   xddot = (32 + 2 t^3 - x xdot) / 8,  t in [1,3],  x(1) = 17,  x(3) = 43/3,
// whose exact solution is x(t) = t^2 + 16/t.
BvpProblem make_example_1d_problem();

}  // namespace bezbvp
