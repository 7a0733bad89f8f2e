#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "bezbvp/bezier.hpp"
#include "bezbvp/nelder_mead.hpp"
#include "bezbvp/problem.hpp"
#include "bezbvp/quadrature.hpp"

namespace bezbvp {

// Raised when the quadratic time curve stops being (strictly) increasing,
// i.e. t'(s) falls below the monotonicity floor.
class TimeDegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite penalty assigned to candidate control points whose time curve is
// degenerate or whose state leaves the admissible region at a quadrature
// node; keeps the simplex ordering meaningful without producing NaN.
inline constexpr double kDegeneracyPenalty = 1e12;

// Floor on t'(s), scaled to the problem's time span.
inline double monotonicity_floor(const BvpProblem& problem)
{
    return 1e-9 * (problem.t_final - problem.t_initial);
}

// Quadratic Bezier representation of a candidate solution: a scalar time
// curve t(s) and a state curve x(s), both with endpoints pinned to the
// problem's boundary conditions. Only the intermediate control points
// (t1, x1) are free.
struct SDomainForm {
    BezierCurve time_curve;
    BezierCurve state_curve;

    static SDomainForm from_intermediate(const BvpProblem& problem, double t1,
                                         const Eigen::VectorXd& x1);

    double t1() const { return time_curve.control_point(1)[0]; }
    Eigen::VectorXd x1() const { return state_curve.control_point(1); }

    // the optimizer's packed view: [t1, x1...]
    Eigen::VectorXd free_parameters() const;
};

// s-domain residual
//   g_s(s) = (x'' t' - t'' x') / t'^3 - f(t(s), x(s), x'/t'),
// primes being s-derivatives. Throws TimeDegeneracyError when t'(s) is at or
// below the monotonicity floor; dynamics-domain errors propagate.
Eigen::VectorXd s_domain_residual(const SDomainForm& form, const BvpProblem& problem, double s);

struct LValue {
    double value = 0.0;     // >= 0
    bool penalized = false; // true when any node hit the degeneracy penalty
};

// Quadrature approximation of L = integral over [0,1] of g_s . g_s.
// Degenerate or inadmissible nodes yield kDegeneracyPenalty with the flag
// set; the result is always finite.
LValue evaluate_L(const SDomainForm& form, const BvpProblem& problem, const QuadratureRule& rule);

struct OptimizerConfig {
    int quadrature_nodes = 32;
    double function_tolerance = 1e-10;
    double parameter_tolerance = 1e-8;
    int max_evaluations_per_dimension = 2000;
};

struct GuessResult {
    double t1 = 0.0;
    Eigen::VectorXd x1;
    double L_min = 0.0;
    Eigen::VectorXd xdot_initial;  // extracted shooting guess x'(0)/t'(0)
    int optimizer_evaluations = 0;
    bool converged = false;
};

// Minimize L over the packed intermediate control points (t1, x1) with
// Nelder-Mead, starting from the midpoints of the boundary data, and extract
// the initial-derivative guess from the optimized curves.
GuessResult optimize_control_points(const BvpProblem& problem, const QuadratureRule& rule,
                                    const OptimizerConfig& config = {});

// xdot(t_initial) = x'(0)/t'(0), which for quadratic curves reduces to
// (x1 - x0)/(t1 - t0). Throws TimeDegeneracyError when t'(0) is degenerate.
Eigen::VectorXd extract_initial_guess(const SDomainForm& form, const BvpProblem& problem);

}  // namespace bezbvp
