#include "bezbvp/guess.hpp"

#include <cmath>
#include <string>

namespace bezbvp {

SDomainForm SDomainForm::from_intermediate(const BvpProblem& problem, double t1,
                                           const Eigen::VectorXd& x1)
{
    problem.validate();
    if (x1.size() != problem.dimension)
        throw std::invalid_argument("intermediate state control point has wrong dimension");
    return SDomainForm{
        BezierCurve::quadratic(problem.t_initial, t1, problem.t_final),
        BezierCurve::quadratic(problem.x_initial, x1, problem.x_final),
    };
}

Eigen::VectorXd SDomainForm::free_parameters() const
{
    Eigen::VectorXd packed(1 + state_curve.dimension());
    packed[0] = t1();
    packed.tail(state_curve.dimension()) = x1();
    return packed;
}

namespace {

struct CurveState {
    double t, tp, tpp;
    Eigen::VectorXd x, xp, xpp;
};

CurveState curve_state(const SDomainForm& form, double s)
{
    const auto td = form.time_curve.derivatives(s);
    const auto xd = form.state_curve.derivatives(s);
    return CurveState{form.time_curve.evaluate(s)[0], td.first[0], td.second[0],
                      form.state_curve.evaluate(s), xd.first, xd.second};
}

Eigen::VectorXd residual_from_state(const CurveState& c, const BvpProblem& problem)
{
    const double tp3 = c.tp * c.tp * c.tp;
    const Eigen::VectorXd xdot = c.xp / c.tp;
    const Eigen::VectorXd xddot = (c.xpp * c.tp - c.tpp * c.xp) / tp3;
    return xddot - problem.dynamics(c.t, c.x, xdot);
}

}  // namespace

Eigen::VectorXd s_domain_residual(const SDomainForm& form, const BvpProblem& problem, double s)
{
    const CurveState c = curve_state(form, s);
    if (!(c.tp > monotonicity_floor(problem)))
        throw TimeDegeneracyError("time curve degenerate at s=" + std::to_string(s) +
                                  " (t'=" + std::to_string(c.tp) + ")");
    const Eigen::VectorXd xdot = c.xp / c.tp;
    if (!problem.is_admissible(c.t, c.x, xdot))
        throw DynamicsDomainError("curve leaves admissible region at s=" + std::to_string(s));
    return residual_from_state(c, problem);
}

LValue evaluate_L(const SDomainForm& form, const BvpProblem& problem, const QuadratureRule& rule)
{
    const double floor = monotonicity_floor(problem);
    double total = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const CurveState c = curve_state(form, rule.nodes[j]);
        if (!(c.tp > floor)) return {kDegeneracyPenalty, true};
        if (!problem.is_admissible(c.t, c.x, c.xp / c.tp)) return {kDegeneracyPenalty, true};

        Eigen::VectorXd g;
        try {
            g = residual_from_state(c, problem);
        } catch (const DynamicsDomainError&) {
            return {kDegeneracyPenalty, true};
        }
        if (!g.allFinite()) return {kDegeneracyPenalty, true};
        total += rule.weights[j] * g.squaredNorm();
    }
    return {total, false};
}

GuessResult optimize_control_points(const BvpProblem& problem, const QuadratureRule& rule,
                                    const OptimizerConfig& config)
{
    problem.validate();
    const int m = problem.dimension;

    Eigen::VectorXd start(1 + m);
    start[0] = 0.5 * (problem.t_initial + problem.t_final);
    start.tail(m) = 0.5 * (problem.x_initial + problem.x_final);

    auto unpack = [&problem](const Eigen::VectorXd& p) {
        return SDomainForm::from_intermediate(problem, p[0], p.tail(p.size() - 1));
    };
    auto objective = [&](const Eigen::VectorXd& p) {
        return evaluate_L(unpack(p), problem, rule).value;
    };

    SimplexOptions opts;
    opts.function_tolerance = config.function_tolerance;
    opts.parameter_tolerance = config.parameter_tolerance;
    opts.max_evaluations = config.max_evaluations_per_dimension * (1 + m);
    const SimplexResult sr = minimize_simplex(objective, start, opts);

    const SDomainForm best = unpack(sr.x);
    GuessResult result;
    result.t1 = best.t1();
    result.x1 = best.x1();
    result.L_min = sr.value;
    result.xdot_initial = extract_initial_guess(best, problem);
    result.optimizer_evaluations = sr.evaluations;
    result.converged = sr.converged;
    return result;
}

Eigen::VectorXd extract_initial_guess(const SDomainForm& form, const BvpProblem& problem)
{
    const auto td = form.time_curve.derivatives(0.0);
    if (!(td.first[0] > monotonicity_floor(problem)))
        throw TimeDegeneracyError("t'(0) degenerate; cannot extract an initial derivative");
    return form.state_curve.derivatives(0.0).first / td.first[0];
}

}  // namespace bezbvp
