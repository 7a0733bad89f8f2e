#include "bezbvp/problem.hpp"

namespace bezbvp {

void BvpProblem::validate() const
{
    if (dimension < 1) throw std::invalid_argument("problem dimension must be >= 1");
    if (!dynamics) throw std::invalid_argument("problem dynamics must be set");
    if (!(t_final > t_initial)) throw std::invalid_argument("t_final must exceed t_initial");
    if (x_initial.size() != dimension || x_final.size() != dimension)
        throw std::invalid_argument("boundary states must have the problem dimension");
}

Eigen::VectorXd residual(const BvpProblem& problem, double t, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& xdot, const Eigen::VectorXd& xddot)
{
    if (!problem.is_admissible(t, x, xdot))
        throw DynamicsDomainError("state at t=" + std::to_string(t) +
                                  " is outside the dynamics' admissible region");
    return xddot - problem.dynamics(t, x, xdot);
}

ResidualSample sample_residual(const BvpProblem& problem, double t, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& xdot, const Eigen::VectorXd& xddot)
{
    Eigen::VectorXd g = residual(problem, t, x, xdot, xddot);
    if (!g.allFinite())
        throw DynamicsDomainError("residual is not finite at t=" + std::to_string(t));
    return {t, std::move(g)};
}

BvpProblem make_example_1d_problem()
{
    BvpProblem p;
    p.dimension = 1;
    p.t_initial = 1.0;
    p.t_final = 3.0;
    p.x_initial = Eigen::VectorXd::Constant(1, 17.0);
    p.x_final = Eigen::VectorXd::Constant(1, 43.0 / 3.0);
    p.units = "dimensionless";
    p.dynamics = [](double t, const Eigen::VectorXd& x, const Eigen::VectorXd& xdot) {
        Eigen::VectorXd a(1);
        a[0] = (32.0 + 2.0 * t * t * t - x[0] * xdot[0]) / 8.0;
        return a;
    };
    return p;
}

}  // namespace bezbvp
