#include "bezbvp/shooting.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Dense>

namespace bezbvp {

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool same_sign(double a, double b) { return (a > 0.0) == (b > 0.0); }

}  // namespace

Eigen::VectorXd terminal_miss(const BvpProblem& problem, const Eigen::VectorXd& xdot_initial,
                              const IntegratorConfig& config)
{
    const Trajectory traj = integrate_ivp(problem, xdot_initial, config);
    return traj.final_sample().x - problem.x_final;
}

ShootingOutcome shoot_1d(const BvpProblem& problem, double guess, const ShootingConfig& config)
{
    problem.validate();
    if (problem.dimension != 1)
        throw std::invalid_argument("shoot_1d requires a one-dimensional problem");

    const Stopwatch clock;
    ShootingOutcome out;
    out.xdot_initial = Eigen::VectorXd::Constant(1, guess);

    auto miss = [&](double v) {
        ++out.function_evaluations;
        return terminal_miss(problem, Eigen::VectorXd::Constant(1, v), config.integrator)[0];
    };
    auto fail = [&](const std::string& what) -> ShootingFailure {
        out.wall_time_s = clock.seconds();
        return ShootingFailure(what, out);
    };

    const double tol = config.boundary_tolerance;
    const double x0 = guess;

    double a = x0, b = x0;
    double fb = miss(x0);
    double fa = fb;
    ++out.bracket_evaluations;
    out.terminal_residual = std::abs(fb);

    if (std::abs(fb) <= tol) {
        out.converged = true;
        out.wall_time_s = clock.seconds();
        return out;
    }

    // Phase 1: widen a symmetric interval about the guess until the terminal
    // miss changes sign, growing by sqrt(2) each round.
    double dx = (x0 != 0.0) ? std::abs(x0) / 50.0 : 1.0 / 50.0;
    const double sqrt2 = std::sqrt(2.0);
    while (same_sign(fa, fb)) {
        if (out.iterations_bracket >= config.max_bracket_expansions)
            throw fail("no sign change found within the bracket expansion limit");
        ++out.iterations_bracket;
        dx *= sqrt2;
        a = x0 - dx;
        fa = miss(a);
        ++out.bracket_evaluations;
        if (!same_sign(fa, fb) || fa == 0.0) break;
        b = x0 + dx;
        fb = miss(b);
        ++out.bracket_evaluations;
        if (fb == 0.0) break;
    }

    // Phase 2: Brent's method (bisection + inverse quadratic interpolation)
    // on the bracket, stopping on |F| <= tol.
    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        if (same_sign(fb, fc)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        out.xdot_initial[0] = b;
        out.terminal_residual = std::abs(fb);
        if (std::abs(fb) <= tol) {
            out.converged = true;
            break;
        }

        const double m = 0.5 * (c - b);
        const double toler = 2.0 * eps * std::max(std::abs(b), 1.0);
        if (std::abs(m) <= toler)
            throw fail("root phase stagnated before reaching the boundary tolerance");
        if (out.iterations_root >= config.max_root_iterations)
            throw fail("root iteration limit exceeded");

        if (std::abs(e) < toler || std::abs(fa) <= std::abs(fb)) {
            d = m;
            e = m;
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < 3.0 * m * q - std::abs(toler * q) && p < std::abs(0.5 * e * q)) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }

        a = b;
        fa = fb;
        if (std::abs(d) > toler)
            b += d;
        else
            b += (m > 0.0) ? toler : -toler;
        fb = miss(b);
        ++out.iterations_root;
    }

    out.wall_time_s = clock.seconds();
    return out;
}

ShootingOutcome shoot_nd(const BvpProblem& problem, const Eigen::VectorXd& guess,
                         const ShootingConfig& config)
{
    problem.validate();
    const int m = problem.dimension;
    if (m < 2) throw std::invalid_argument("shoot_nd requires dimension >= 2");
    if (guess.size() != m) throw std::invalid_argument("guess has wrong dimension");

    const Stopwatch clock;
    ShootingOutcome out;
    out.xdot_initial = guess;

    auto fail = [&](const std::string& what) -> ShootingFailure {
        out.wall_time_s = clock.seconds();
        return ShootingFailure(what, out);
    };
    auto miss = [&](const Eigen::VectorXd& v) {
        ++out.function_evaluations;
        return terminal_miss(problem, v, config.integrator);
    };

    Eigen::VectorXd v = guess;
    Eigen::VectorXd F;
    try {
        F = miss(v);
    } catch (const std::runtime_error& err) {
        throw fail(std::string("initial trajectory failed: ") + err.what());
    }
    ++out.bracket_evaluations;  // the setup evaluation at the guess
    double normF = F.norm();
    out.terminal_residual = normF;

    const double tol = config.boundary_tolerance;
    Eigen::MatrixXd jac(m, m);
    while (normF > tol) {
        if (out.iterations_root >= config.max_newton_iterations)
            throw fail("Newton iteration limit exceeded");

        for (int j = 0; j < m; ++j) {
            const double h = config.jacobian_step * (1.0 + std::abs(v[j]));
            Eigen::VectorXd vj = v;
            vj[j] += h;
            Eigen::VectorXd Fj;
            try {
                Fj = miss(vj);
            } catch (const std::runtime_error& err) {
                throw fail(std::string("Jacobian trajectory failed: ") + err.what());
            }
            ++out.jacobian_evaluations;
            jac.col(j) = (Fj - F) / h;
        }

        const Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (!lu.isInvertible() || lu.rcond() < 1e-14)
            throw fail("shooting Jacobian is singular to working precision");
        const Eigen::VectorXd step = lu.solve(-F);

        // backtracking on ||F||, factor 1/2
        double lambda = 1.0;
        bool accepted = false;
        Eigen::VectorXd v_next, F_next;
        for (int trial = 0; trial <= config.max_damping_rejections; ++trial) {
            v_next = v + lambda * step;
            bool trial_ok = true;
            try {
                F_next = miss(v_next);
            } catch (const DynamicsDomainError&) {
                trial_ok = false;  // trial trajectory crashed; treat as a rejection
            } catch (const IntegrationError&) {
                trial_ok = false;
            }
            if (trial_ok && F_next.norm() < normF) {
                accepted = true;
                break;
            }
            ++out.damping_rejections;
            lambda *= 0.5;
        }
        if (!accepted) throw fail("Newton damping underflow (no decrease in the terminal miss)");

        v = v_next;
        F = F_next;
        normF = F.norm();
        ++out.iterations_root;
        out.xdot_initial = v;
        out.terminal_residual = normF;
    }

    out.converged = true;
    out.wall_time_s = clock.seconds();
    return out;
}

ShootingOutcome shoot(const BvpProblem& problem, const Eigen::VectorXd& guess,
                      const ShootingConfig& config)
{
    if (problem.dimension == 1) return shoot_1d(problem, guess[0], config);
    return shoot_nd(problem, guess, config);
}

}  // namespace bezbvp
