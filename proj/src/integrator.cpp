#include "bezbvp/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace bezbvp {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

Trajectory integrate_ivp(const BvpProblem& problem, const Eigen::VectorXd& xdot_initial,
                         const IntegratorConfig& config)
{
    problem.validate();
    if (xdot_initial.size() != problem.dimension)
        throw std::invalid_argument("initial derivative has wrong dimension");
    if (!xdot_initial.allFinite())
        throw std::invalid_argument("initial derivative must be finite");

    const int m = problem.dimension;
    const Eigen::Index n = 2 * m;

    // first-order augmentation y = [x; xdot]
    auto rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
        const Eigen::VectorXd x = y.head(m);
        const Eigen::VectorXd v = y.tail(m);
        if (!problem.is_admissible(t, x, v))
            throw DynamicsDomainError("trajectory left the admissible region at t=" +
                                      std::to_string(t));
        Eigen::VectorXd dy(n);
        dy.head(m) = v;
        dy.tail(m) = problem.dynamics(t, x, v);
        return dy;
    };

    const double t_end = problem.t_final;
    double t = problem.t_initial;
    Eigen::VectorXd y(n);
    y.head(m) = problem.x_initial;
    y.tail(m) = xdot_initial;

    Trajectory traj;
    traj.samples.push_back({t, problem.x_initial, xdot_initial});

    Eigen::VectorXd k1 = rhs(t, y);

    // initial step size heuristic (Hairer/Norsett/Wanner I.4)
    auto error_scale = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return (config.atol + config.rtol * a.cwiseAbs().cwiseMax(b.cwiseAbs()).array()).matrix();
    };
    double h;
    {
        const Eigen::VectorXd sc = error_scale(y, y);
        const double d0 = std::sqrt((y.array() / sc.array()).square().mean());
        const double d1 = std::sqrt((k1.array() / sc.array()).square().mean());
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, t_end - t);
        const Eigen::VectorXd y1 = y + h0 * k1;
        const Eigen::VectorXd f1 = rhs(t + h0, y1);
        const double d2 = std::sqrt(((f1 - k1).array() / sc.array()).square().mean()) / h0;
        double h1;
        if (std::max(d1, d2) <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        h = std::min({100.0 * h0, h1, t_end - t});
    }

    Eigen::VectorXd k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y5(n), yerr(n);
    for (long step = 0; step < config.max_steps; ++step) {
        if (t >= t_end) break;
        h = std::min(h, t_end - t);
        if (t + h == t) throw IntegrationError("step size underflow at t=" + std::to_string(t));

        k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, y5);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const Eigen::VectorXd sc = error_scale(y, y5);
        const double err = std::sqrt((yerr.array() / sc.array()).square().mean());

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            traj.samples.push_back({t, y.head(m), y.tail(m)});
            if (t >= t_end) break;
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 10.0);
        h *= factor;
    }
    if (t < t_end)
        throw IntegrationError("step limit exhausted before reaching t_final (t=" +
                               std::to_string(t) + ")");
    return traj;
}

}  // namespace bezbvp
