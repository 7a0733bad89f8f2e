#pragma once

#include <vector>

#include <Eigen/Core>

namespace bezbvp {

// Binomial coefficient C(n, k) via the multiplicative recurrence; exact in
// double for every n reachable through the curve API.
double binomial_coefficient(int n, int k);

// Bernstein basis polynomial b_{n,k}(s) = C(n,k) s^k (1-s)^(n-k) on [0,1].
// 0^0 is taken as 1, so the endpoint values are exact.
// Throws std::domain_error for k outside [0,n] or s outside [0,1].
double bernstein(int n, int k, double s);

// Non-rational Bezier curve of degree n with n+1 control points of equal
// dimension. Control points are immutable after construction.
class BezierCurve {
public:
    // Throws std::invalid_argument unless there are >= 2 control points of
    // identical nonzero dimension.
    explicit BezierCurve(std::vector<Eigen::VectorXd> control_points);

    static BezierCurve quadratic(const Eigen::VectorXd& p0,
                                 const Eigen::VectorXd& p1,
                                 const Eigen::VectorXd& p2);
    // Scalar convenience (dimension-1 curve, used for the time map t(s)).
    static BezierCurve quadratic(double p0, double p1, double p2);

    int degree() const { return static_cast<int>(points_.size()) - 1; }
    Eigen::Index dimension() const { return points_.front().size(); }
    const Eigen::VectorXd& control_point(int k) const { return points_.at(static_cast<size_t>(k)); }
    const std::vector<Eigen::VectorXd>& control_points() const { return points_; }

    // B(s) for s in [0,1]. Endpoints return P0 / Pn bit-for-bit.
    Eigen::VectorXd evaluate(double s) const;

    struct Derivatives {
        Eigen::VectorXd first;   // dB/ds
        Eigen::VectorXd second;  // d2B/ds2 (zero vector for degree 1)
    };
    // Analytic s-derivatives; throws std::domain_error for s outside [0,1].
    Derivatives derivatives(double s) const;

private:
    std::vector<Eigen::VectorXd> points_;
};

}  // namespace bezbvp
