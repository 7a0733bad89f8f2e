#include "bezbvp/bezier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bezbvp {

namespace {

// s^k with 0^0 = 1, exact at the endpoints.
double ipow(double s, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= s;
    return r;
}

void check_parameter(double s)
{
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("curve parameter s=" + std::to_string(s) + " outside [0,1]");
}

// de Casteljau evaluation, numerically stable for high degrees.
Eigen::VectorXd de_casteljau(std::vector<Eigen::VectorXd> pts, double s)
{
    for (size_t level = pts.size() - 1; level > 0; --level)
        for (size_t k = 0; k < level; ++k)
            pts[k] = (1.0 - s) * pts[k] + s * pts[k + 1];
    return pts[0];
}

// Degree above which the closed-form Bernstein sum is traded for de Casteljau.
constexpr int kClosedFormMaxDegree = 10;

}  // namespace

double binomial_coefficient(int n, int k)
{
    if (k < 0 || k > n) throw std::domain_error("binomial index k outside [0,n]");
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

double bernstein(int n, int k, double s)
{
    if (n < 0) throw std::domain_error("bernstein degree must be non-negative");
    if (k < 0 || k > n) throw std::domain_error("bernstein index k outside [0,n]");
    check_parameter(s);
    return binomial_coefficient(n, k) * ipow(s, k) * ipow(1.0 - s, n - k);
}

BezierCurve::BezierCurve(std::vector<Eigen::VectorXd> control_points)
    : points_(std::move(control_points))
{
    if (points_.size() < 2)
        throw std::invalid_argument("Bezier curve needs at least two control points");
    const Eigen::Index dim = points_.front().size();
    if (dim < 1)
        throw std::invalid_argument("control points must have dimension >= 1");
    for (const auto& p : points_)
        if (p.size() != dim)
            throw std::invalid_argument("control points must all have equal dimension");
}

BezierCurve BezierCurve::quadratic(const Eigen::VectorXd& p0,
                                   const Eigen::VectorXd& p1,
                                   const Eigen::VectorXd& p2)
{
    return BezierCurve({p0, p1, p2});
}

BezierCurve BezierCurve::quadratic(double p0, double p1, double p2)
{
    auto scalar = [](double v) { return Eigen::VectorXd::Constant(1, v); };
    return BezierCurve({scalar(p0), scalar(p1), scalar(p2)});
}

Eigen::VectorXd BezierCurve::evaluate(double s) const
{
    check_parameter(s);
    if (s == 0.0) return points_.front();
    if (s == 1.0) return points_.back();

    const int n = degree();
    if (n > kClosedFormMaxDegree) return de_casteljau(points_, s);

    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dimension());
    for (int k = 0; k <= n; ++k)
        sum += bernstein(n, k, s) * points_[static_cast<size_t>(k)];
    return sum;
}

BezierCurve::Derivatives BezierCurve::derivatives(double s) const
{
    check_parameter(s);
    const int n = degree();
    Derivatives d;

    // B'(s) = n * sum_k b_{n-1,k}(s) (P_{k+1} - P_k)
    d.first = Eigen::VectorXd::Zero(dimension());
    for (int k = 0; k <= n - 1; ++k)
        d.first += bernstein(n - 1, k, s) *
                   (points_[static_cast<size_t>(k + 1)] - points_[static_cast<size_t>(k)]);
    d.first *= static_cast<double>(n);

    // B''(s) = n(n-1) * sum_k b_{n-2,k}(s) (P_{k+2} - 2 P_{k+1} + P_k)
    d.second = Eigen::VectorXd::Zero(dimension());
    if (n >= 2) {
        for (int k = 0; k <= n - 2; ++k)
            d.second += bernstein(n - 2, k, s) *
                        (points_[static_cast<size_t>(k + 2)] -
                         2.0 * points_[static_cast<size_t>(k + 1)] +
                         points_[static_cast<size_t>(k)]);
        d.second *= static_cast<double>(n) * static_cast<double>(n - 1);
    }
    return d;
}

}  // namespace bezbvp
