#include "bezbvp/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace bezbvp {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

SimplexResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& start, const SimplexOptions& options)
{
    const int n = static_cast<int>(start.size());
    const int max_evals =
        options.max_evaluations > 0 ? options.max_evaluations : 2000 * std::max(n, 1);

    std::vector<Eigen::VectorXd> vertex;
    vertex.reserve(static_cast<size_t>(n) + 1);
    vertex.push_back(start);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd y = start;
        y[i] = (y[i] != 0.0) ? 1.05 * y[i] : 0.00025;
        vertex.push_back(y);
    }

    std::vector<double> value(vertex.size());
    int evals = 0;
    for (size_t i = 0; i < vertex.size(); ++i) {
        value[i] = objective(vertex[i]);
        ++evals;
    }

    std::vector<size_t> order(vertex.size());
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return value[a] < value[b]; });
        std::vector<Eigen::VectorXd> v2;
        std::vector<double> f2;
        v2.reserve(vertex.size());
        f2.reserve(vertex.size());
        for (size_t idx : order) {
            v2.push_back(vertex[idx]);
            f2.push_back(value[idx]);
        }
        vertex.swap(v2);
        value.swap(f2);
    };

    bool converged = false;
    while (true) {
        sort_simplex();

        double fspread = 0.0, xspread = 0.0;
        for (size_t i = 1; i < vertex.size(); ++i) {
            fspread = std::max(fspread, std::abs(value[i] - value[0]));
            xspread = std::max(xspread, (vertex[i] - vertex[0]).cwiseAbs().maxCoeff());
        }
        if (fspread <= options.function_tolerance && xspread <= options.parameter_tolerance) {
            converged = true;
            break;
        }
        if (evals >= max_evals) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (size_t i = 0; i + 1 < vertex.size(); ++i) centroid += vertex[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd& worst = vertex.back();
        const double fworst = value.back();
        const double fbest = value.front();
        const double fsecond_worst = value[vertex.size() - 2];

        const Eigen::VectorXd reflected = centroid + kReflect * (centroid - worst);
        const double freflected = objective(reflected);
        ++evals;

        if (freflected < fbest) {
            const Eigen::VectorXd expanded = centroid + kExpand * kReflect * (centroid - worst);
            const double fexpanded = objective(expanded);
            ++evals;
            if (fexpanded < freflected) {
                vertex.back() = expanded;
                value.back() = fexpanded;
            } else {
                vertex.back() = reflected;
                value.back() = freflected;
            }
        } else if (freflected < fsecond_worst) {
            vertex.back() = reflected;
            value.back() = freflected;
        } else {
            bool shrink = false;
            if (freflected < fworst) {
                const Eigen::VectorXd outside =
                    centroid + kContract * kReflect * (centroid - worst);
                const double foutside = objective(outside);
                ++evals;
                if (foutside <= freflected) {
                    vertex.back() = outside;
                    value.back() = foutside;
                } else {
                    shrink = true;
                }
            } else {
                const Eigen::VectorXd inside = centroid - kContract * (centroid - worst);
                const double finside = objective(inside);
                ++evals;
                if (finside < fworst) {
                    vertex.back() = inside;
                    value.back() = finside;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (size_t i = 1; i < vertex.size(); ++i) {
                    vertex[i] = vertex[0] + kShrink * (vertex[i] - vertex[0]);
                    value[i] = objective(vertex[i]);
                    ++evals;
                }
            }
        }
    }

    sort_simplex();
    SimplexResult result;
    result.x = vertex.front();
    result.value = value.front();
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

}  // namespace bezbvp
