#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bezbvp/quadrature.hpp"

using bezbvp::QuadratureRule;

TEST_CASE("gauss-legendre rules are normalized and interior")
{
    for (int n : {2, 3, 5, 8, 16, 32, 64}) {
        const auto rule = QuadratureRule::gauss_legendre(n);
        REQUIRE(rule.point_count() == n);
        const double wsum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
        CHECK(std::abs(wsum - 1.0) < 1e-12);
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            CHECK(rule.nodes[j] > 0.0);
            CHECK(rule.nodes[j] < 1.0);
            CHECK(rule.weights[j] > 0.0);
        }
    }
    CHECK_THROWS_AS(QuadratureRule::gauss_legendre(1), std::invalid_argument);
}

TEST_CASE("polynomial exactness to degree 2n-1")
{
    // integral of s^p over [0,1] is 1/(p+1); a 5-node rule is exact to p=9
    const auto rule5 = QuadratureRule::gauss_legendre(5);
    for (int p = 0; p <= 9; ++p) {
        double q = 0.0;
        for (size_t j = 0; j < rule5.nodes.size(); ++j)
            q += rule5.weights[j] * std::pow(rule5.nodes[j], p);
        CHECK(std::abs(q - 1.0 / (p + 1.0)) < 1e-12);
    }

    // and the default 32-node rule handles much higher degrees
    const auto rule32 = QuadratureRule::gauss_legendre(32);
    for (int p : {20, 41, 63}) {
        double q = 0.0;
        for (size_t j = 0; j < rule32.nodes.size(); ++j)
            q += rule32.weights[j] * std::pow(rule32.nodes[j], p);
        CHECK(std::abs(q - 1.0 / (p + 1.0)) < 1e-12);
    }
}

TEST_CASE("smooth non-polynomial integrand")
{
    const auto rule = QuadratureRule::gauss_legendre(32);
    double q = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) q += rule.weights[j] * std::exp(rule.nodes[j]);
    CHECK(q == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}
