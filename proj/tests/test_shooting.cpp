#include <doctest.h>

#include <cmath>

#include "bezbvp/orbit.hpp"
#include "bezbvp/shooting.hpp"

using bezbvp::BvpProblem;
using bezbvp::shoot_1d;
using bezbvp::shoot_nd;
using bezbvp::ShootingConfig;
using bezbvp::ShootingOutcome;
using bezbvp::terminal_miss;

namespace {

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

ShootingConfig orbit_config(double distance_unit_km)
{
    ShootingConfig cfg;
    cfg.boundary_tolerance = 1e-3 / distance_unit_km;  // 1 m
    return cfg;
}

struct CanonicalCase {
    BvpProblem problem;
    double velocity_unit;
    double distance_unit;
};

CanonicalCase canonical_case(const bezbvp::OrbitCase& c)
{
    const bezbvp::TwoBodyParams params;
    const auto scale = bezbvp::canonical_scaling(params, c.r_initial_km);
    return {bezbvp::make_two_body_problem_canonical(params, c.r_initial_km, c.r_final_km, c.tof_s),
            scale.velocity_unit_kms(), scale.distance_unit_km};
}

}  // namespace

TEST_CASE("terminal miss values")
{
    const BvpProblem p = bezbvp::make_example_1d_problem();
    CHECK(std::abs(terminal_miss(p, scalar(-14.0))[0]) < 1e-6);

    // zero dynamics with matching boundaries
    BvpProblem z;
    z.dimension = 1;
    z.t_initial = 0.0;
    z.t_final = 1.0;
    z.x_initial = scalar(2.0);
    z.x_final = scalar(2.0);
    z.dynamics = [](double, const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return Eigen::VectorXd::Zero(1);
    };
    CHECK(std::abs(terminal_miss(z, scalar(0.0))[0]) < 1e-12);

    // table-rounded converged velocity lands within the rounding-induced
    // bound: |dF/dv| ~ 1.7e3 s here, times the half-ulp 5e-4 km/s per
    // component (observed 1.4 km)
    const auto& case1 = bezbvp::builtin_catalog().find("1");
    const auto cc = canonical_case(case1);
    const Eigen::Vector3d v = case1.ref_shooting_kms / cc.velocity_unit;
    CHECK(terminal_miss(cc.problem, v).norm() * cc.distance_unit < 3.0);
}

TEST_CASE("1-D shooting from the published-style guess")
{
    const BvpProblem p = bezbvp::make_example_1d_problem();
    const ShootingOutcome out = shoot_1d(p, -14.6147, ShootingConfig{});
    CHECK(out.converged);
    CHECK(out.xdot_initial[0] == doctest::Approx(-14.0).epsilon(1e-7));
    CHECK(out.terminal_residual < 1e-8);
    CHECK(out.iterations_bracket <= 5);  // paper-scale: a handful of expansions
    CHECK(out.iterations_root > 0);
    CHECK(out.wall_time_s >= 0.0);
}

TEST_CASE("1-D shooting from an arbitrary far guess still converges")
{
    const BvpProblem p = bezbvp::make_example_1d_problem();
    const ShootingOutcome far = shoot_1d(p, 0.0, ShootingConfig{});
    CHECK(far.converged);
    CHECK(far.xdot_initial[0] == doctest::Approx(-14.0).epsilon(1e-7));

    const ShootingOutcome near = shoot_1d(p, -14.6147, ShootingConfig{});
    // monotone benefit: the informed guess needs no more expansions
    CHECK(near.iterations_bracket <= far.iterations_bracket);
    // the x/50-then-sqrt(2) widening schedule needs 19 rounds from zero
    CHECK(far.iterations_bracket == 19);
}

TEST_CASE("1-D trivial linear problem converges immediately")
{
    BvpProblem p;
    p.dimension = 1;
    p.t_initial = 0.0;
    p.t_final = 1.0;
    p.x_initial = scalar(0.0);
    p.x_final = scalar(1.0);
    p.dynamics = [](double, const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return Eigen::VectorXd::Zero(1);
    };
    const ShootingOutcome out = shoot_1d(p, 1.0, ShootingConfig{});
    CHECK(out.converged);
    CHECK(out.iterations_root <= 1);
    CHECK(out.xdot_initial[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("1-D evaluation bookkeeping identity")
{
    const BvpProblem p = bezbvp::make_example_1d_problem();
    for (double guess : {-14.6147, 0.0, -20.0}) {
        const ShootingOutcome out = shoot_1d(p, guess, ShootingConfig{});
        CHECK(out.function_evaluations ==
              out.bracket_evaluations + out.iterations_root + out.jacobian_evaluations);
    }
}

TEST_CASE("bracket failure raises ShootingFailure with the partial outcome")
{
    // F(v) = x(1) - 10 with zero dynamics never changes sign for v > 0 within
    // a few expansions when capped
    BvpProblem p;
    p.dimension = 1;
    p.t_initial = 0.0;
    p.t_final = 1.0;
    p.x_initial = scalar(0.0);
    p.x_final = scalar(1e9);
    p.dynamics = [](double, const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return Eigen::VectorXd::Zero(1);
    };
    ShootingConfig cfg;
    cfg.max_bracket_expansions = 8;
    CHECK_THROWS_AS(shoot_1d(p, 1.0, cfg), bezbvp::ShootingFailure);
    try {
        shoot_1d(p, 1.0, cfg);
    } catch (const bezbvp::ShootingFailure& failure) {
        CHECK_FALSE(failure.outcome.converged);
        CHECK(failure.outcome.iterations_bracket == 8);
    }
}

TEST_CASE("newton shooting on catalog cases from the published guesses")
{
    for (const char* id : {"1", "3-3"}) {
        const auto& c = bezbvp::builtin_catalog().find(id);
        const auto cc = canonical_case(c);
        const Eigen::Vector3d guess = c.ref_guess_kms / cc.velocity_unit;
        const ShootingOutcome out = shoot_nd(cc.problem, guess, orbit_config(cc.distance_unit));
        CHECK(out.converged);
        const Eigen::Vector3d v = out.xdot_initial * cc.velocity_unit;
        for (int i = 0; i < 3; ++i) CHECK(std::abs(v[i] - c.ref_shooting_kms[i]) < 0.005);
        CHECK(std::abs(v.norm() - c.ref_speed_kms) < 0.001);
        CHECK(out.iterations_bracket == 0);
    }
}

TEST_CASE("newton from the exact solution takes at most one step")
{
    const auto& c = bezbvp::builtin_catalog().find("2-2");
    const auto cc = canonical_case(c);
    const Eigen::Vector3d guess = c.ref_guess_kms / cc.velocity_unit;
    const ShootingOutcome first = shoot_nd(cc.problem, guess, orbit_config(cc.distance_unit));
    REQUIRE(first.converged);
    const ShootingOutcome again =
        shoot_nd(cc.problem, first.xdot_initial, orbit_config(cc.distance_unit));
    CHECK(again.converged);
    CHECK(again.iterations_root <= 1);
}

TEST_CASE("newton evaluation bookkeeping identity")
{
    const auto& c = bezbvp::builtin_catalog().find("2-1");
    const auto cc = canonical_case(c);
    const Eigen::Vector3d guess = c.ref_guess_kms / cc.velocity_unit;
    const ShootingOutcome out = shoot_nd(cc.problem, guess, orbit_config(cc.distance_unit));
    CHECK(out.function_evaluations == out.bracket_evaluations + out.jacobian_evaluations +
                                          out.iterations_root + out.damping_rejections);
}

TEST_CASE("shooting soundness: converged outcomes re-verify by independent integration")
{
    for (const char* id : {"1", "2-3"}) {
        const auto& c = bezbvp::builtin_catalog().find(id);
        const auto cc = canonical_case(c);
        const ShootingOutcome out = shoot_nd(cc.problem, c.ref_guess_kms / cc.velocity_unit,
                                             orbit_config(cc.distance_unit));
        REQUIRE(out.converged);
        const Eigen::VectorXd miss = terminal_miss(cc.problem, out.xdot_initial);
        CHECK(miss.norm() <= 1e-3 / cc.distance_unit);
    }
}

TEST_CASE("newton iteration cap raises ShootingFailure")
{
    const auto& c = bezbvp::builtin_catalog().find("3-3");
    const auto cc = canonical_case(c);
    ShootingConfig cfg = orbit_config(cc.distance_unit);
    cfg.max_newton_iterations = 1;
    CHECK_THROWS_AS(shoot_nd(cc.problem, c.ref_guess_kms / cc.velocity_unit, cfg),
                    bezbvp::ShootingFailure);
}

TEST_CASE("dimension dispatch and validation")
{
    const BvpProblem p1 = bezbvp::make_example_1d_problem();
    CHECK_THROWS_AS(shoot_nd(p1, scalar(0.0), ShootingConfig{}), std::invalid_argument);

    const auto& c = bezbvp::builtin_catalog().find("1");
    const auto cc = canonical_case(c);
    CHECK_THROWS_AS(shoot_1d(cc.problem, 1.0, ShootingConfig{}), std::invalid_argument);
}
