#include <doctest.h>

#include <cmath>

#include "bezbvp/harness.hpp"

using bezbvp::component_error_pct;
using bezbvp::HarnessConfig;
using bezbvp::Method;
using bezbvp::run_case;
using bezbvp::RunReport;

namespace {

// Loose single-case config so harness-level tests stay quick.
HarnessConfig quick_config()
{
    HarnessConfig config;
    config.integrator.rtol = 1e-9;
    config.integrator.atol = 1e-11;
    return config;
}

}  // namespace

TEST_CASE("run_case on the 1-D benchmark, both methods")
{
    const HarnessConfig config = quick_config();

    const RunReport proposed = run_case("1d", Method::proposed, config);
    CHECK(proposed.converged);
    CHECK(proposed.solution[0] == doctest::Approx(-14.0).epsilon(1e-6));
    CHECK(proposed.bezier_time_s > 0.0);
    CHECK(proposed.total_time_s ==
          doctest::Approx(proposed.bezier_time_s + proposed.shooting_time_s).epsilon(1e-12));

    const RunReport general = run_case("1d", Method::general, config);
    CHECK(general.converged);
    CHECK(general.guess[0] == 0.0);
    CHECK(general.bezier_time_s == 0.0);
    CHECK(general.solution[0] == doctest::Approx(-14.0).epsilon(1e-6));

    // informed guess brackets no worse than the arbitrary one
    CHECK(proposed.iterations_bracket <= general.iterations_bracket);
}

TEST_CASE("run_case on an orbit case reproduces the published values")
{
    const HarnessConfig config = quick_config();
    const RunReport report = run_case("1", Method::proposed, config);
    CHECK(report.converged);
    REQUIRE(report.solution.size() == 3);
    const Eigen::Vector3d expected(3.188, -6.631, -1.875);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(report.solution[i] - expected[i]) < 0.005);
    CHECK(std::abs(report.solution.norm() - 7.5925) < 0.001);
    CHECK(report.terminal_residual <= config.boundary_tolerance_orbit_km);
}

TEST_CASE("report error percentages recompute from the stored fields")
{
    const HarnessConfig config = quick_config();
    const RunReport report = run_case("1", Method::proposed, config);
    const Eigen::VectorXd recomputed = component_error_pct(report.guess, report.solution);
    CHECK((recomputed - report.guess_error_pct).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unknown case id is a configuration error")
{
    CHECK_THROWS_AS(run_case("nope", Method::proposed, quick_config()), std::invalid_argument);
}

TEST_CASE("determinism: identical config gives identical numbers")
{
    const HarnessConfig config = quick_config();
    const RunReport a = run_case("2-2", Method::proposed, config);
    const RunReport b = run_case("2-2", Method::proposed, config);
    CHECK(a.guess == b.guess);
    CHECK(a.solution == b.solution);
    CHECK(a.iterations_root == b.iterations_root);
    CHECK(a.terminal_residual == b.terminal_residual);
}

TEST_CASE("CSV round trip preserves every value")
{
    const HarnessConfig config = quick_config();
    std::vector<RunReport> reports{run_case("1d", Method::proposed, config),
                                   run_case("1", Method::general, config)};
    const std::string csv = bezbvp::reports_to_csv(reports);
    const auto parsed = bezbvp::reports_from_csv(csv);
    REQUIRE(parsed.size() == reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(parsed[i].case_id == reports[i].case_id);
        CHECK(parsed[i].method == reports[i].method);
        CHECK(parsed[i].converged == reports[i].converged);
        CHECK(parsed[i].guess == reports[i].guess);
        CHECK(parsed[i].solution == reports[i].solution);
        CHECK(parsed[i].guess_error_pct == reports[i].guess_error_pct);
        CHECK(parsed[i].iterations_bracket == reports[i].iterations_bracket);
        CHECK(parsed[i].iterations_root == reports[i].iterations_root);
        CHECK(parsed[i].bezier_time_s == reports[i].bezier_time_s);
        CHECK(parsed[i].shooting_time_s == reports[i].shooting_time_s);
        CHECK(parsed[i].total_time_s == reports[i].total_time_s);
        CHECK(parsed[i].terminal_residual == reports[i].terminal_residual);
    }
    // the CSV itself re-serializes identically
    CHECK(bezbvp::reports_to_csv(parsed) == csv);
}

TEST_CASE("config JSON round trip and validation")
{
    HarnessConfig config;
    config.integrator.rtol = 1e-9;
    config.optimizer.quadrature_nodes = 24;
    config.general_guess_1d = -10.0;
    const HarnessConfig parsed = HarnessConfig::from_json(config.to_json());
    CHECK(parsed.integrator.rtol == 1e-9);
    CHECK(parsed.optimizer.quadrature_nodes == 24);
    CHECK(parsed.general_guess_1d == -10.0);

    nlohmann::json bad{{"optimizer", {{"quadrature_nodes", 1}}}};
    CHECK_THROWS_AS(HarnessConfig::from_json(bad), std::invalid_argument);
}

TEST_CASE("bezier trajectory export: boundaries and row count")
{
    const HarnessConfig config = quick_config();
    const auto traj =
        bezbvp::export_trajectory("1d", bezbvp::TrajectorySource::bezier_approx, 101, config);
    REQUIRE(traj.rows.size() == 101);
    CHECK(traj.header == std::vector<std::string>{"s", "t", "x"});
    // first row (0, 1, 17), last row (1, 3, 43/3)
    CHECK(traj.rows.front()[0] == 0.0);
    CHECK(traj.rows.front()[1] == 1.0);
    CHECK(traj.rows.front()[2] == 17.0);
    CHECK(traj.rows.back()[0] == 1.0);
    CHECK(traj.rows.back()[1] == 3.0);
    CHECK(traj.rows.back()[2] == doctest::Approx(43.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("integrated trajectory export starts at the boundary state")
{
    const HarnessConfig config = quick_config();
    const auto traj =
        bezbvp::export_trajectory("1", bezbvp::TrajectorySource::integrated, 0, config);
    REQUIRE(traj.rows.size() > 2);
    REQUIRE(traj.header.size() == 7);
    CHECK(traj.rows.front()[0] == 0.0);
    CHECK(traj.rows.front()[1] == doctest::Approx(-5641.484).epsilon(1e-12));
    CHECK(traj.rows.front()[2] == doctest::Approx(-3331.740).epsilon(1e-12));
    CHECK(traj.rows.front()[3] == doctest::Approx(2204.246).epsilon(1e-12));
    // terminal row hits the final boundary within the shooting tolerance
    const auto& last = traj.rows.back();
    const Eigen::Vector3d r_end(last[1], last[2], last[3]);
    const Eigen::Vector3d r_f(3329.045, -5754.978, -1871.615);
    CHECK((r_end - r_f).norm() <= config.boundary_tolerance_orbit_km + 1e-9);

    const std::string csv = bezbvp::trajectory_to_csv(traj);
    CHECK(csv.rfind("t_s,x_km,", 0) == 0);
}

TEST_CASE("summary table contains one line per report plus a header")
{
    const HarnessConfig config = quick_config();
    std::vector<RunReport> reports{run_case("1d", Method::proposed, config),
                                   run_case("1d", Method::general, config)};
    const std::string table = bezbvp::format_summary_table(reports);
    CHECK(std::count(table.begin(), table.end(), '\n') == 3);
    CHECK(table.find("1d") != std::string::npos);
    CHECK(table.find("proposed") != std::string::npos);
    CHECK(table.find("general") != std::string::npos);
}

TEST_CASE("run_suite produces sixteen reports in catalog order")
{
    const HarnessConfig config = quick_config();
    const auto suite = bezbvp::run_suite(config);
    REQUIRE(suite.reports.size() == 16);
    const std::vector<std::string> expected_ids{"1d", "1", "2-1", "2-2", "2-3", "3-1", "3-2",
                                                "3-3"};
    for (size_t i = 0; i < expected_ids.size(); ++i) {
        CHECK(suite.reports[2 * i].case_id == expected_ids[i]);
        CHECK(suite.reports[2 * i].method == Method::proposed);
        CHECK(suite.reports[2 * i + 1].case_id == expected_ids[i]);
        CHECK(suite.reports[2 * i + 1].method == Method::general);
    }
    // end-to-end closure: re-integrating every converged stored solution
    // reproduces the terminal boundary within the shooting tolerance
    for (const auto& r : suite.reports) {
        if (!r.converged || r.case_id == "1d") continue;
        const auto& c = bezbvp::builtin_catalog().find(r.case_id);
        const auto scale = bezbvp::canonical_scaling(config.two_body, c.r_initial_km);
        const auto problem = bezbvp::make_two_body_problem_canonical(
            config.two_body, c.r_initial_km, c.r_final_km, c.tof_s);
        const double miss_km = bezbvp::terminal_miss(problem,
                                                     r.solution / scale.velocity_unit_kms(),
                                                     config.integrator)
                                   .norm() *
                               scale.distance_unit_km;
        CHECK(miss_km <= config.boundary_tolerance_orbit_km + 1e-9);
    }
}
