#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "bezbvp/guess.hpp"
#include "bezbvp/integrator.hpp"
#include "bezbvp/orbit.hpp"
#include "bezbvp/shooting.hpp"

namespace bezbvp {

enum class Method { proposed, general };

std::string to_string(Method method);
Method method_from_string(std::string_view name);

// Everything the pipeline needs, loadable from a single JSON file; the
// built-in catalog is used when no cases are supplied.
struct HarnessConfig {
    IntegratorConfig integrator;
    OptimizerConfig optimizer;
    TwoBodyParams two_body;
    double boundary_tolerance_orbit_km = 1e-3;  // 1 m at the terminal boundary
    double boundary_tolerance_1d = 1e-8;
    double general_guess_1d = 0.0;  // "arbitrary" baseline guess for the 1-D case
    int max_newton_iterations = 50;
    int max_bracket_expansions = 60;
    int max_root_iterations = 100;
    double jacobian_step = 1e-7;
    std::vector<OrbitCase> cases;  // empty means builtin_catalog()

    const std::vector<OrbitCase>& active_cases() const;

    static HarnessConfig from_json(const nlohmann::json& j);
    static HarnessConfig load(const std::filesystem::path& file);
    nlohmann::json to_json() const;
};

// Outcome of one (case, method) run. Vector fields have the case dimension
// (1 for the 1-D benchmark, 3 for orbit cases); velocities in km/s and the
// terminal residual in km for orbit cases, problem units for the 1-D case.
struct RunReport {
    std::string case_id;
    Method method = Method::proposed;
    Eigen::VectorXd guess;
    Eigen::VectorXd solution;
    Eigen::VectorXd guess_error_pct;  // 100 |guess - solution| / |solution|, per component
    double bezier_time_s = 0.0;       // 0 for method == general
    double shooting_time_s = 0.0;
    double total_time_s = 0.0;
    int iterations_bracket = 0;
    int iterations_root = 0;
    bool converged = false;
    double terminal_residual = std::numeric_limits<double>::quiet_NaN();
};

// Percentage error metric used throughout the reports.
Eigen::VectorXd component_error_pct(const Eigen::VectorXd& guess, const Eigen::VectorXd& solution);

// Run one case under one method. Non-convergence of the shooting phase is
// recorded in the report, not thrown; configuration errors (unknown id,
// invalid settings) do throw.
RunReport run_case(const std::string& case_id, Method method, const HarnessConfig& config);

struct SuiteResult {
    std::vector<RunReport> reports;  // catalog order, proposed before general
};

// Run the 1-D benchmark plus every configured orbit case under both methods.
// Cases execute concurrently; results are gathered in catalog order.
SuiteResult run_suite(const HarnessConfig& config);

// Report serialization. The CSV schema is fixed:
//   case,method,converged,guess_x,guess_y,guess_z,sol_x,sol_y,sol_z,
//   err_pct_x,err_pct_y,err_pct_z,iter_bracket,iter_root,bezier_s,shoot_s,
//   total_s,terminal_residual_km
// 1-D rows leave the _y/_z columns empty. Doubles round-trip exactly.
std::string reports_to_csv(const std::vector<RunReport>& reports);
std::vector<RunReport> reports_from_csv(const std::string& csv);
nlohmann::json reports_to_json(const std::vector<RunReport>& reports);

// Human-readable summary with per-case improvement percentages, timings
// shown to 0.1 ms.
std::string format_summary_table(const std::vector<RunReport>& reports);

enum class TrajectorySource { bezier_approx, integrated };

struct TrajectoryExport {
    std::string case_id;
    TrajectorySource source = TrajectorySource::bezier_approx;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Plot-ready samples: the optimized Bezier approximation at uniform s
// (bezier_approx, `samples` rows) or the integrated trajectory at the
// integrator's accepted steps (integrated).
TrajectoryExport export_trajectory(const std::string& case_id, TrajectorySource source,
                                   int samples, const HarnessConfig& config);

std::string trajectory_to_csv(const TrajectoryExport& trajectory);

}  // namespace bezbvp
