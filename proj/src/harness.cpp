#include "bezbvp/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

namespace bezbvp {

std::string to_string(Method method)
{
    return method == Method::proposed ? "proposed" : "general";
}

Method method_from_string(std::string_view name)
{
    if (name == "proposed") return Method::proposed;
    if (name == "general") return Method::general;
    throw std::invalid_argument("unknown method: " + std::string(name));
}

const std::vector<OrbitCase>& HarnessConfig::active_cases() const
{
    return cases.empty() ? builtin_catalog().cases : cases;
}

HarnessConfig HarnessConfig::from_json(const nlohmann::json& j)
{
    HarnessConfig c;
    if (j.contains("integrator")) {
        const auto& ji = j.at("integrator");
        c.integrator.rtol = ji.value("rtol", c.integrator.rtol);
        c.integrator.atol = ji.value("atol", c.integrator.atol);
        c.integrator.max_steps = ji.value("max_steps", c.integrator.max_steps);
    }
    if (j.contains("optimizer")) {
        const auto& jo = j.at("optimizer");
        c.optimizer.quadrature_nodes = jo.value("quadrature_nodes", c.optimizer.quadrature_nodes);
        c.optimizer.function_tolerance =
            jo.value("function_tolerance", c.optimizer.function_tolerance);
        c.optimizer.parameter_tolerance =
            jo.value("parameter_tolerance", c.optimizer.parameter_tolerance);
        c.optimizer.max_evaluations_per_dimension =
            jo.value("max_evaluations_per_dimension", c.optimizer.max_evaluations_per_dimension);
    }
    if (j.contains("quadrature"))
        c.optimizer.quadrature_nodes =
            j.at("quadrature").value("nodes", c.optimizer.quadrature_nodes);
    if (j.contains("shooting")) {
        const auto& js = j.at("shooting");
        c.boundary_tolerance_orbit_km =
            js.value("boundary_tolerance_orbit_km", c.boundary_tolerance_orbit_km);
        c.boundary_tolerance_1d = js.value("boundary_tolerance_1d", c.boundary_tolerance_1d);
        c.general_guess_1d = js.value("general_guess_1d", c.general_guess_1d);
        c.max_newton_iterations = js.value("max_newton_iterations", c.max_newton_iterations);
        c.max_bracket_expansions = js.value("max_bracket_expansions", c.max_bracket_expansions);
        c.max_root_iterations = js.value("max_root_iterations", c.max_root_iterations);
        c.jacobian_step = js.value("jacobian_step", c.jacobian_step);
    }
    if (j.contains("mu")) c.two_body.mu = j.at("mu").get<double>();
    if (j.contains("cases"))
        for (const auto& jc : j.at("cases")) c.cases.push_back(orbit_case_from_json(jc));

    if (c.optimizer.quadrature_nodes < 2)
        throw std::invalid_argument("optimizer.quadrature_nodes must be >= 2");
    if (!(c.integrator.rtol > 0.0) || !(c.integrator.atol > 0.0))
        throw std::invalid_argument("integrator tolerances must be positive");
    return c;
}

HarnessConfig HarnessConfig::load(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open config file: " + file.string());
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json HarnessConfig::to_json() const
{
    nlohmann::json j{
        {"integrator",
         {{"rtol", integrator.rtol},
          {"atol", integrator.atol},
          {"max_steps", integrator.max_steps}}},
        {"optimizer",
         {{"function_tolerance", optimizer.function_tolerance},
          {"parameter_tolerance", optimizer.parameter_tolerance},
          {"max_evaluations_per_dimension", optimizer.max_evaluations_per_dimension}}},
        {"quadrature", {{"nodes", optimizer.quadrature_nodes}}},
        {"shooting",
         {{"boundary_tolerance_orbit_km", boundary_tolerance_orbit_km},
          {"boundary_tolerance_1d", boundary_tolerance_1d},
          {"general_guess_1d", general_guess_1d},
          {"max_newton_iterations", max_newton_iterations},
          {"max_bracket_expansions", max_bracket_expansions},
          {"max_root_iterations", max_root_iterations},
          {"jacobian_step", jacobian_step}}},
        {"mu", two_body.mu},
    };
    if (!cases.empty()) {
        nlohmann::json jc = nlohmann::json::array();
        for (const auto& c : cases) jc.push_back(bezbvp::to_json(c));
        j["cases"] = jc;
    }
    return j;
}

Eigen::VectorXd component_error_pct(const Eigen::VectorXd& guess, const Eigen::VectorXd& solution)
{
    return 100.0 * (guess - solution).cwiseAbs().cwiseQuotient(solution.cwiseAbs());
}

namespace {

ShootingConfig shooting_config(const HarnessConfig& config, double boundary_tolerance)
{
    ShootingConfig sc;
    sc.integrator = config.integrator;
    sc.boundary_tolerance = boundary_tolerance;
    sc.max_bracket_expansions = config.max_bracket_expansions;
    sc.max_root_iterations = config.max_root_iterations;
    sc.max_newton_iterations = config.max_newton_iterations;
    sc.jacobian_step = config.jacobian_step;
    return sc;
}

double seconds_since(const std::chrono::steady_clock::time_point& start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunReport run_1d(Method method, const HarnessConfig& config)
{
    const BvpProblem problem = make_example_1d_problem();
    RunReport report;
    report.case_id = "1d";
    report.method = method;

    double guess = config.general_guess_1d;
    if (method == Method::proposed) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rule = QuadratureRule::gauss_legendre(config.optimizer.quadrature_nodes);
        const GuessResult gr = optimize_control_points(problem, rule, config.optimizer);
        guess = gr.xdot_initial[0];
        report.bezier_time_s = seconds_since(t0);
    }
    report.guess = Eigen::VectorXd::Constant(1, guess);

    ShootingOutcome outcome;
    try {
        outcome = shoot_1d(problem, guess, shooting_config(config, config.boundary_tolerance_1d));
    } catch (const ShootingFailure& failure) {
        outcome = failure.outcome;
    }
    report.solution = outcome.xdot_initial;
    report.shooting_time_s = outcome.wall_time_s;
    report.total_time_s = report.bezier_time_s + report.shooting_time_s;
    report.iterations_bracket = outcome.iterations_bracket;
    report.iterations_root = outcome.iterations_root;
    report.converged = outcome.converged;
    report.terminal_residual = outcome.terminal_residual;
    report.guess_error_pct = component_error_pct(report.guess, report.solution);
    return report;
}

RunReport run_orbit(const OrbitCase& orbit_case, Method method, const HarnessConfig& config)
{
    const CanonicalScaling scale = canonical_scaling(config.two_body, orbit_case.r_initial_km);
    const double vu = scale.velocity_unit_kms();
    const BvpProblem problem = make_two_body_problem_canonical(
        config.two_body, orbit_case.r_initial_km, orbit_case.r_final_km, orbit_case.tof_s);

    RunReport report;
    report.case_id = orbit_case.id;
    report.method = method;

    Eigen::Vector3d guess_kms;
    if (method == Method::proposed) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rule = QuadratureRule::gauss_legendre(config.optimizer.quadrature_nodes);
        const GuessResult gr = optimize_control_points(problem, rule, config.optimizer);
        guess_kms = Eigen::Vector3d(gr.xdot_initial) * vu;
        report.bezier_time_s = seconds_since(t0);
    } else {
        guess_kms = cross_product_baseline_guess(config.two_body, orbit_case.r_initial_km,
                                                 orbit_case.r_final_km);
    }
    report.guess = guess_kms;

    const double tol_canonical = config.boundary_tolerance_orbit_km / scale.distance_unit_km;
    ShootingOutcome outcome;
    try {
        outcome = shoot_nd(problem, guess_kms / vu, shooting_config(config, tol_canonical));
    } catch (const ShootingFailure& failure) {
        outcome = failure.outcome;
    }
    report.solution = outcome.xdot_initial * vu;
    report.shooting_time_s = outcome.wall_time_s;
    report.total_time_s = report.bezier_time_s + report.shooting_time_s;
    report.iterations_bracket = outcome.iterations_bracket;
    report.iterations_root = outcome.iterations_root;
    report.converged = outcome.converged;
    report.terminal_residual = outcome.terminal_residual * scale.distance_unit_km;
    report.guess_error_pct = component_error_pct(report.guess, report.solution);
    return report;
}

}  // namespace

RunReport run_case(const std::string& case_id, Method method, const HarnessConfig& config)
{
    if (case_id == "1d") return run_1d(method, config);
    for (const auto& c : config.active_cases())
        if (c.id == case_id) return run_orbit(c, method, config);
    throw std::invalid_argument("unknown case id: " + case_id);
}

SuiteResult run_suite(const HarnessConfig& config)
{
    std::vector<std::string> ids{"1d"};
    for (const auto& c : config.active_cases()) ids.push_back(c.id);

    std::vector<std::future<RunReport>> pending;
    pending.reserve(ids.size() * 2);
    for (const auto& id : ids)
        for (const Method method : {Method::proposed, Method::general})
            pending.push_back(std::async(std::launch::async, [id, method, &config] {
                return run_case(id, method, config);
            }));

    SuiteResult result;
    result.reports.reserve(pending.size());
    for (auto& f : pending) result.reports.push_back(f.get());
    return result;
}

namespace {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string reports_to_csv(const std::vector<RunReport>& reports)
{
    std::ostringstream out;
    out << "case,method,converged,guess_x,guess_y,guess_z,sol_x,sol_y,sol_z,"
           "err_pct_x,err_pct_y,err_pct_z,iter_bracket,iter_root,bezier_s,shoot_s,total_s,"
           "terminal_residual_km\n";
    for (const auto& r : reports) {
        const bool vec3 = r.guess.size() == 3;
        auto component = [&](const Eigen::VectorXd& v, int i) {
            return (i == 0 || vec3) ? format_double(v[i]) : std::string{};
        };
        out << r.case_id << ',' << to_string(r.method) << ',' << (r.converged ? "true" : "false");
        for (int i = 0; i < 3; ++i) out << ',' << component(r.guess, i);
        for (int i = 0; i < 3; ++i) out << ',' << component(r.solution, i);
        for (int i = 0; i < 3; ++i) out << ',' << component(r.guess_error_pct, i);
        out << ',' << r.iterations_bracket << ',' << r.iterations_root;
        out << ',' << format_double(r.bezier_time_s) << ',' << format_double(r.shooting_time_s)
            << ',' << format_double(r.total_time_s) << ',' << format_double(r.terminal_residual);
        out << '\n';
    }
    return out.str();
}

std::vector<RunReport> reports_from_csv(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty report CSV");

    std::vector<RunReport> reports;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 18) fields.emplace_back();  // trailing empty cells
        if (fields.size() != 18)
            throw std::invalid_argument("malformed report row: " + line);

        RunReport r;
        r.case_id = fields[0];
        r.method = method_from_string(fields[1]);
        r.converged = fields[2] == "true";
        const bool vec3 = !fields[4].empty();
        const int dim = vec3 ? 3 : 1;
        r.guess.resize(dim);
        r.solution.resize(dim);
        r.guess_error_pct.resize(dim);
        for (int i = 0; i < dim; ++i) {
            r.guess[i] = std::stod(fields[static_cast<size_t>(3 + i)]);
            r.solution[i] = std::stod(fields[static_cast<size_t>(6 + i)]);
            r.guess_error_pct[i] = std::stod(fields[static_cast<size_t>(9 + i)]);
        }
        r.iterations_bracket = std::stoi(fields[12]);
        r.iterations_root = std::stoi(fields[13]);
        r.bezier_time_s = std::stod(fields[14]);
        r.shooting_time_s = std::stod(fields[15]);
        r.total_time_s = std::stod(fields[16]);
        r.terminal_residual = std::stod(fields[17]);
        reports.push_back(std::move(r));
    }
    return reports;
}

nlohmann::json reports_to_json(const std::vector<RunReport>& reports)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j{
            {"case", r.case_id},
            {"method", to_string(r.method)},
            {"converged", r.converged},
            {"iter_bracket", r.iterations_bracket},
            {"iter_root", r.iterations_root},
            {"bezier_s", r.bezier_time_s},
            {"shoot_s", r.shooting_time_s},
            {"total_s", r.total_time_s},
            {"terminal_residual_km", r.terminal_residual},
        };
        for (int i = 0; i < r.guess.size(); ++i) {
            j["guess"].push_back(r.guess[i]);
            j["solution"].push_back(r.solution[i]);
            j["error_pct"].push_back(r.guess_error_pct[i]);
        }
        arr.push_back(j);
    }
    return arr;
}

std::string format_summary_table(const std::vector<RunReport>& reports)
{
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-5s %-9s %-5s %11s %10s %10s %10s %12s\n", "case", "method",
                  "conv", "iters(b/r)", "bezier_s", "shoot_s", "total_s", "improve_%");
    out << buf;

    auto find_pair = [&](const std::string& id, Method m) -> const RunReport* {
        for (const auto& r : reports)
            if (r.case_id == id && r.method == m) return &r;
        return nullptr;
    };

    for (const auto& r : reports) {
        std::string improvement = "-";
        if (r.method == Method::proposed) {
            const RunReport* general = find_pair(r.case_id, Method::general);
            if (general && general->converged && r.converged && general->total_time_s > 0.0) {
                std::snprintf(buf, sizeof(buf), "%.2f",
                              100.0 * (general->total_time_s - r.total_time_s) /
                                  general->total_time_s);
                improvement = buf;
            }
        }
        std::snprintf(buf, sizeof(buf), "%-5s %-9s %-5s %7d/%-3d %10.4f %10.4f %10.4f %12s\n",
                      r.case_id.c_str(), to_string(r.method).c_str(), r.converged ? "yes" : "no",
                      r.iterations_bracket, r.iterations_root, r.bezier_time_s, r.shooting_time_s,
                      r.total_time_s, improvement.c_str());
        out << buf;
    }
    return out.str();
}

TrajectoryExport export_trajectory(const std::string& case_id, TrajectorySource source,
                                   int samples, const HarnessConfig& config)
{
    if (source == TrajectorySource::bezier_approx && samples < 2)
        throw std::invalid_argument("bezier export needs at least 2 samples");

    const bool is_1d = case_id == "1d";
    const OrbitCase* orbit_case = nullptr;
    if (!is_1d) {
        for (const auto& c : config.active_cases())
            if (c.id == case_id) orbit_case = &c;
        if (!orbit_case) throw std::invalid_argument("unknown case id: " + case_id);
    }

    const BvpProblem problem =
        is_1d ? make_example_1d_problem()
              : make_two_body_problem_canonical(config.two_body, orbit_case->r_initial_km,
                                                orbit_case->r_final_km, orbit_case->tof_s);
    const CanonicalScaling scale =
        is_1d ? CanonicalScaling{}
              : canonical_scaling(config.two_body, orbit_case->r_initial_km);

    TrajectoryExport result;
    result.case_id = case_id;
    result.source = source;

    const auto rule = QuadratureRule::gauss_legendre(config.optimizer.quadrature_nodes);
    const GuessResult gr = optimize_control_points(problem, rule, config.optimizer);

    if (source == TrajectorySource::bezier_approx) {
        result.header = is_1d ? std::vector<std::string>{"s", "t", "x"}
                              : std::vector<std::string>{"s", "t_s", "x_km", "y_km", "z_km"};
        const SDomainForm form = SDomainForm::from_intermediate(problem, gr.t1, gr.x1);
        for (int i = 0; i < samples; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(samples - 1);
            const double t = form.time_curve.evaluate(s)[0] * scale.time_unit_s;
            const Eigen::VectorXd x = form.state_curve.evaluate(s) * scale.distance_unit_km;
            std::vector<double> row{s, t};
            for (int k = 0; k < x.size(); ++k) row.push_back(x[k]);
            result.rows.push_back(std::move(row));
        }
        return result;
    }

    // integrated source: solve the case first, then emit the accepted steps
    const double tol = is_1d ? config.boundary_tolerance_1d
                             : config.boundary_tolerance_orbit_km / scale.distance_unit_km;
    const ShootingOutcome outcome = shoot(problem, gr.xdot_initial, shooting_config(config, tol));
    if (!outcome.converged) throw std::runtime_error("case " + case_id + " did not converge");

    result.header = is_1d ? std::vector<std::string>{"t", "x", "xdot"}
                          : std::vector<std::string>{"t_s",     "x_km",    "y_km",
                                                     "z_km",    "vx_kms",  "vy_kms",
                                                     "vz_kms"};
    const Trajectory traj = integrate_ivp(problem, outcome.xdot_initial, config.integrator);
    const double vu = scale.velocity_unit_kms();
    for (const auto& sample : traj.samples) {
        std::vector<double> row{sample.t * scale.time_unit_s};
        for (int k = 0; k < sample.x.size(); ++k) row.push_back(sample.x[k] * scale.distance_unit_km);
        for (int k = 0; k < sample.xdot.size(); ++k)
            row.push_back(sample.xdot[k] * (is_1d ? 1.0 : vu));
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string trajectory_to_csv(const TrajectoryExport& trajectory)
{
    std::ostringstream out;
    for (size_t i = 0; i < trajectory.header.size(); ++i) {
        if (i) out << ',';
        out << trajectory.header[i];
    }
    out << '\n';
    for (const auto& row : trajectory.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace bezbvp
