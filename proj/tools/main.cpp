// Command-line front end: initial-guess generation, shooting runs, the full
// benchmark suite, trajectory export, and the built-in case catalog.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bezbvp/harness.hpp"

namespace {

using bezbvp::HarnessConfig;
using bezbvp::Method;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNotConverged = 2;

struct GlobalOptions {
    std::optional<std::string> config_file;
    std::optional<double> rtol;
    std::optional<double> atol;
    std::optional<int> quad_nodes;
    bool seedless = false;  // reserved; the pipeline has no randomness
};

HarnessConfig resolve_config(const GlobalOptions& opt)
{
    HarnessConfig config;
    if (opt.config_file) config = HarnessConfig::load(*opt.config_file);
    if (opt.rtol) config.integrator.rtol = *opt.rtol;
    if (opt.atol) config.integrator.atol = *opt.atol;
    if (opt.quad_nodes) config.optimizer.quadrature_nodes = *opt.quad_nodes;
    return config;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

int cmd_guess(const std::string& case_id, const GlobalOptions& opt)
{
    const HarnessConfig config = resolve_config(opt);
    const auto rule = bezbvp::QuadratureRule::gauss_legendre(config.optimizer.quadrature_nodes);

    bezbvp::GuessResult gr;
    double velocity_unit = 1.0;
    if (case_id == "1d") {
        gr = bezbvp::optimize_control_points(bezbvp::make_example_1d_problem(), rule,
                                             config.optimizer);
    } else {
        const auto& orbit_case = [&]() -> const bezbvp::OrbitCase& {
            for (const auto& c : config.active_cases())
                if (c.id == case_id) return c;
            throw std::invalid_argument("unknown case id: " + case_id);
        }();
        const auto problem = bezbvp::make_two_body_problem_canonical(
            config.two_body, orbit_case.r_initial_km, orbit_case.r_final_km, orbit_case.tof_s);
        const auto scale = bezbvp::canonical_scaling(config.two_body, orbit_case.r_initial_km);
        velocity_unit = scale.velocity_unit_kms();
        gr = bezbvp::optimize_control_points(problem, rule, config.optimizer);
        std::cout << "canonical units: DU = " << scale.distance_unit_km
                  << " km, TU = " << scale.time_unit_s << " s\n";
    }

    std::cout << "case " << case_id << "\n";
    std::cout << "  t1      = " << gr.t1 << "\n";
    std::cout << "  x1      = " << gr.x1.transpose() << "\n";
    std::cout << "  L_min   = " << gr.L_min << "\n";
    std::cout << "  evals   = " << gr.optimizer_evaluations
              << (gr.converged ? " (converged)" : " (not converged)") << "\n";
    std::cout << "  guess   = " << (gr.xdot_initial * velocity_unit).transpose()
              << (case_id == "1d" ? "" : " km/s") << "\n";
    return kExitOk;
}

int cmd_shoot(const std::string& case_id, const std::string& method, const GlobalOptions& opt)
{
    const HarnessConfig config = resolve_config(opt);
    const bezbvp::RunReport report =
        bezbvp::run_case(case_id, bezbvp::method_from_string(method), config);
    std::cout << bezbvp::format_summary_table({report});
    std::cout << "guess    = " << report.guess.transpose() << "\n";
    std::cout << "solution = " << report.solution.transpose() << "\n";
    std::cout << "terminal residual = " << report.terminal_residual << "\n";
    return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_suite(const GlobalOptions& opt, const std::string& out_dir)
{
    const HarnessConfig config = resolve_config(opt);
    const bezbvp::SuiteResult result = bezbvp::run_suite(config);

    std::cout << bezbvp::format_summary_table(result.reports);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto dir = std::filesystem::path(out_dir);
        write_file(dir / "reports.csv", bezbvp::reports_to_csv(result.reports));
        write_file(dir / "reports.json", bezbvp::reports_to_json(result.reports).dump(2) + "\n");
        std::cout << "reports written to " << dir.string() << "\n";
    }
    for (const auto& r : result.reports)
        if (!r.converged) return kExitNotConverged;
    return kExitOk;
}

int cmd_export(const std::string& case_id, const std::string& source, int samples,
               const std::string& out_file, const GlobalOptions& opt)
{
    const HarnessConfig config = resolve_config(opt);
    const auto src = source == "bezier" ? bezbvp::TrajectorySource::bezier_approx
                                        : bezbvp::TrajectorySource::integrated;
    const auto trajectory = bezbvp::export_trajectory(case_id, src, samples, config);
    const std::string csv = bezbvp::trajectory_to_csv(trajectory);
    if (out_file.empty())
        std::cout << csv;
    else
        write_file(out_file, csv);
    return kExitOk;
}

int cmd_catalog(const GlobalOptions& opt)
{
    const HarnessConfig config = resolve_config(opt);
    bezbvp::CaseCatalog catalog;
    catalog.cases = config.active_cases();
    std::cout << bezbvp::to_json(catalog).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-point boundary value problems: Bezier-curve initial guesses + shooting"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--config", opt.config_file, "JSON config file");
    app.add_option("--rtol", opt.rtol, "integrator relative tolerance");
    app.add_option("--atol", opt.atol, "integrator absolute tolerance");
    app.add_option("--quad-nodes", opt.quad_nodes, "Gauss-Legendre node count");
    app.add_flag("--seedless", opt.seedless, "reserved (the pipeline has no randomness)");

    std::string case_id, method = "proposed", source = "bezier", out_dir, out_file;
    int samples = 101;

    auto* guess = app.add_subcommand("guess", "print the Bezier initial guess for a case");
    guess->add_option("case", case_id, "case id ('1d', '1', '2-1', ...)")->required();

    auto* shoot = app.add_subcommand("shoot", "solve a case with the shooting method");
    shoot->add_option("case", case_id)->required();
    shoot->add_option("--method", method, "proposed|general")
        ->check(CLI::IsMember({"proposed", "general"}));

    auto* suite = app.add_subcommand("suite", "run every case under both methods");
    suite->add_option("--out", out_dir, "directory for CSV/JSON reports");

    auto* exp = app.add_subcommand("export", "emit plot-ready trajectory samples");
    exp->add_option("case", case_id)->required();
    exp->add_option("--source", source, "bezier|integrated")
        ->check(CLI::IsMember({"bezier", "integrated"}));
    exp->add_option("--samples", samples, "row count for the bezier source");
    exp->add_option("--out", out_file, "output CSV file (stdout when omitted)");

    auto* catalog = app.add_subcommand("catalog", "print the built-in case catalog as JSON");
    (void)catalog;

    CLI11_PARSE(app, argc, argv);

    try {
        if (guess->parsed()) return cmd_guess(case_id, opt);
        if (shoot->parsed()) return cmd_shoot(case_id, method, opt);
        if (suite->parsed()) return cmd_suite(opt, out_dir);
        if (exp->parsed()) return cmd_export(case_id, source, samples, out_file, opt);
        if (catalog->parsed()) return cmd_catalog(opt);
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
