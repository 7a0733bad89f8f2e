#include "bezbvp/orbit.hpp"

#include <array>
#include <cmath>

#include <Eigen/Geometry>

namespace bezbvp {

namespace {
constexpr double kSingularityRadiusKm = 1e-6;
constexpr double kEarthEquatorialRadiusKm = 6378.0;
}  // namespace

Eigen::Vector3d two_body_acceleration(const TwoBodyParams& params, double /*t*/,
                                      const Eigen::Vector3d& r_km,
                                      const Eigen::Vector3d& /*rdot_kms*/)
{
    const double rn = r_km.norm();
    if (rn < kSingularityRadiusKm)
        throw DynamicsDomainError("two-body dynamics singular: ||r|| = " + std::to_string(rn) +
                                  " km");
    return -params.mu / (rn * rn * rn) * r_km;
}

const OrbitCase& CaseCatalog::find(std::string_view id) const
{
    for (const auto& c : cases)
        if (c.id == id) return c;
    throw std::out_of_range("unknown case id: " + std::string(id));
}

bool CaseCatalog::contains(std::string_view id) const
{
    for (const auto& c : cases)
        if (c.id == id) return true;
    return false;
}

const CaseCatalog& builtin_catalog()
{
    auto make = [](const char* id, double tof, std::array<double, 3> ri, std::array<double, 3> rf,
                   std::array<double, 3> guess, std::array<double, 3> shooting,
                   std::array<double, 3> err, double speed, const char* orbit, double ecc,
                   const char* start) {
        OrbitCase c;
        c.id = id;
        c.tof_s = tof;
        c.r_initial_km = Eigen::Vector3d(ri[0], ri[1], ri[2]);
        c.r_final_km = Eigen::Vector3d(rf[0], rf[1], rf[2]);
        c.ref_guess_kms = Eigen::Vector3d(guess[0], guess[1], guess[2]);
        c.ref_shooting_kms = Eigen::Vector3d(shooting[0], shooting[1], shooting[2]);
        c.ref_error_pct = Eigen::Vector3d(err[0], err[1], err[2]);
        c.ref_speed_kms = speed;
        c.has_reference = true;
        c.orbit_label = orbit;
        c.eccentricity = ecc;
        c.initial_position_label = start;
        if (c.r_initial_km.norm() <= kEarthEquatorialRadiusKm ||
            c.r_final_km.norm() <= kEarthEquatorialRadiusKm)
            throw std::logic_error("catalog case below the Earth's surface");
        return c;
    };

    static const CaseCatalog catalog{{
        make("1", 1500.0, {-5641.484, -3331.740, 2204.246}, {3329.045, -5754.978, -1871.615},
             {4.495, -7.470, -2.505}, {3.188, -6.631, -1.875}, {41.00, 12.65, 33.59}, 7.5925,
             "Circular orbit", 0.000283, "Near perigee"),
        make("2-1", 25000.0, {15040.510, 22615.098, 45161.321}, {-36285.493, 13559.482, 27077.646},
             {-2.614, 0.371, 0.740}, {-2.202, 0.407, 0.814}, {18.70, 9.01, 9.02}, 2.3829,
             "Tundra orbit", 0.268, "Near apogee"),
        make("2-2", 15000.0, {-40292.402, 7484.694, 14946.572},
             {-17983.494, -11870.227, -23704.307}, {-0.258, -1.622, -3.239},
             {-0.367, -1.320, -2.636}, {29.63, 22.89, 22.88}, 2.9709, "Tundra orbit", 0.268,
             "Intermediate"),
        make("2-3", 17000.0, {-24501.896, -9999.969, -19969.490}, {33647.418, -5531.998, -11047.131},
             {3.926, -1.181, -2.359}, {3.005, -1.056, -2.109}, {30.62, 11.82, 11.83}, 3.8206,
             "Tundra orbit", 0.268, "Near perigee"),
        make("3-1", 18000.0, {7062.077, 19756.303, 39452.426}, {-16831.220, 12838.490, 25637.872},
             {-1.751, 0.358, 0.714}, {-1.424, 0.407, 0.813}, {22.98, 12.16, 12.17}, 1.6894,
             "Molniya orbit", 0.74, "Near apogee"),
        make("3-2", 5000.0, {-17436.334, 11461.543, 22888.172}, {-14505.515, 1846.234, 3686.843},
             {-0.715, -1.598, -3.191}, {-0.498, -1.451, -2.898}, {43.64, 10.12, 10.12}, 3.2791,
             "Molniya orbit", 0.74, "Intermediate"),
        make("3-3", 5000.0, {-3653.531, -2844.545, -5680.425}, {17638.454, 6821.862, 13622.943},
             {7.836, -2.445, -4.882}, {9.250, -1.285, -2.567}, {15.28, 90.21, 90.21}, 9.6848,
             "Molniya orbit", 0.74, "Near perigee"),
    }};
    return catalog;
}

Eigen::Vector3d cross_product_baseline_guess(const TwoBodyParams& /*params*/,
                                             const Eigen::Vector3d& r_initial_km,
                                             const Eigen::Vector3d& r_final_km)
{
    const Eigen::Vector3d cross = r_initial_km.cross(r_final_km);
    const double denom = r_initial_km.norm() * r_final_km.norm();
    if (denom <= 0.0 || cross.norm() / denom < 1e-10)
        throw CollinearityError("boundary positions are collinear; no transfer plane");
    const Eigen::Vector3d normal = cross.normalized();
    // Unit-magnitude direction vector (km/s): the rough velocity direction of
    // a short-way transfer.
    return normal.cross(r_initial_km.normalized());
}

CanonicalScaling canonical_scaling(const TwoBodyParams& params,
                                   const Eigen::Vector3d& r_initial_km)
{
    const double du = r_initial_km.norm();
    if (!(du > 0.0)) throw std::invalid_argument("canonical scaling needs ||r_i|| > 0");
    return CanonicalScaling{du, std::sqrt(du * du * du / params.mu)};
}

namespace {

BvpProblem two_body_problem_impl(double mu, double singular_radius,
                                 const Eigen::Vector3d& r_initial,
                                 const Eigen::Vector3d& r_final, double tof, std::string units)
{
    BvpProblem p;
    p.dimension = 3;
    p.t_initial = 0.0;
    p.t_final = tof;
    p.x_initial = r_initial;
    p.x_final = r_final;
    p.units = std::move(units);
    p.dynamics = [mu, singular_radius](double, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd&) -> Eigen::VectorXd {
        const double rn = x.norm();
        if (rn < singular_radius)
            throw DynamicsDomainError("two-body dynamics singular: ||r|| = " +
                                      std::to_string(rn));
        return -mu / (rn * rn * rn) * x;
    };
    p.admissible = [singular_radius](double, const Eigen::VectorXd& x, const Eigen::VectorXd&) {
        return x.norm() >= singular_radius;
    };
    return p;
}

}  // namespace

BvpProblem make_two_body_problem(const TwoBodyParams& params, const Eigen::Vector3d& r_initial_km,
                                 const Eigen::Vector3d& r_final_km, double tof_s)
{
    return two_body_problem_impl(params.mu, kSingularityRadiusKm, r_initial_km, r_final_km, tof_s,
                                 "km, s");
}

BvpProblem make_two_body_problem_canonical(const TwoBodyParams& params,
                                           const Eigen::Vector3d& r_initial_km,
                                           const Eigen::Vector3d& r_final_km, double tof_s)
{
    const CanonicalScaling scale = canonical_scaling(params, r_initial_km);
    return two_body_problem_impl(1.0, 1e-6, r_initial_km / scale.distance_unit_km,
                                 r_final_km / scale.distance_unit_km, tof_s / scale.time_unit_s,
                                 "DU, TU");
}

namespace {

nlohmann::json vec_to_json(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

Eigen::Vector3d vec_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("expected a 3-element array in case file");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

nlohmann::json to_json(const OrbitCase& c)
{
    nlohmann::json j{
        {"id", c.id},
        {"tof_s", c.tof_s},
        {"r_i_km", vec_to_json(c.r_initial_km)},
        {"r_f_km", vec_to_json(c.r_final_km)},
        {"orbit", c.orbit_label},
        {"eccentricity", c.eccentricity},
        {"initial_position", c.initial_position_label},
    };
    if (c.has_reference) {
        j["ref_guess_kms"] = vec_to_json(c.ref_guess_kms);
        j["ref_shooting_kms"] = vec_to_json(c.ref_shooting_kms);
        j["ref_error_pct"] = vec_to_json(c.ref_error_pct);
        j["ref_speed_kms"] = c.ref_speed_kms;
    }
    return j;
}

OrbitCase orbit_case_from_json(const nlohmann::json& j)
{
    OrbitCase c;
    c.id = j.at("id").get<std::string>();
    c.tof_s = j.at("tof_s").get<double>();
    c.r_initial_km = vec_from_json(j.at("r_i_km"));
    c.r_final_km = vec_from_json(j.at("r_f_km"));
    if (!(c.tof_s > 0.0)) throw std::invalid_argument("case " + c.id + ": tof_s must be positive");
    c.orbit_label = j.value("orbit", std::string{});
    c.eccentricity = j.value("eccentricity", 0.0);
    c.initial_position_label = j.value("initial_position", std::string{});
    if (j.contains("ref_guess_kms")) {
        c.ref_guess_kms = vec_from_json(j.at("ref_guess_kms"));
        c.ref_shooting_kms = vec_from_json(j.at("ref_shooting_kms"));
        c.ref_error_pct = vec_from_json(j.at("ref_error_pct"));
        c.ref_speed_kms = j.at("ref_speed_kms").get<double>();
        c.has_reference = true;
    }
    return c;
}

nlohmann::json to_json(const CaseCatalog& catalog)
{
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : catalog.cases) cases.push_back(to_json(c));
    return nlohmann::json{{"cases", cases}};
}

}  // namespace bezbvp
