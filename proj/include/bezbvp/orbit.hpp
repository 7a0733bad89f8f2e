#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "bezbvp/problem.hpp"

namespace bezbvp {

class CollinearityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct TwoBodyParams {
    double mu = 398600.0;  // km^3/s^2
};

// Inverse-square central gravity: a = -mu r / ||r||^3, independent of t and
// rdot. Throws DynamicsDomainError for ||r|| < 1e-6 km.
Eigen::Vector3d two_body_acceleration(const TwoBodyParams& params, double t,
                                      const Eigen::Vector3d& r_km,
                                      const Eigen::Vector3d& rdot_kms);

// One benchmark transfer: boundary positions, time of flight, and the
// published reference values it is checked against.
struct OrbitCase {
    std::string id;
    double tof_s = 0.0;
    Eigen::Vector3d r_initial_km = Eigen::Vector3d::Zero();
    Eigen::Vector3d r_final_km = Eigen::Vector3d::Zero();
    Eigen::Vector3d ref_guess_kms = Eigen::Vector3d::Zero();
    Eigen::Vector3d ref_shooting_kms = Eigen::Vector3d::Zero();
    Eigen::Vector3d ref_error_pct = Eigen::Vector3d::Zero();
    double ref_speed_kms = 0.0;
    bool has_reference = false;
    // descriptive metadata, not used computationally
    std::string orbit_label;
    double eccentricity = 0.0;
    std::string initial_position_label;
};

struct CaseCatalog {
    std::vector<OrbitCase> cases;

    const OrbitCase& find(std::string_view id) const;
    bool contains(std::string_view id) const;
};

// The seven built-in transfers (cases 1, 2-1 ... 3-3): circular (Hubble),
// tundra, and Molniya orbits with near-apogee/intermediate/near-perigee
// start points.
const CaseCatalog& builtin_catalog();

// Direction-only initial guess for the general shooting method: the unit
// vector n x r_i/||r_i|| where n is the orbit-normal unit vector from
// r_i x r_f (short-way transfer assumed). Magnitude 1 km/s. Throws
// CollinearityError when r_i and r_f are (nearly) collinear.
Eigen::Vector3d cross_product_baseline_guess(const TwoBodyParams& params,
                                             const Eigen::Vector3d& r_initial_km,
                                             const Eigen::Vector3d& r_final_km);

// Canonical units: DU = ||r_i||, TU = sqrt(DU^3/mu), making mu exactly 1.
struct CanonicalScaling {
    double distance_unit_km = 1.0;
    double time_unit_s = 1.0;
    double velocity_unit_kms() const { return distance_unit_km / time_unit_s; }
};
CanonicalScaling canonical_scaling(const TwoBodyParams& params,
                                   const Eigen::Vector3d& r_initial_km);

// Two-body TPBVP in physical units (km, s): r(0) = r_i, r(tof) = r_f.
BvpProblem make_two_body_problem(const TwoBodyParams& params, const Eigen::Vector3d& r_initial_km,
                                 const Eigen::Vector3d& r_final_km, double tof_s);

// Same problem nondimensionalized with the canonical scaling of r_i.
BvpProblem make_two_body_problem_canonical(const TwoBodyParams& params,
                                           const Eigen::Vector3d& r_initial_km,
                                           const Eigen::Vector3d& r_final_km, double tof_s);

// JSON schema shared with the harness case files.
nlohmann::json to_json(const OrbitCase& c);
OrbitCase orbit_case_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CaseCatalog& catalog);

}  // namespace bezbvp
