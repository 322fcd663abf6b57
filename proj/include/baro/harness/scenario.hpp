#pragma once

// Scenario documents: JSON with a mandatory "version" field. Grids, initial
// data, laws and forcings are tagged unions keyed by "kind".

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "baro/constitutive.hpp"
#include "baro/core.hpp"
#include "baro/forcing.hpp"
#include "baro/solver.hpp"
#include "json.hpp"

namespace baro::harness {

inline constexpr int kSchemaVersion = 1;

struct GridSpec {
    int dim = 1;
    std::array<double, 2> extents{1.0, 1.0};
    std::array<int, 2> cells{100, 1};
    int ghost = 1;
};

// Density and velocity families; q = rho u. Mode numbers count half waves
// across the box, so sin velocity profiles vanish at the walls.
struct InitialSpec {
    enum class Kind { Uniform, Sine, TwoBump, RandomSmooth, Static };
    Kind kind = Kind::Uniform;
    double rho0 = 1.0;
    double rho_amp = 0.0;
    int rho_mode = 1;
    double u_amp = 0.0;
    int u_mode = 1;
    std::array<double, 2> u{0.0, 0.0};  // uniform only
    // two_bump
    std::array<double, 2> centers{0.3, 0.7};
    double width = 0.1;
    // random_smooth
    std::uint64_t seed = 0;
    int modes = 4;
    // static: rho_s for the gradient forcing with mass `mass`, then perturbed
    // by (1 + rho_amp cos(rho_mode pi x)) and the sine velocity profile.
    double mass = 1.0;
};

// Scalar profile over the box, used for potentials and forcing shapes.
struct ProfileSpec {
    enum class Kind { Linear, Cosine, RadialBump, Csv };
    Kind kind = Kind::Linear;
    double offset = 0.0;
    std::array<double, 2> slope{0.0, 0.0};  // linear: offset + slope . x
    double amp = 0.0;                       // cosine: amp cos(mode pi x) [cos(mode pi y)]
    int mode = 1;
    std::array<double, 2> center{0.5, 0.5};  // radial_bump: amp exp(-|x - center|^2 / width^2)
    double width = 0.1;
    std::filesystem::path path;  // csv: one value per interior cell, axis 0 fastest
};

struct ForcingSpec {
    enum class Kind { None, Constant, Periodic, Gradient };
    Kind kind = Kind::None;
    // constant and periodic: f = grad(profile) when from_gradient, otherwise
    // f = (profile, 0) along axis 0. gradient: F = profile.
    ProfileSpec profile;
    bool from_gradient = false;
    double period = 1.0;
    Envelope envelope{1.0, {}, {}};
};

struct LawSpec {
    bool tabulated = false;
    double a = 1.0;
    double gamma = 2.0;
    std::filesystem::path table;
    bool monotone = true;
};

struct DissipativitySettings {
    std::vector<double> energy_scales{1.0, 10.0, 100.0};
    double margin = 0.2;
    double long_time_fraction = 0.5;  // trailing share of [0, t_end] defining the long-time max
};

struct PeriodicSettings {
    double transient = 50.0;
    int periods = 10;
    double rel_tol = 1e-3;
    double slack = 0.05;
    double noise = 1e-12;  // relative to ||rho||_1; differences below it count as non-increasing
};

struct ShiftSettings {
    std::vector<double> shift_times;
    double window = 1.0;
    double slack = 0.05;
    double final_fraction = 0.1;
};

struct SteadySettings {
    double decay_factor = 1e-2;
    double q_tol = 1e-4;  // relative to ||q(0)||_1
    double statics_tol = 1e-12;
    int levels = 64;
    double noise = 1e-10;  // absolute floor for both errors, for runs started at equilibrium
};

struct Scenario {
    std::string id = "scenario";
    GridSpec grid;
    InitialSpec initial;
    LawSpec law;
    double mu = 0.1;
    double lambda = 0.0;
    ForcingSpec forcing;
    SchemeConfig scheme;
    double t_end = 1.0;
    double sample_every = 0.01;
    std::optional<double> snapshot_every;
    std::filesystem::path output = "out";

    DissipativitySettings dissipativity;
    PeriodicSettings periodic;
    ShiftSettings shift;
    SteadySettings steady;

    // Throws ConfigError on any invalid field.
    void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& s);

Grid build_grid(const GridSpec& spec);
ScalarField build_profile(const ProfileSpec& spec, const Grid& grid);
Forcing build_forcing(const ForcingSpec& spec, const Grid& grid);
FluidParams build_fluid(const Scenario& s);
InitialData build_initial(const Scenario& s, const Grid& grid, const Forcing& forcing);

}  // namespace baro::harness
