#pragma once

// Explicit finite-volume integration of the barotropic Navier-Stokes system
//
//   d_t rho + div(q) = 0
//   d_t q + div(q (x) q / rho) + grad p(rho) = div S + rho f
//
// on a box with no-slip walls. Convective fluxes use the Rusanov (local
// Lax-Friedrichs) flux with wave speed |u| + c_s and piecewise-constant states;
// the viscous stress is differenced at faces. Walls are imposed through ghost
// cells: density is reflected evenly, momentum oddly.
//
// For gradient forcing f = grad F with an isentropic law the scheme uses
// hydrostatic reconstruction at faces, so discrete states with
// h(rho) - F = const and q = 0 are exact fixed points; the static profile of
// the statics module is then a discrete equilibrium.

#include <memory>
#include <optional>

#include "baro/constitutive.hpp"
#include "baro/core.hpp"
#include "baro/forcing.hpp"

namespace baro {

enum class Integrator { ForwardEuler, SspRk2 };

// Reference: straightforward serial per-cell kernel, kept for cross-checking.
// Parallel: face-flux arrays with OpenMP loops; the production path.
enum class Backend { Reference, Parallel };

struct SchemeConfig {
    double cfl = 0.4;
    double vacuum_floor = kDefaultVacuumFloor;
    Integrator integrator = Integrator::SspRk2;
    Backend backend = Backend::Parallel;
    bool well_balanced = true;

    void validate() const;
};

struct FluidParams {
    Viscosity visc;
    PressureLaw law;
};

struct SolverStats {
    long steps = 0;
    long clamp_events = 0;        // cells lifted to the vacuum floor or zeroed
    long negative_slope_cells = 0;  // cells where p' < 0 was clamped for the CFL bound
};

// cfl * min over cells and axes of min(dx/(|u| + c_s), dx_min^2 rho / (2 dim (2 mu + lambda))),
// with rho taken as max(rho, floor).
double stable_dt(const State& state, const FluidParams& params, const SchemeConfig& scheme,
                 SolverStats* stats = nullptr);

// Semi-discrete right-hand side L(U, t), interior cells only.
struct Rhs {
    ScalarField rho;
    VectorField mom;
};

// Holds scratch storage so repeated steps do not allocate.
class Stepper {
public:
    Stepper(const Grid& grid, FluidParams params, const Forcing& forcing, SchemeConfig scheme);

    // Advances `state` by dt in place. Throws SolverError on non-finite values.
    void advance(State& state, double dt);

    // Evaluates L(state, state.time); ghost layers of `state` are refreshed.
    void evaluate_rhs(State& state, Rhs& out);

    const SolverStats& stats() const { return stats_; }
    SolverStats& stats() { return stats_; }
    bool uses_hydrostatic_reconstruction() const { return hydrostatic_; }

private:
    void stage(State& s, double dt);
    void enforce_floor(State& s);
    void check_finite(const State& s, const State& before);

    Grid grid_;
    FluidParams params_;
    const Forcing* forcing_;
    SchemeConfig scheme_;
    bool hydrostatic_ = false;
    SolverStats stats_;

    VectorField force_;
    Rhs rhs_;
    State stage_;
    struct Workspace;
    std::shared_ptr<Workspace> work_;
};

State step(const State& state, const FluidParams& params, const Forcing& forcing, const SchemeConfig& scheme,
           double dt, SolverStats* stats = nullptr);

// Receives the state at requested times. next_time() returns the next requested
// time (nullopt when done); observe() must advance the schedule.
class Observer {
public:
    virtual ~Observer() = default;
    virtual std::optional<double> next_time() const = 0;
    virtual void observe(const State& state, const SolverStats& stats) = 0;
};

// Integrates to t_end with dt = min(stable_dt, next observer time - t, t_end - t).
State simulate(State initial, const FluidParams& params, const Forcing& forcing, const SchemeConfig& scheme,
               double t_end, Observer* observer = nullptr, SolverStats* stats = nullptr);

}  // namespace baro
