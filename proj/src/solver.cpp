#include "baro/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "baro/errors.hpp"
#include "kernels/rhs.hpp"

namespace baro {

void SchemeConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("scheme: cfl must lie in (0, 1]");
    if (!(vacuum_floor > 0.0)) throw ConfigError("scheme: vacuum_floor must be > 0");
}

double stable_dt(const State& s, const FluidParams& params, const SchemeConfig& scheme, SolverStats* stats) {
    const Grid& g = s.rho.grid();
    const double floor = scheme.vacuum_floor;
    const double visc_coeff = 2.0 * g.dim * params.visc.longitudinal();
    const double dx2 = g.min_dx() * g.min_dx();
    double dt = std::numeric_limits<double>::infinity();
    long negative = 0;
    for_each_cell(g, [&](int i, int j) {
        const double r = std::max(s.rho(i, j), floor);
        const double dp = dpressure(r, params.law);
        if (dp < 0.0) ++negative;
        const double c = std::sqrt(std::max(dp, 0.0));
        for (int a = 0; a < g.dim; ++a) {
            const double u = std::abs(s.mom[a](i, j)) / r;
            if (u + c > 0.0) dt = std::min(dt, g.dx[a] / (u + c));
        }
        dt = std::min(dt, dx2 * r / visc_coeff);
    });
    if (stats) stats->negative_slope_cells += negative;
    return scheme.cfl * dt;
}

struct Stepper::Workspace {
    explicit Workspace(const Grid& g) : parallel(g) {}
    kernels::ParallelRhs parallel;
};

Stepper::Stepper(const Grid& grid, FluidParams params, const Forcing& forcing, SchemeConfig scheme)
    : grid_(grid),
      params_(std::move(params)),
      forcing_(&forcing),
      scheme_(scheme),
      force_(grid),
      rhs_{ScalarField(grid), VectorField(grid)},
      stage_{ScalarField(grid), VectorField(grid), 0.0},
      work_(std::make_shared<Workspace>(grid)) {
    scheme_.validate();
    if (forcing.is_gradient() && !(forcing.potential().grid() == grid))
        throw ConfigError("forcing potential lives on a different grid");
    hydrostatic_ = forcing.is_gradient() && params_.law.is_isentropic() && scheme_.well_balanced;
    if (!forcing.is_time_dependent()) forcing.evaluate(0.0, force_);
}

void Stepper::evaluate_rhs(State& s, Rhs& out) {
    s.rho.fill_ghosts(Parity::Even);
    s.mom.fill_ghosts(Parity::Odd);
    if (forcing_->is_time_dependent()) forcing_->evaluate(s.time, force_);

    const kernels::RhsInputs in{&grid_,
                                &params_.law,
                                &params_.visc,
                                scheme_.vacuum_floor,
                                hydrostatic_ ? &forcing_->potential() : nullptr,
                                (forcing_->is_zero() || hydrostatic_) ? nullptr : &force_};
    if (scheme_.backend == Backend::Reference)
        kernels::rhs_reference(s, in, out);
    else
        work_->parallel.evaluate(s, in, out);

    // Attribute the first non-finite entry to a sub-term.
    std::optional<std::pair<int, int>> bad;
    for_each_cell(grid_, [&](int i, int j) {
        if (bad) return;
        bool ok = std::isfinite(out.rho(i, j));
        for (int k = 0; k < grid_.dim; ++k) ok = ok && std::isfinite(out.mom[k](i, j));
        if (!ok) bad = std::make_pair(i, j);
    });
    if (!bad) return;
    const auto [i, j] = *bad;
    const kernels::CellTerms t = kernels::cell_terms_reference(s, in, i, j);
    std::string term = "update";
    if (!std::isfinite(t.rho_convective)) term = "continuity_flux";
    for (int k = 0; k < grid_.dim && term == "update"; ++k) {
        if (!std::isfinite(t.mom_convective[static_cast<std::size_t>(k)])) term = "momentum_flux";
        else if (!std::isfinite(t.mom_viscous[static_cast<std::size_t>(k)])) term = "viscous_stress";
        else if (!std::isfinite(t.mom_source[static_cast<std::size_t>(k)])) term = "forcing";
    }
    const long id = grid_.interior_id(i, j);
    std::ostringstream msg;
    msg << "non-finite right-hand side in " << term << " at cell " << id << ", t = " << s.time;
    throw SolverError(msg.str(), id, term, s.time);
}

void Stepper::enforce_floor(State& s) {
    const double floor = scheme_.vacuum_floor;
    for_each_cell(grid_, [&](int i, int j) {
        double& r = s.rho(i, j);
        bool clamped = false;
        if (r < floor) {
            r = floor;
            clamped = true;
        }
        if (r <= floor) {
            for (int k = 0; k < grid_.dim; ++k) {
                if (s.mom[k](i, j) != 0.0) clamped = true;
                s.mom[k](i, j) = 0.0;
            }
        }
        if (clamped) ++stats_.clamp_events;
    });
}

void Stepper::check_finite(const State& s, const State& before) {
    for_each_cell(grid_, [&](int i, int j) {
        bool ok = std::isfinite(s.rho(i, j));
        for (int k = 0; k < grid_.dim; ++k) ok = ok && std::isfinite(s.mom[k](i, j));
        if (!ok) {
            const long id = grid_.interior_id(i, j);
            throw SolverError("non-finite state after update at cell " + std::to_string(id), id, "update",
                              before.time);
        }
    });
}

// s <- s + dt L(s, s.time)
void Stepper::stage(State& s, double dt) {
    evaluate_rhs(s, rhs_);
    for_each_cell(grid_, [&](int i, int j) {
        s.rho(i, j) += dt * rhs_.rho(i, j);
        for (int k = 0; k < grid_.dim; ++k) s.mom[k](i, j) += dt * rhs_.mom[k](i, j);
    });
    s.time += dt;
    check_finite(s, s);
    enforce_floor(s);
}

void Stepper::advance(State& s, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step: dt must be positive and finite");
    const double t0 = s.time;
    if (scheme_.integrator == Integrator::ForwardEuler) {
        stage(s, dt);
    } else {
        stage_.rho = s.rho;
        stage_.mom = s.mom;
        stage_.time = s.time;
        stage(stage_, dt);
        stage(stage_, dt);
        for_each_cell(grid_, [&](int i, int j) {
            s.rho(i, j) = 0.5 * s.rho(i, j) + 0.5 * stage_.rho(i, j);
            for (int k = 0; k < grid_.dim; ++k) s.mom[k](i, j) = 0.5 * s.mom[k](i, j) + 0.5 * stage_.mom[k](i, j);
        });
        enforce_floor(s);
    }
    s.time = t0 + dt;
    ++stats_.steps;
}

State step(const State& state, const FluidParams& params, const Forcing& forcing, const SchemeConfig& scheme,
           double dt, SolverStats* stats) {
    Stepper stepper(state.rho.grid(), params, forcing, scheme);
    State next = state;
    stepper.advance(next, dt);
    next.rho.fill_ghosts(Parity::Even);
    next.mom.fill_ghosts(Parity::Odd);
    if (stats) {
        stats->steps += stepper.stats().steps;
        stats->clamp_events += stepper.stats().clamp_events;
    }
    return next;
}

State simulate(State s, const FluidParams& params, const Forcing& forcing, const SchemeConfig& scheme, double t_end,
               Observer* observer, SolverStats* stats) {
    if (!(t_end >= s.time)) throw ConfigError("simulate: t_end precedes the initial time");
    Stepper stepper(s.rho.grid(), params, forcing, scheme);
    SolverStats& st = stepper.stats();

    auto flush_observer = [&] {
        if (!observer) return;
        for (auto next = observer->next_time(); next && *next <= s.time; next = observer->next_time())
            observer->observe(s, st);
    };

    flush_observer();
    while (s.time < t_end) {
        double dt = stable_dt(s, params, scheme, &st);
        double limit = t_end;
        if (observer) {
            if (const auto next = observer->next_time(); next && *next > s.time) limit = std::min(limit, *next);
        }
        const bool hits_limit = s.time + dt >= limit;
        if (hits_limit) dt = limit - s.time;
        stepper.advance(s, dt);
        if (hits_limit) s.time = limit;
        flush_observer();
    }
    s.rho.fill_ghosts(Parity::Even);
    s.mom.fill_ghosts(Parity::Odd);
    if (stats) {
        stats->steps += st.steps;
        stats->clamp_events += st.clamp_events;
        stats->negative_slope_cells += st.negative_slope_cells;
    }
    return s;
}

}  // namespace baro
