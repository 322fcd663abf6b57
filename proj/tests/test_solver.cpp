#include <cmath>
#include <limits>
#include <numbers>

#include "baro/errors.hpp"
#include "baro/solver.hpp"
#include "baro/statics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace baro;
using doctest::Approx;
using testutil::grid1;
using testutil::grid2;
using testutil::state_of;

namespace {

const double pi = std::numbers::pi;

FluidParams fluid(double mu = 0.1, double a = 1.0, double gamma = 2.0) {
    return {Viscosity(mu, 0.0), PressureLaw::isentropic(a, gamma)};
}

State wavy_1d(const Grid& g) {
    auto rho = ScalarField::from_function(g, [](double x, double) { return 1.0 + 0.3 * std::cos(pi * x); });
    auto q = VectorField::from_function(g, [](double x, double) { return std::array<double, 2>{0.2 * std::sin(pi * x), 0}; });
    return state_of(rho, q);
}

State wavy_2d(const Grid& g) {
    auto rho = ScalarField::from_function(
        g, [](double x, double y) { return 1.0 + 0.3 * std::cos(pi * x) * std::cos(2 * pi * y); });
    auto q = VectorField::from_function(g, [](double x, double y) {
        return std::array<double, 2>{0.2 * std::sin(pi * x) * std::sin(pi * y), -0.1 * std::sin(2 * pi * x) * std::sin(pi * y)};
    });
    return state_of(rho, q);
}

double max_diff(const State& a, const State& b) {
    double d = 0.0;
    for_each_cell(a.rho.grid(), [&](int i, int j) {
        d = std::max(d, std::abs(a.rho(i, j) - b.rho(i, j)));
        for (int k = 0; k < a.rho.grid().dim; ++k) d = std::max(d, std::abs(a.mom[k](i, j) - b.mom[k](i, j)));
    });
    return d;
}

bool bitwise_equal(const State& a, const State& b) {
    bool eq = true;
    for_each_cell(a.rho.grid(), [&](int i, int j) {
        eq = eq && a.rho(i, j) == b.rho(i, j);
        for (int k = 0; k < a.rho.grid().dim; ++k) eq = eq && a.mom[k](i, j) == b.mom[k](i, j);
    });
    return eq;
}

}  // namespace

TEST_CASE("stable_dt example") {
    const Grid g = grid1(100);
    const State s = state_of(ScalarField(g, 1.0), VectorField(g, 0.0));
    // min(dx / c, dx^2 rho / (2 * 0.2)) = min(0.01 / sqrt(2), 2.5e-4) -> 0.4 * 2.5e-4
    CHECK(stable_dt(s, fluid(), SchemeConfig{}) == Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("scheme config validation") {
    SchemeConfig s;
    s.cfl = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.cfl = 1.5;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SchemeConfig{};
    s.vacuum_floor = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("uniform rest state is unchanged") {
    for (const Grid& g : {grid1(32), grid2(12, 10)}) {
        const State s = state_of(ScalarField(g, 1.3), VectorField(g, 0.0));
        const State t = simulate(s, fluid(), Forcing::none(), SchemeConfig{}, 0.1);
        CHECK(max_diff(s, t) == 0.0);
        CHECK(t.time == 0.1);
    }
}

TEST_CASE("each step conserves mass") {
    for (const Grid& g : {grid1(64), grid2(16, 16)}) {
        State s = g.dim == 1 ? wavy_1d(g) : wavy_2d(g);
        const double m0 = total_mass(s);
        const SchemeConfig sc;
        for (int n = 0; n < 20; ++n) {
            s = step(s, fluid(), Forcing::none(), sc, stable_dt(s, fluid(), sc));
            CHECK(std::abs(total_mass(s) - m0) <= 1e-13 * m0);
        }
    }
}

TEST_CASE("reference and parallel backends agree bitwise") {
    const Grid g1 = grid1(50);
    const Grid g2 = grid2(14, 11);
    for (const Grid& g : {g1, g2}) {
        const State s0 = g.dim == 1 ? wavy_1d(g) : wavy_2d(g);
        ScalarField F = ScalarField::from_function(g, [](double x, double y) { return -x + 0.5 * y * y; });
        VectorField f0 = VectorField::from_function(g, [](double x, double y) { return std::array<double, 2>{x, -y}; });
        const Forcing forcings[] = {Forcing::none(), Forcing::gradient(F),
                                    Forcing::periodic(f0, 0.3, Envelope{0.0, {1.0}, {}})};
        for (const Forcing& f : forcings)
            for (bool wb : {true, false}) {
                SchemeConfig ref;
                ref.backend = Backend::Reference;
                ref.well_balanced = wb;
                SchemeConfig par = ref;
                par.backend = Backend::Parallel;
                const State a = simulate(s0, fluid(), f, ref, 0.02);
                const State b = simulate(s0, fluid(), f, par, 0.02);
                CHECK(bitwise_equal(a, b));
            }
    }
}

TEST_CASE("runs are deterministic") {
    const Grid g = grid2(16, 12);
    const State s0 = wavy_2d(g);
    SolverStats st1, st2;
    const State a = simulate(s0, fluid(), Forcing::none(), SchemeConfig{}, 0.05, nullptr, &st1);
    const State b = simulate(s0, fluid(), Forcing::none(), SchemeConfig{}, 0.05, nullptr, &st2);
    CHECK(bitwise_equal(a, b));
    CHECK(st1.steps == st2.steps);
    CHECK(st1.steps > 0);
}

TEST_CASE("t_end equal to the start time takes no steps") {
    const Grid g = grid1(20);
    const State s0 = wavy_1d(g);
    SolverStats st;
    const State t = simulate(s0, fluid(), Forcing::none(), SchemeConfig{}, 0.0, nullptr, &st);
    CHECK(st.steps == 0);
    CHECK(bitwise_equal(s0, t));
    CHECK_THROWS_AS(simulate(s0, fluid(), Forcing::none(), SchemeConfig{}, -1.0), ConfigError);
}

TEST_CASE("non-positive dt is rejected") {
    const Grid g = grid1(20);
    const State s0 = wavy_1d(g);
    CHECK_THROWS_AS(step(s0, fluid(), Forcing::none(), SchemeConfig{}, 0.0), ConfigError);
    CHECK_THROWS_AS(step(s0, fluid(), Forcing::none(), SchemeConfig{}, -1e-3), ConfigError);
    CHECK_THROWS_AS(step(s0, fluid(), Forcing::none(), SchemeConfig{}, std::numeric_limits<double>::infinity()),
                    ConfigError);
}

TEST_CASE("non-finite values raise SolverError with the sub-term") {
    const Grid g = grid1(20);
    const State s0 = wavy_1d(g);
    const Forcing bad = Forcing::analytic(
        [](double, VectorField& out) {
            for_each_cell(out.grid(), [&](int i, int j) { out[0](i, j) = i == 7 ? std::nan("") : 0.0; });
        },
        1.0);
    try {
        step(s0, fluid(), bad, SchemeConfig{}, 1e-4);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.subterm() == "forcing");
        CHECK(e.cell() == 7);
        CHECK(e.time() == 0.0);
    }

    State s1 = s0;
    s1.mom[0](4) = std::numeric_limits<double>::infinity();
    try {
        step(s1, fluid(), Forcing::none(), SchemeConfig{}, 1e-4);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.subterm() == "continuity_flux");
    }
}

TEST_CASE("static profile is a discrete fixed point") {
    const Grid g = grid1(80);
    const ScalarField F = ScalarField::from_function(g, [](double x, double) { return 0.3 * std::cos(2 * pi * x); });
    const StaticSolution sol = solve_static(F, 1.0, 1.0, 2.0);
    const Forcing f = Forcing::gradient(F);
    Stepper st(g, fluid(), f, SchemeConfig{});
    CHECK(st.uses_hydrostatic_reconstruction());
    State s = state_of(sol.rho_s, VectorField(g, 0.0));
    Rhs rhs{ScalarField(g), VectorField(g)};
    st.evaluate_rhs(s, rhs);
    double m = 0.0;
    for_each_cell(g, [&](int i, int j) { m = std::max({m, std::abs(rhs.rho(i, j)), std::abs(rhs.mom[0](i, j))}); });
    CHECK(m <= 1e-12);

    const State t = simulate(s, fluid(), f, SchemeConfig{}, 0.5);
    CHECK(max_diff(s, t) <= 1e-12);

    // Without hydrostatic reconstruction the same state drifts.
    SchemeConfig plain;
    plain.well_balanced = false;
    const State u = simulate(s, fluid(), f, plain, 0.5);
    CHECK(max_diff(s, u) > 1e-6);
}

TEST_CASE("vacuum floor is enforced and counted") {
    // An oversized Euler step drains the cells around a diverging jet below zero.
    const Grid g = grid1(40);
    auto q = VectorField::from_function(g, [](double x, double) { return std::array<double, 2>{x < 0.5 ? -2.0 : 2.0, 0}; });
    SchemeConfig sc;
    sc.integrator = Integrator::ForwardEuler;
    SolverStats st;
    const State t = step(state_of(ScalarField(g, 1.0), q), fluid(), Forcing::none(), sc, 0.02, &st);
    double mn = 1.0;
    for_each_cell(g, [&](int i, int j) { mn = std::min(mn, t.rho(i, j)); });
    CHECK(mn == kDefaultVacuumFloor);
    CHECK(st.clamp_events > 0);
}
