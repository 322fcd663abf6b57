#include <cmath>
#include <limits>

#include "baro/core.hpp"
#include "baro/errors.hpp"
#include "doctest.h"

using namespace baro;

namespace {

Grid grid1(int n, double len = 1.0, int ghost = 1) {
    const std::array<double, 2> e{len, 1.0};
    const std::array<int, 2> c{n, 1};
    return make_grid(1, e, c, ghost);
}

Grid grid2(int nx, int ny, double lx, double ly) {
    const std::array<double, 2> e{lx, ly};
    const std::array<int, 2> c{nx, ny};
    return make_grid(2, e, c, 1);
}

}  // namespace

TEST_CASE("make_grid arithmetic") {
    const Grid g = grid1(100, 1.0, 2);
    CHECK(g.dx[0] == doctest::Approx(0.01));
    CHECK(g.volume() == doctest::Approx(1.0));
    CHECK(g.storage_size() == 104);

    const Grid h = grid2(10, 20, 1.0, 2.0);
    CHECK(h.dx[0] == doctest::Approx(0.1));
    CHECK(h.dx[1] == doctest::Approx(0.1));
    CHECK(h.volume() == doctest::Approx(2.0));
    CHECK(h.cell_volume() == doctest::Approx(0.01));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(grid1(100, 0.0), ConfigError);
    CHECK_THROWS_AS(grid1(3), ConfigError);
    CHECK_THROWS_AS(grid1(10, 1.0, 0), ConfigError);
    const std::array<double, 2> e{1.0, 1.0};
    const std::array<int, 2> c{10, 10};
    CHECK_THROWS_AS(make_grid(3, e, c, 1), ConfigError);
}

TEST_CASE("index layout is axis 0 fastest") {
    const Grid g = grid2(4, 5, 1.0, 1.0);
    CHECK(g.index(1, 0) - g.index(0, 0) == 1);
    CHECK(g.index(0, 1) - g.index(0, 0) == 6);
    CHECK(g.interior_id(2, 3) == 14);
}

TEST_CASE("ghost reflection") {
    const Grid g = grid1(4, 1.0, 2);
    ScalarField f = ScalarField::from_function(g, [](double x, double) { return x; });
    f.fill_ghosts(Parity::Even);
    CHECK(f(-1) == f(0));
    CHECK(f(-2) == f(1));
    CHECK(f(4) == f(3));
    f.fill_ghosts(Parity::Odd);
    CHECK(f(-1) == -f(0));
    CHECK(f(5) == -f(2));

    const Grid h = grid2(4, 4, 1.0, 1.0);
    ScalarField s = ScalarField::from_function(h, [](double x, double y) { return 1.0 + x + 10.0 * y; });
    s.fill_ghosts(Parity::Odd);
    CHECK(s(-1, 2) == -s(0, 2));
    CHECK(s(2, 4) == -s(2, 3));
    CHECK(s(-1, -1) == s(0, 0));  // corner: reflected twice
}

TEST_CASE("total_mass examples") {
    const Grid g = grid1(10);
    CHECK(total_mass(ScalarField(g, 2.0)) == doctest::Approx(2.0));
    CHECK(total_mass(ScalarField(grid2(8, 16, 1.0, 2.0), 1.0)) == doctest::Approx(2.0));
    const Grid fine = grid1(1000);
    const auto lin = ScalarField::from_function(fine, [](double x, double) { return x; });
    CHECK(std::abs(total_mass(lin) - 0.5) <= 1e-6);
}

TEST_CASE("validate_initial_data accepts uniform data") {
    const Grid g = grid1(10);
    const ValidationReport r = validate_initial_data({ScalarField(g, 1.0), VectorField(g)});
    REQUIRE(r.ok());
    CHECK(r.mass == doctest::Approx(1.0));
    CHECK(r.state->time == 0.0);
}

TEST_CASE("validate_initial_data rejects momentum on vacuum") {
    const Grid g = grid1(10);
    auto rho = ScalarField::from_function(g, [](double x, double) { return x < 0.5 ? 0.0 : 1.0; });
    const ValidationReport r = validate_initial_data({rho, VectorField(g, 1.0)});
    CHECK_FALSE(r.ok());
    REQUIRE(r.violations.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(r.violations[k].kind == Violation::Kind::MomentumOnVacuum);
        CHECK(r.violations[k].cell == static_cast<long>(k));
    }
    CHECK(r.describe().find("cell 0") != std::string::npos);
}

TEST_CASE("validate_initial_data rejects negative density and zero mass") {
    const Grid g = grid1(10);
    ScalarField rho(g, 1.0);
    rho(3) = -1e-3;
    ValidationReport r = validate_initial_data({rho, VectorField(g)});
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations[0].kind == Violation::Kind::NegativeDensity);
    CHECK(r.violations[0].cell == 3);

    r = validate_initial_data({ScalarField(g, 0.0), VectorField(g)});
    CHECK_FALSE(r.ok());
}

TEST_CASE("validate_initial_data rejects mismatched grids") {
    const ValidationReport r = validate_initial_data({ScalarField(grid1(10), 1.0), VectorField(grid1(12))});
    CHECK_FALSE(r.ok());
    CHECK(r.violations[0].kind == Violation::Kind::GridMismatch);
}

TEST_CASE("from_function rejects non-finite samples") {
    const Grid g = grid1(10);
    CHECK_THROWS_AS(ScalarField::from_function(g, [](double, double) { return std::numeric_limits<double>::quiet_NaN(); }),
                    ConfigError);
}
