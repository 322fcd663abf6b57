// Reference vs parallel right-hand-side kernels on 1D and 2D grids.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "baro/solver.hpp"

using namespace baro;

namespace {

struct Setup {
    Grid grid;
    State state;
    FluidParams params{Viscosity(0.1, 0.0), PressureLaw::isentropic(1.0, 2.0)};
    Forcing forcing = Forcing::none();

    explicit Setup(int dim, int n) {
        const std::array<double, 2> ext{1.0, 1.0};
        const std::array<int, 2> cells{n, n};
        grid = make_grid(dim, ext, cells, 1);
        const double pi = std::numbers::pi;
        state.rho = ScalarField::from_function(grid, [&](double x, double y) { return 1.0 + 0.2 * std::cos(pi * x) * std::cos(pi * y); });
        state.mom = VectorField::from_function(grid, [&](double x, double y) {
            return std::array<double, 2>{0.3 * std::sin(pi * x), 0.1 * std::sin(pi * y)};
        });
    }
};

void rhs(benchmark::State& bs, Backend backend) {
    const int dim = static_cast<int>(bs.range(0));
    Setup s(dim, static_cast<int>(bs.range(1)));
    SchemeConfig scheme;
    scheme.backend = backend;
    Stepper stepper(s.grid, s.params, s.forcing, scheme);
    Rhs out{ScalarField(s.grid), VectorField(s.grid)};
    for (auto _ : bs) {
        stepper.evaluate_rhs(s.state, out);
        benchmark::DoNotOptimize(out.rho.data().data());
    }
    bs.SetItemsProcessed(bs.iterations() * static_cast<long>(s.grid.interior_count()));
}

void BM_RhsReference(benchmark::State& bs) { rhs(bs, Backend::Reference); }
void BM_RhsParallel(benchmark::State& bs) { rhs(bs, Backend::Parallel); }

}  // namespace

BENCHMARK(BM_RhsReference)->Args({1, 4096})->Args({2, 256});
BENCHMARK(BM_RhsParallel)->Args({1, 4096})->Args({2, 256});

BENCHMARK_MAIN();
