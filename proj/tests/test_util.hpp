#pragma once

#include <array>

#include "baro/core.hpp"

namespace testutil {

inline baro::Grid grid1(int n, double len = 1.0) {
    const std::array<double, 2> e{len, 1.0};
    const std::array<int, 2> c{n, 1};
    return baro::make_grid(1, e, c, 1);
}

inline baro::Grid grid2(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    const std::array<double, 2> e{lx, ly};
    const std::array<int, 2> c{nx, ny};
    return baro::make_grid(2, e, c, 1);
}

inline baro::State state_of(baro::ScalarField rho, baro::VectorField q, double t = 0.0) {
    baro::State s{std::move(rho), std::move(q), t};
    s.rho.fill_ghosts(baro::Parity::Even);
    s.mom.fill_ghosts(baro::Parity::Odd);
    return s;
}

// Deterministic splitmix-style generator for hand-rolled property tests.
class Rng {
public:
    explicit Rng(unsigned long long seed) : s_(seed) {}
    unsigned long long next() {
        unsigned long long z = (s_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<unsigned long long>(hi - lo + 1)); }

private:
    unsigned long long s_;
};

}  // namespace testutil
