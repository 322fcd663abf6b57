#pragma once

// Static density profiles for gradient forcing f = grad F: solutions of
// a grad(rho^gamma) = rho grad F. On the support the first integral gives
// a gamma/(gamma-1) rho^(gamma-1) = F - c, so
//   rho_s = [ (gamma-1)/(a gamma) (F - c)_+ ]^(1/(gamma-1)),
// with the constant c fixed by the total mass.

#include <optional>

#include "baro/core.hpp"

namespace baro {

struct LevelSetReport {
    bool connected_all = true;
    std::optional<double> first_disconnected_level;
    int levels = 0;
    int max_components = 0;
};

struct StaticSolution {
    ScalarField rho_s;
    double c = 0.0;
    double mass = 0.0;
    double mass_error = 0.0;  // |int rho_s - m|
    bool support_connected = true;
    int iterations = 0;
};

ScalarField static_profile(const ScalarField& potential, double c, double a, double gamma);
// int rho_s(c); non-increasing in c.
double static_mass(const ScalarField& potential, double c, double a, double gamma);

// Bisection for c on [min F - K, max F], K = a gamma/(gamma-1) (m/|Omega|)^(gamma-1),
// until |mass - m| <= tol * m.
StaticSolution solve_static(const ScalarField& potential, double m, double a, double gamma, double tol = 1e-12,
                            int levels = 64);

// Number of face-connected components of {F > k} over interior cells.
int count_components(const ScalarField& potential, double k);

// Samples `levels` thresholds k_j = min F + (j + 1/2)/levels (max F - min F).
LevelSetReport check_level_sets(const ScalarField& potential, int levels);

// L1 norm of a grad(rho_s^gamma) - rho_s grad F by central differences, over cells
// whose whole stencil is interior and strictly inside the support.
double static_residual(const StaticSolution& sol, const ScalarField& potential, double a, double gamma);

}  // namespace baro
