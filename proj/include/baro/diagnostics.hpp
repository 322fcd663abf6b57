#pragma once

// Measured quantities: energy and its budget, the renormalized continuity
// residual, and the norms and pairings used to compare trajectories.
// All integrals are midpoint sums over interior cells.

#include <span>
#include <vector>

#include "baro/constitutive.hpp"
#include "baro/core.hpp"
#include "baro/forcing.hpp"

namespace baro {

struct EnergyRecord {
    double time = 0.0;
    double kinetic = 0.0;    // int 1/2 |q|^2 / rho
    double potential = 0.0;  // int P(rho)
    double total = 0.0;      // kinetic + potential
    double dissipation = 0.0;  // int mu |grad u|^2 + (lambda + mu) |div u|^2
    double power = 0.0;        // int rho f . u
};

// Kinetic and potential parts only; dissipation and power are left at zero.
EnergyRecord total_energy(const State& s, const PressureLaw& law, double floor = kDefaultVacuumFloor);

// Velocity gradients are differenced at faces using the no-slip ghost reflection;
// in 2D the divergence term uses cell-centred central differences.
double dissipation_rate(const State& s, const Viscosity& visc, double floor = kDefaultVacuumFloor);

double forcing_power(const State& s, const VectorField& f, double floor = kDefaultVacuumFloor);

// Full record at s.time; `force` holds f(s.time, .) at cell centres.
EnergyRecord energy_record(const State& s, const PressureLaw& law, const Viscosity& visc, const VectorField& force,
                           double floor = kDefaultVacuumFloor);

struct ResidualSeries {
    std::vector<double> values;  // one per interval between consecutive records
    double max = 0.0;            // signed maximum; > 0 violates the energy inequality
    double max_abs = 0.0;
};

// r_k = (E_{k+1} - E_k)/(t_{k+1} - t_k) + avg(D) - avg(W), trapezoid averages.
ResidualSeries energy_inequality_residual(std::span<const EnergyRecord> records);

// Admissible truncation: b(r) = r on [0, M], b(r) = M (1 + t - t^2/2) with t = (r - M)/M on
// [M, 2M], and b = 3M/2 beyond, so b is C1 and b' vanishes for r >= 2M.
class RenormFunction {
public:
    explicit RenormFunction(double m);
    double level() const { return m_; }
    double value(double rho) const;
    double derivative(double rho) const;

private:
    double m_;
};

// L1 norm of the discrete residual of
//   d_t b(rho) + div(b(rho) u) + (b'(rho) rho - b(rho)) div u = 0
// between two states (after.time > before.time). The transport term uses the
// Rusanov-form flux of b(rho) with the before-state wave speeds, the divergence
// of u uses face-averaged velocities.
double renorm_residual(const State& before, const State& after, const PressureLaw& law, const RenormFunction& b,
                       double floor = kDefaultVacuumFloor);

double lp_norm(const ScalarField& f, double alpha);
double lp_distance(const ScalarField& a, const ScalarField& b, double alpha);
// L^alpha distance of vector fields with the Euclidean pointwise norm.
double lp_distance(const VectorField& a, const VectorField& b, double alpha);
double l1_norm(const VectorField& v);

// int (a - b) . phi
double weak_pairing(const VectorField& a, const VectorField& b, const VectorField& phi);

}  // namespace baro
