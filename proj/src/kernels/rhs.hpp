#pragma once

#include <array>
#include <vector>

#include "baro/solver.hpp"

namespace baro::kernels {

struct RhsInputs {
    const Grid* grid;
    const PressureLaw* law;
    const Viscosity* visc;
    double floor;
    const ScalarField* potential;  // non-null selects hydrostatic reconstruction
    const VectorField* force;      // non-null adds rho f at cell centres
};

// Contributions to one cell's right-hand side, for error attribution.
struct CellTerms {
    double rho_convective = 0.0;
    std::array<double, 2> mom_convective{};
    std::array<double, 2> mom_viscous{};
    std::array<double, 2> mom_source{};
};

// Serial per-cell evaluation straight from field accessors. `s` must have ghosts filled.
void rhs_reference(const State& s, const RhsInputs& in, Rhs& out);
CellTerms cell_terms_reference(const State& s, const RhsInputs& in, int i, int j);

// Face-array evaluation with OpenMP loops. Produces the same bits as rhs_reference.
class ParallelRhs {
public:
    explicit ParallelRhs(const Grid& grid);
    void evaluate(const State& s, const RhsInputs& in, Rhs& out);

private:
    struct FaceArrays {
        std::vector<double> mass, mom_n, mom_t, corr_l, corr_r, visc_n, visc_t;
    };
    Grid grid_;
    std::array<std::vector<double>, 2> vel_;
    std::vector<double> p_, c_, phi_;
    std::array<FaceArrays, 2> faces_;
};

}  // namespace baro::kernels
