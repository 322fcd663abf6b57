#include <algorithm>

#include "flux.hpp"
#include "rhs.hpp"

namespace baro::kernels {

namespace {

double velocity(const State& s, int k, int i, int j, double floor) {
    return s.mom[k](i, j) / std::max(s.rho(i, j), floor);
}

struct FaceResult {
    ConvectiveFlux conv;
    ViscousFlux visc;
};

// Face on axis a between cell (i, j) - e_a and cell (i, j).
FaceResult face(const State& s, const RhsInputs& in, int a, int i, int j) {
    const Grid& g = *in.grid;
    const int b = 1 - a;
    const int il = i - (a == 0 ? 1 : 0);
    const int jl = j - (a == 1 ? 1 : 0);
    auto side = [&](int ii, int jj) {
        const double un = velocity(s, a, ii, jj, in.floor);
        const double ut = g.dim > 1 ? velocity(s, b, ii, jj, in.floor) : 0.0;
        return make_side(s.rho(ii, jj), un, ut, *in.law, in.floor);
    };
    const Side l = side(il, jl);
    const Side r = side(i, j);

    FaceResult f;
    f.conv = in.potential ? hydrostatic_flux(l, r, -(*in.potential)(il, jl), -(*in.potential)(i, j), *in.law, in.floor)
                          : rusanov(l, r);

    const double dn_un = (r.un - l.un) / g.dx[a];
    const double dn_ut = (r.ut - l.ut) / g.dx[a];
    double dt_un = 0.0;
    double dt_ut = 0.0;
    if (g.dim > 1) {
        const int di = b == 0 ? 1 : 0;
        const int dj = b == 1 ? 1 : 0;
        auto tangential = [&](int k) {
            return (velocity(s, k, il + di, jl + dj, in.floor) - velocity(s, k, il - di, jl - dj, in.floor) +
                    velocity(s, k, i + di, j + dj, in.floor) - velocity(s, k, i - di, j - dj, in.floor)) /
                   (4.0 * g.dx[b]);
        };
        dt_un = tangential(a);
        dt_ut = tangential(b);
    }
    f.visc = face_stress(g.dim, dn_un, dn_ut, dt_un, dt_ut, *in.visc);
    return f;
}

}  // namespace

CellTerms cell_terms_reference(const State& s, const RhsInputs& in, int i, int j) {
    const Grid& g = *in.grid;
    CellTerms t;
    for (int a = 0; a < g.dim; ++a) {
        const int b = 1 - a;
        const FaceResult fl = face(s, in, a, i, j);
        const FaceResult fr = face(s, in, a, i + (a == 0 ? 1 : 0), j + (a == 1 ? 1 : 0));
        t.rho_convective += -(fr.conv.mass - fl.conv.mass) / g.dx[a];
        t.mom_convective[a] += -((fr.conv.mom_n + fr.conv.corr_l) - (fl.conv.mom_n + fl.conv.corr_r)) / g.dx[a];
        t.mom_viscous[a] += (fr.visc.n - fl.visc.n) / g.dx[a];
        if (g.dim > 1) {
            t.mom_convective[b] += -(fr.conv.mom_t - fl.conv.mom_t) / g.dx[a];
            t.mom_viscous[b] += (fr.visc.t - fl.visc.t) / g.dx[a];
        }
    }
    if (in.force)
        for (int k = 0; k < g.dim; ++k) t.mom_source[k] = s.rho(i, j) * (*in.force)[k](i, j);
    return t;
}

void rhs_reference(const State& s, const RhsInputs& in, Rhs& out) {
    const Grid& g = *in.grid;
    for_each_cell(g, [&](int i, int j) {
        double rho_acc = 0.0;
        std::array<double, 2> mom_acc{};
        for (int a = 0; a < g.dim; ++a) {
            const int b = 1 - a;
            const FaceResult fl = face(s, in, a, i, j);
            const FaceResult fr = face(s, in, a, i + (a == 0 ? 1 : 0), j + (a == 1 ? 1 : 0));
            rho_acc += -(fr.conv.mass - fl.conv.mass) / g.dx[a];
            mom_acc[a] += -((fr.conv.mom_n + fr.conv.corr_l) - (fl.conv.mom_n + fl.conv.corr_r)) / g.dx[a];
            mom_acc[a] += (fr.visc.n - fl.visc.n) / g.dx[a];
            if (g.dim > 1) {
                mom_acc[b] += -(fr.conv.mom_t - fl.conv.mom_t) / g.dx[a];
                mom_acc[b] += (fr.visc.t - fl.visc.t) / g.dx[a];
            }
        }
        if (in.force)
            for (int k = 0; k < g.dim; ++k) mom_acc[k] += s.rho(i, j) * (*in.force)[k](i, j);
        out.rho(i, j) = rho_acc;
        for (int k = 0; k < g.dim; ++k) out.mom[k](i, j) = mom_acc[k];
    });
}

}  // namespace baro::kernels
