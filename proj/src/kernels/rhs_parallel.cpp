#include <algorithm>

#include "flux.hpp"
#include "rhs.hpp"

namespace baro::kernels {

ParallelRhs::ParallelRhs(const Grid& grid) : grid_(grid) {
    const std::size_t n = grid.storage_size();
    for (auto& v : vel_) v.assign(n, 0.0);
    p_.assign(n, 0.0);
    c_.assign(n, 0.0);
    phi_.assign(n, 0.0);
    for (int a = 0; a < grid.dim; ++a) {
        auto& f = faces_[static_cast<std::size_t>(a)];
        for (auto* v : {&f.mass, &f.mom_n, &f.mom_t, &f.corr_l, &f.corr_r, &f.visc_n, &f.visc_t}) v->assign(n, 0.0);
    }
}

void ParallelRhs::evaluate(const State& s, const RhsInputs& in, Rhs& out) {
    const Grid& g = grid_;
    const int dim = g.dim;
    const double floor = in.floor;
    const PressureLaw& law = *in.law;
    const auto rho = s.rho.data();
    const long n = static_cast<long>(g.storage_size());

#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double r = std::max(rho[idx], floor);
        for (int c = 0; c < dim; ++c) vel_[static_cast<std::size_t>(c)][idx] = s.mom[c].data()[idx] / r;
        p_[idx] = pressure(rho[idx], law);
        c_[idx] = sound_speed(r, law);
        if (in.potential) phi_[idx] = -in.potential->data()[idx];
    }

    for (int a = 0; a < dim; ++a) {
        const int b = 1 - a;
        const auto ua = static_cast<std::size_t>(a);
        const auto ub = static_cast<std::size_t>(b);
        FaceArrays& f = faces_[ua];
        const std::size_t sa = g.stride(a);
        const std::size_t sb = g.stride(b);
        // Faces on axis a: index along a runs 0..cells[a], the other axis over interior cells.
        const int na = g.cells[a] + 1;
        const int nb = dim > 1 ? g.cells[b] : 1;
        const long count = static_cast<long>(na) * nb;

#pragma omp parallel for schedule(static)
        for (long k = 0; k < count; ++k) {
            const int ia = static_cast<int>(k % na);
            const int ib = static_cast<int>(k / na);
            const std::size_t r = a == 0 ? g.index(ia, ib) : g.index(ib, ia);
            const std::size_t l = r - sa;
            const Side sl{rho[l], vel_[ua][l], dim > 1 ? vel_[ub][l] : 0.0, p_[l], c_[l]};
            const Side sr{rho[r], vel_[ua][r], dim > 1 ? vel_[ub][r] : 0.0, p_[r], c_[r]};
            const ConvectiveFlux cf = in.potential ? hydrostatic_flux(sl, sr, phi_[l], phi_[r], law, floor)
                                                   : rusanov(sl, sr);
            const double dn_un = (sr.un - sl.un) / g.dx[a];
            const double dn_ut = (sr.ut - sl.ut) / g.dx[a];
            double dt_un = 0.0;
            double dt_ut = 0.0;
            if (dim > 1) {
                const auto& va = vel_[ua];
                const auto& vb = vel_[ub];
                dt_un = (va[l + sb] - va[l - sb] + va[r + sb] - va[r - sb]) / (4.0 * g.dx[b]);
                dt_ut = (vb[l + sb] - vb[l - sb] + vb[r + sb] - vb[r - sb]) / (4.0 * g.dx[b]);
            }
            const ViscousFlux vf = face_stress(dim, dn_un, dn_ut, dt_un, dt_ut, *in.visc);
            f.mass[r] = cf.mass;
            f.mom_n[r] = cf.mom_n;
            f.mom_t[r] = cf.mom_t;
            f.corr_l[r] = cf.corr_l;
            f.corr_r[r] = cf.corr_r;
            f.visc_n[r] = vf.n;
            f.visc_t[r] = vf.t;
        }
    }

    const int n0 = g.cells[0];
    const long cells = static_cast<long>(g.interior_count());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < cells; ++k) {
        const int i = static_cast<int>(k % n0);
        const int j = static_cast<int>(k / n0);
        const std::size_t c = g.index(i, j);
        double rho_acc = 0.0;
        std::array<double, 2> mom_acc{};
        for (int a = 0; a < dim; ++a) {
            const int b = 1 - a;
            const FaceArrays& f = faces_[static_cast<std::size_t>(a)];
            const std::size_t r = c + g.stride(a);
            rho_acc += -(f.mass[r] - f.mass[c]) / g.dx[a];
            mom_acc[a] += -((f.mom_n[r] + f.corr_l[r]) - (f.mom_n[c] + f.corr_r[c])) / g.dx[a];
            mom_acc[a] += (f.visc_n[r] - f.visc_n[c]) / g.dx[a];
            if (dim > 1) {
                mom_acc[b] += -(f.mom_t[r] - f.mom_t[c]) / g.dx[a];
                mom_acc[b] += (f.visc_t[r] - f.visc_t[c]) / g.dx[a];
            }
        }
        if (in.force)
            for (int q = 0; q < dim; ++q) mom_acc[q] += rho[c] * in.force->operator[](q).data()[c];
        out.rho.data()[c] = rho_acc;
        for (int q = 0; q < dim; ++q) out.mom[q].data()[c] = mom_acc[q];
    }
}

}  // namespace baro::kernels
