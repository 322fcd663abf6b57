#pragma once

// Pointwise face physics shared by the reference and parallel kernels.

#include <algorithm>
#include <cmath>

#include "baro/constitutive.hpp"

namespace baro::kernels {

// One side of a face; un/ut are velocity components normal/tangential to it.
struct Side {
    double rho;
    double un;
    double ut;
    double p;
    double c;
};

struct ConvectiveFlux {
    double mass;
    double mom_n;
    double mom_t;
    // Pressure corrections of hydrostatic reconstruction seen by the left/right cell.
    double corr_l = 0.0;
    double corr_r = 0.0;
};

inline ConvectiveFlux rusanov(const Side& l, const Side& r) {
    const double alpha = std::max(std::abs(l.un) + l.c, std::abs(r.un) + r.c);
    const double ml = l.rho * l.un;
    const double mr = r.rho * r.un;
    ConvectiveFlux f;
    f.mass = 0.5 * (ml + mr) - 0.5 * alpha * (r.rho - l.rho);
    f.mom_n = 0.5 * (ml * l.un + l.p + mr * r.un + r.p) - 0.5 * alpha * (mr - ml);
    f.mom_t = 0.5 * (ml * l.ut + mr * r.ut) - 0.5 * alpha * (r.rho * r.ut - l.rho * l.ut);
    return f;
}

inline Side make_side(double rho, double un, double ut, const PressureLaw& law, double floor) {
    return {rho, un, ut, pressure(rho, law), sound_speed(std::max(rho, floor), law)};
}

// Lowers rho along the hydrostatic branch h(rho) + phi = const to the face level.
inline double hydrostatic_density(double rho, double dphi, const IsentropicLaw& law, double floor) {
    if (dphi == 0.0 || rho <= floor) return rho;
    return density_from_enthalpy(enthalpy(rho, law) + dphi, law);
}

// Rusanov flux between reconstructed states at a face with potential phi = -F on
// either side. Cell states l, r carry the cell-centred density and pressure.
inline ConvectiveFlux hydrostatic_flux(const Side& l, const Side& r, double phi_l, double phi_r,
                                       const PressureLaw& law, double floor) {
    const IsentropicLaw& iso = law.as_isentropic();
    const double phi_face = std::max(phi_l, phi_r);
    const double rho_l = hydrostatic_density(l.rho, phi_l - phi_face, iso, floor);
    const double rho_r = hydrostatic_density(r.rho, phi_r - phi_face, iso, floor);
    const Side ls = rho_l == l.rho ? l : make_side(rho_l, l.un, l.ut, law, floor);
    const Side rs = rho_r == r.rho ? r : make_side(rho_r, r.un, r.ut, law, floor);
    ConvectiveFlux f = rusanov(ls, rs);
    f.corr_l = l.p - ls.p;
    f.corr_r = r.p - rs.p;
    return f;
}

struct ViscousFlux {
    double n;  // stress on the normal momentum component
    double t;  // stress on the tangential component
};

// dn_*: normal derivative across the face, dt_*: tangential derivative at the face.
inline ViscousFlux face_stress(int dim, double dn_un, double dn_ut, double dt_un, double dt_ut,
                               const Viscosity& visc) {
    Tensor g;
    g.dim = dim;
    // Axis 0 is the face normal, axis 1 the tangent; g(r, c) = d u_r / d x_c.
    g(0, 0) = dn_un;
    if (dim > 1) {
        g(1, 0) = dn_ut;
        g(0, 1) = dt_un;
        g(1, 1) = dt_ut;
    }
    const Tensor s = viscous_stress(g, visc);
    return {s(0, 0), dim > 1 ? s(1, 0) : 0.0};
}

}  // namespace baro::kernels
