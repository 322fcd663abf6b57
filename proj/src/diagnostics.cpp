#include "baro/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "baro/errors.hpp"

namespace baro {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw ConfigError("fields live on different grids");
}

// Velocity with odd ghost values; ghosts of rho and q need not be filled.
std::vector<ScalarField> velocity(const State& s, double floor) {
    const Grid& g = s.rho.grid();
    std::vector<ScalarField> u;
    for (int k = 0; k < g.dim; ++k) {
        ScalarField c(g);
        for_each_cell(g, [&](int i, int j) { c(i, j) = s.mom[k](i, j) / std::max(s.rho(i, j), floor); });
        c.fill_ghosts(Parity::Odd);
        u.push_back(std::move(c));
    }
    return u;
}

}  // namespace

EnergyRecord total_energy(const State& s, const PressureLaw& law, double floor) {
    const Grid& g = s.rho.grid();
    EnergyRecord e;
    e.time = s.time;
    double kin = 0.0;
    double pot = 0.0;
    for_each_cell(g, [&](int i, int j) {
        double q2 = 0.0;
        for (int k = 0; k < g.dim; ++k) q2 += s.mom[k](i, j) * s.mom[k](i, j);
        kin += 0.5 * q2 / std::max(s.rho(i, j), floor);
        pot += pressure_potential(s.rho(i, j), law);
    });
    e.kinetic = kin * g.cell_volume();
    e.potential = pot * g.cell_volume();
    e.total = e.kinetic + e.potential;
    return e;
}

double dissipation_rate(const State& s, const Viscosity& visc, double floor) {
    const Grid& g = s.rho.grid();
    const auto u = velocity(s, floor);

    // sum over components k and axes a of (d_a u_k)^2 at faces
    double grad2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
        const int di = a == 0 ? 1 : 0;
        const int dj = a == 1 ? 1 : 0;
        for (int k = 0; k < g.dim; ++k) {
            const ScalarField& c = u[static_cast<std::size_t>(k)];
            for (int j = 0; j < g.cells[1] + dj; ++j)
                for (int i = 0; i < g.cells[0] + di; ++i) {
                    const double d = (c(i, j) - c(i - di, j - dj)) / g.dx[a];
                    grad2 += d * d;
                }
        }
    }

    double div2 = 0.0;
    if (g.dim == 1) {
        div2 = grad2;
    } else {
        for_each_cell(g, [&](int i, int j) {
            const double d = (u[0](i + 1, j) - u[0](i - 1, j)) / (2.0 * g.dx[0]) +
                             (u[1](i, j + 1) - u[1](i, j - 1)) / (2.0 * g.dx[1]);
            div2 += d * d;
        });
    }
    return g.cell_volume() * (visc.mu() * grad2 + (visc.lambda() + visc.mu()) * div2);
}

double forcing_power(const State& s, const VectorField& f, double floor) {
    const Grid& g = s.rho.grid();
    double w = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double r = s.rho(i, j);
        for (int k = 0; k < g.dim; ++k) w += r * f[k](i, j) * s.mom[k](i, j) / std::max(r, floor);
    });
    return w * g.cell_volume();
}

EnergyRecord energy_record(const State& s, const PressureLaw& law, const Viscosity& visc, const VectorField& force,
                           double floor) {
    EnergyRecord e = total_energy(s, law, floor);
    e.dissipation = dissipation_rate(s, visc, floor);
    e.power = forcing_power(s, force, floor);
    return e;
}

ResidualSeries energy_inequality_residual(std::span<const EnergyRecord> r) {
    if (r.size() < 2) throw ConfigError("energy residual: need at least two records");
    ResidualSeries out;
    out.max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const double dt = r[k + 1].time - r[k].time;
        if (!(dt > 0.0)) throw ConfigError("energy residual: record times must increase strictly");
        const double v = (r[k + 1].total - r[k].total) / dt + 0.5 * (r[k].dissipation + r[k + 1].dissipation) -
                         0.5 * (r[k].power + r[k + 1].power);
        out.values.push_back(v);
        out.max = std::max(out.max, v);
        out.max_abs = std::max(out.max_abs, std::abs(v));
    }
    return out;
}

RenormFunction::RenormFunction(double m) : m_(m) {
    if (!(m > 0.0)) throw ConfigError("renormalization: truncation level must be > 0");
}

double RenormFunction::value(double rho) const {
    if (rho <= m_) return rho;
    if (rho >= 2.0 * m_) return 1.5 * m_;
    const double t = (rho - m_) / m_;
    return m_ * (1.0 + t - 0.5 * t * t);
}

double RenormFunction::derivative(double rho) const {
    if (rho <= m_) return 1.0;
    if (rho >= 2.0 * m_) return 0.0;
    return 1.0 - (rho - m_) / m_;
}

double renorm_residual(const State& before, const State& after, const PressureLaw& law, const RenormFunction& bf,
                       double floor) {
    const Grid& g = before.rho.grid();
    require_same_grid(g, after.rho.grid());
    const double dt = after.time - before.time;
    if (!(dt > 0.0)) throw ConfigError("renorm residual: states must be ordered in time");

    ScalarField rho = before.rho;
    rho.fill_ghosts(Parity::Even);
    const auto u = velocity(before, floor);

    // Rusanov-form flux of b(rho) through the face between cell (i,j) - e_a and (i,j).
    auto flux = [&](int a, int i, int j) {
        const int il = i - (a == 0 ? 1 : 0);
        const int jl = j - (a == 1 ? 1 : 0);
        const double rl = rho(il, jl);
        const double rr = rho(i, j);
        const double ul = u[static_cast<std::size_t>(a)](il, jl);
        const double ur = u[static_cast<std::size_t>(a)](i, j);
        const double cl = sound_speed(std::max(rl, floor), law);
        const double cr = sound_speed(std::max(rr, floor), law);
        const double alpha = std::max(std::abs(ul) + cl, std::abs(ur) + cr);
        const double bl = bf.value(rl);
        const double br = bf.value(rr);
        return 0.5 * (bl * ul + br * ur) - 0.5 * alpha * (br - bl);
    };
    auto face_velocity = [&](int a, int i, int j) {
        const auto& c = u[static_cast<std::size_t>(a)];
        return 0.5 * (c(i - (a == 0 ? 1 : 0), j - (a == 1 ? 1 : 0)) + c(i, j));
    };

    double l1 = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double r0 = before.rho(i, j);
        double transport = 0.0;
        double div_u = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const int ir = i + (a == 0 ? 1 : 0);
            const int jr = j + (a == 1 ? 1 : 0);
            transport += (flux(a, ir, jr) - flux(a, i, j)) / g.dx[a];
            div_u += (face_velocity(a, ir, jr) - face_velocity(a, i, j)) / g.dx[a];
        }
        const double res = (bf.value(after.rho(i, j)) - bf.value(r0)) / dt + transport +
                           (bf.derivative(r0) * r0 - bf.value(r0)) * div_u;
        l1 += std::abs(res);
    });
    return l1 * g.cell_volume();
}

double lp_norm(const ScalarField& f, double alpha) {
    if (!(alpha >= 1.0)) throw ConfigError("lp norm: alpha must be >= 1");
    double s = 0.0;
    for_each_cell(f.grid(), [&](int i, int j) { s += std::pow(std::abs(f(i, j)), alpha); });
    return std::pow(s * f.grid().cell_volume(), 1.0 / alpha);
}

double lp_distance(const ScalarField& a, const ScalarField& b, double alpha) {
    require_same_grid(a.grid(), b.grid());
    if (!(alpha >= 1.0)) throw ConfigError("lp distance: alpha must be >= 1");
    double s = 0.0;
    for_each_cell(a.grid(), [&](int i, int j) { s += std::pow(std::abs(a(i, j) - b(i, j)), alpha); });
    return std::pow(s * a.grid().cell_volume(), 1.0 / alpha);
}

double lp_distance(const VectorField& a, const VectorField& b, double alpha) {
    require_same_grid(a.grid(), b.grid());
    if (!(alpha >= 1.0)) throw ConfigError("lp distance: alpha must be >= 1");
    double s = 0.0;
    for_each_cell(a.grid(), [&](int i, int j) {
        double d2 = 0.0;
        for (int k = 0; k < a.dim(); ++k) d2 += (a[k](i, j) - b[k](i, j)) * (a[k](i, j) - b[k](i, j));
        s += std::pow(std::sqrt(d2), alpha);
    });
    return std::pow(s * a.grid().cell_volume(), 1.0 / alpha);
}

double l1_norm(const VectorField& v) {
    double s = 0.0;
    for_each_cell(v.grid(), [&](int i, int j) {
        double m2 = 0.0;
        for (int k = 0; k < v.dim(); ++k) m2 += v[k](i, j) * v[k](i, j);
        s += std::sqrt(m2);
    });
    return s * v.grid().cell_volume();
}

double weak_pairing(const VectorField& a, const VectorField& b, const VectorField& phi) {
    require_same_grid(a.grid(), b.grid());
    require_same_grid(a.grid(), phi.grid());
    double s = 0.0;
    for_each_cell(a.grid(), [&](int i, int j) {
        for (int k = 0; k < a.dim(); ++k) s += (a[k](i, j) - b[k](i, j)) * phi[k](i, j);
    });
    return s * a.grid().cell_volume();
}

}  // namespace baro
