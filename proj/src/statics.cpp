#include "baro/statics.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "baro/errors.hpp"

namespace baro {

namespace {

void require_gamma(double a, double gamma) {
    if (!(gamma > 1.0)) throw ConfigError("static problem: gamma must be > 1");
    if (!(a > 0.0)) throw ConfigError("static problem: a must be > 0");
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

}  // namespace

ScalarField static_profile(const ScalarField& potential, double c, double a, double gamma) {
    require_gamma(a, gamma);
    ScalarField rho(potential.grid());
    const double scale = (gamma - 1.0) / (a * gamma);
    const double expo = 1.0 / (gamma - 1.0);
    for_each_cell(potential.grid(), [&](int i, int j) {
        const double head = potential(i, j) - c;
        rho(i, j) = head > 0.0 ? std::pow(scale * head, expo) : 0.0;
    });
    return rho;
}

double static_mass(const ScalarField& potential, double c, double a, double gamma) {
    return total_mass(static_profile(potential, c, a, gamma));
}

StaticSolution solve_static(const ScalarField& potential, double m, double a, double gamma, double tol, int levels) {
    require_gamma(a, gamma);
    if (!(m > 0.0)) throw ConfigError("static problem: mass must be > 0");
    if (!(tol > 0.0)) throw ConfigError("static problem: tolerance must be > 0");
    potential.require_finite("static potential");

    const Grid& g = potential.grid();
    const double k = a * gamma / (gamma - 1.0) * std::pow(m / g.volume(), gamma - 1.0);
    double lo = potential.interior_min() - k;  // mass(lo) >= m
    double hi = potential.interior_max();      // mass(hi) == 0

    StaticSolution sol;
    bool converged = false;
    double c = lo;
    double mass = static_mass(potential, lo, a, gamma);
    if (std::abs(mass - m) <= tol * m) converged = true;
    for (int it = 0; it < 200 && !converged; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // interval exhausted in floating point
        c = mid;
        mass = static_mass(potential, c, a, gamma);
        sol.iterations = it + 1;
        if (std::abs(mass - m) <= tol * m) {
            converged = true;
            break;
        }
        if (mass > m) lo = c;
        else hi = c;
    }
    if (!converged) throw ConfigError("static problem: bisection did not reach the mass tolerance");

    sol.c = c;
    sol.rho_s = static_profile(potential, c, a, gamma);
    sol.mass = mass;
    sol.mass_error = std::abs(mass - m);
    sol.support_connected = check_level_sets(potential, levels).connected_all;
    return sol;
}

int count_components(const ScalarField& potential, double k) {
    const Grid& g = potential.grid();
    const auto n0 = static_cast<std::size_t>(g.cells[0]);
    DisjointSets sets(g.interior_count());
    auto id = [&](int i, int j) { return static_cast<std::size_t>(i) + n0 * static_cast<std::size_t>(j); };
    for_each_cell(g, [&](int i, int j) {
        if (!(potential(i, j) > k)) return;
        if (i + 1 < g.cells[0] && potential(i + 1, j) > k) sets.join(id(i, j), id(i + 1, j));
        if (j + 1 < g.cells[1] && potential(i, j + 1) > k) sets.join(id(i, j), id(i, j + 1));
    });
    int components = 0;
    for_each_cell(g, [&](int i, int j) {
        if (potential(i, j) > k && sets.find(id(i, j)) == id(i, j)) ++components;
    });
    return components;
}

LevelSetReport check_level_sets(const ScalarField& potential, int levels) {
    if (levels < 1) throw ConfigError("level sets: need at least one level");
    LevelSetReport r;
    r.levels = levels;
    const double lo = potential.interior_min();
    const double hi = potential.interior_max();
    for (int l = 0; l < levels; ++l) {
        const double k = lo + (l + 0.5) / levels * (hi - lo);
        const int n = count_components(potential, k);
        r.max_components = std::max(r.max_components, n);
        if (n > 1 && r.connected_all) {
            r.connected_all = false;
            r.first_disconnected_level = k;
        }
    }
    return r;
}

double static_residual(const StaticSolution& sol, const ScalarField& potential, double a, double gamma) {
    require_gamma(a, gamma);
    const Grid& g = potential.grid();
    const ScalarField& rho = sol.rho_s;
    double l1 = 0.0;
    for_each_cell(g, [&](int i, int j) {
        double norm2 = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) {
            const int di = ax == 0 ? 1 : 0;
            const int dj = ax == 1 ? 1 : 0;
            if (i - di < 0 || j - dj < 0 || i + di >= g.cells[0] || j + dj >= g.cells[1]) return;
            const double rl = rho(i - di, j - dj);
            const double rr = rho(i + di, j + dj);
            if (!(rl > 0.0 && rr > 0.0 && rho(i, j) > 0.0)) return;
            const double lhs = a * (std::pow(rr, gamma) - std::pow(rl, gamma)) / (2.0 * g.dx[ax]);
            const double rhs = rho(i, j) * (potential(i + di, j + dj) - potential(i - di, j - dj)) / (2.0 * g.dx[ax]);
            norm2 += (lhs - rhs) * (lhs - rhs);
        }
        l1 += std::sqrt(norm2);
    });
    return l1 * g.cell_volume();
}

}  // namespace baro
