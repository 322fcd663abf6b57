#include "baro/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "baro/errors.hpp"

namespace baro {

Grid make_grid(int dim, std::span<const double> extents, std::span<const int> cells, int ghost) {
    if (dim != 1 && dim != 2) throw ConfigError("grid: dim must be 1 or 2");
    if (extents.size() < static_cast<std::size_t>(dim) || cells.size() < static_cast<std::size_t>(dim))
        throw ConfigError("grid: need one extent and one cell count per axis");
    if (ghost < 1) throw ConfigError("grid: ghost width must be >= 1");

    Grid g;
    g.dim = dim;
    g.ghost = ghost;
    for (int a = 0; a < dim; ++a) {
        const double len = extents[static_cast<std::size_t>(a)];
        const int n = cells[static_cast<std::size_t>(a)];
        if (!(len > 0.0) || !std::isfinite(len)) throw ConfigError("grid: non-positive extent on axis " + std::to_string(a));
        if (n < 4) throw ConfigError("grid: need at least 4 cells on axis " + std::to_string(a));
        if (ghost > n) throw ConfigError("grid: ghost width exceeds cell count");
        g.extents[a] = len;
        g.cells[a] = n;
        g.dx[a] = len / n;
    }
    return g;
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.storage_size(), fill) {}

void ScalarField::fill_ghosts(Parity parity) {
    const double sign = parity == Parity::Odd ? -1.0 : 1.0;
    const Grid& g = grid_;
    const int nx = g.cells[0];
    const int gx = g.halo(0);
    for (int j = 0; j < g.cells[1]; ++j) {
        for (int k = 0; k < gx; ++k) {
            (*this)(-1 - k, j) = sign * (*this)(k, j);
            (*this)(nx + k, j) = sign * (*this)(nx - 1 - k, j);
        }
    }
    if (g.dim < 2) return;
    const int ny = g.cells[1];
    // Sweeping the full padded row also fills the corners.
    for (int k = 0; k < g.halo(1); ++k) {
        for (int i = -gx; i < nx + gx; ++i) {
            (*this)(i, -1 - k) = sign * (*this)(i, k);
            (*this)(i, ny + k) = sign * (*this)(i, ny - 1 - k);
        }
    }
}

double ScalarField::interior_sum() const {
    double s = 0.0;
    for_each_cell(grid_, [&](int i, int j) { s += (*this)(i, j); });
    return s;
}

double ScalarField::interior_min() const {
    double m = std::numeric_limits<double>::infinity();
    for_each_cell(grid_, [&](int i, int j) { m = std::min(m, (*this)(i, j)); });
    return m;
}

double ScalarField::interior_max() const {
    double m = -std::numeric_limits<double>::infinity();
    for_each_cell(grid_, [&](int i, int j) { m = std::max(m, (*this)(i, j)); });
    return m;
}

void ScalarField::require_finite(const std::string& context) const {
    for_each_cell(grid_, [&](int i, int j) {
        if (!std::isfinite((*this)(i, j)))
            throw ConfigError(context + ": non-finite value at cell " + std::to_string(grid_.interior_id(i, j)));
    });
}

VectorField::VectorField(const Grid& grid, double fill)
    : comps_(static_cast<std::size_t>(grid.dim), ScalarField(grid, fill)) {}

void VectorField::fill_ghosts(Parity parity) {
    for (auto& c : comps_) c.fill_ghosts(parity);
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::GridMismatch: return "grid_mismatch";
        case Violation::Kind::NonFinite: return "non_finite";
        case Violation::Kind::NegativeDensity: return "negative_density";
        case Violation::Kind::MomentumOnVacuum: return "momentum_on_vacuum";
        case Violation::Kind::NonPositiveMass: return "non_positive_mass";
    }
    return "unknown";
}

std::string ValidationReport::describe() const {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << to_string(v.kind);
        if (v.cell >= 0) os << " at cell " << v.cell;
        os << " (value " << v.value << ")\n";
    }
    return os.str();
}

ValidationReport validate_initial_data(const InitialData& data, double floor) {
    ValidationReport report;
    const Grid& g = data.rho.grid();
    if (data.q.dim() != g.dim || !(data.q.grid() == g)) {
        report.violations.push_back({Violation::Kind::GridMismatch});
        return report;
    }

    for_each_cell(g, [&](int i, int j) {
        const long id = g.interior_id(i, j);
        const double r = data.rho(i, j);
        bool finite = std::isfinite(r);
        for (int k = 0; k < g.dim; ++k) finite = finite && std::isfinite(data.q[k](i, j));
        if (!finite) {
            report.violations.push_back({Violation::Kind::NonFinite, id, r});
            return;
        }
        if (r < 0.0) {
            report.violations.push_back({Violation::Kind::NegativeDensity, id, r});
            return;
        }
        if (r <= floor) {
            double qmax = 0.0;
            for (int k = 0; k < g.dim; ++k) qmax = std::max(qmax, std::abs(data.q[k](i, j)));
            if (qmax > 0.0) report.violations.push_back({Violation::Kind::MomentumOnVacuum, id, qmax});
        }
    });

    report.mass = total_mass(data.rho);
    if (report.violations.empty() && !(report.mass > 0.0))
        report.violations.push_back({Violation::Kind::NonPositiveMass, -1, report.mass});
    if (!report.violations.empty()) return report;

    State s{data.rho, data.q, 0.0};
    s.rho.fill_ghosts(Parity::Even);
    s.mom.fill_ghosts(Parity::Odd);
    report.state = std::move(s);
    return report;
}

double total_mass(const ScalarField& rho) { return rho.grid().cell_volume() * rho.interior_sum(); }

}  // namespace baro
