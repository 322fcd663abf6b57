#pragma once

// Grids, cell-centred fields and the (density, momentum) state container.
//
// Storage layout: every field stores interior cells plus `ghost` layers on
// each active axis, row-major with axis 0 varying fastest. Interior indices
// run 0..cells-1; ghost cells use negative indices or indices >= cells.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace baro {

inline constexpr double kDefaultVacuumFloor = 1e-12;

struct Grid {
    int dim = 1;
    std::array<double, 2> extents{1.0, 1.0};
    std::array<int, 2> cells{1, 1};
    std::array<double, 2> dx{1.0, 1.0};
    int ghost = 1;

    // Ghost width on `axis` (0 on inactive axes).
    int halo(int axis) const { return axis < dim ? ghost : 0; }
    int padded(int axis) const { return cells[axis] + 2 * halo(axis); }
    std::size_t stride(int axis) const { return axis == 0 ? 1 : static_cast<std::size_t>(padded(0)); }

    std::size_t storage_size() const {
        return static_cast<std::size_t>(padded(0)) * static_cast<std::size_t>(padded(1));
    }
    std::size_t interior_count() const {
        return static_cast<std::size_t>(cells[0]) * static_cast<std::size_t>(cells[1]);
    }
    std::size_t index(int i, int j = 0) const {
        return static_cast<std::size_t>(i + halo(0)) +
               stride(1) * static_cast<std::size_t>(j + halo(1));
    }
    // Linear interior id, used in reports: i + cells[0] * j.
    long interior_id(int i, int j = 0) const { return i + static_cast<long>(cells[0]) * j; }

    double cell_volume() const { return dim == 1 ? dx[0] : dx[0] * dx[1]; }
    double volume() const { return dim == 1 ? extents[0] : extents[0] * extents[1]; }
    double center(int axis, int i) const { return (i + 0.5) * dx[axis]; }
    double min_dx() const { return dim == 1 ? dx[0] : std::min(dx[0], dx[1]); }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(int dim, std::span<const double> extents, std::span<const int> cells, int ghost);

// Calls fn(i, j) for every interior cell, j outermost.
template <class Fn>
void for_each_cell(const Grid& g, Fn&& fn) {
    for (int j = 0; j < g.cells[1]; ++j)
        for (int i = 0; i < g.cells[0]; ++i) fn(i, j);
}

enum class Parity { Even, Odd };

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& grid, double fill = 0.0);

    // Samples fn(x, y) at interior cell centres; throws ConfigError on non-finite samples.
    template <class Fn>
    static ScalarField from_function(const Grid& grid, Fn&& fn) {
        ScalarField f(grid);
        for_each_cell(grid, [&](int i, int j) {
            const double y = grid.dim > 1 ? grid.center(1, j) : 0.0;
            f(i, j) = fn(grid.center(0, i), y);
        });
        f.require_finite("from_function");
        return f;
    }

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j = 0) { return values_[grid_.index(i, j)]; }
    double operator()(int i, int j = 0) const { return values_[grid_.index(i, j)]; }

    std::span<double> data() { return values_; }
    std::span<const double> data() const { return values_; }

    // Reflects interior values into the ghost layers; Odd negates them.
    void fill_ghosts(Parity parity);

    double interior_sum() const;
    double interior_min() const;
    double interior_max() const;
    void require_finite(const std::string& context) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid& grid, double fill = 0.0);

    template <class Fn>  // fn(x, y) -> std::array<double, 2>
    static VectorField from_function(const Grid& grid, Fn&& fn) {
        VectorField v(grid);
        for_each_cell(grid, [&](int i, int j) {
            const double y = grid.dim > 1 ? grid.center(1, j) : 0.0;
            const auto val = fn(grid.center(0, i), y);
            for (int k = 0; k < grid.dim; ++k) v[k](i, j) = val[k];
        });
        for (int k = 0; k < grid.dim; ++k) v[k].require_finite("from_function");
        return v;
    }

    const Grid& grid() const { return comps_.front().grid(); }
    int dim() const { return static_cast<int>(comps_.size()); }
    ScalarField& operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }
    const ScalarField& operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }

    void fill_ghosts(Parity parity);

private:
    std::vector<ScalarField> comps_;
};

struct State {
    ScalarField rho;
    VectorField mom;  // q = rho * u
    double time = 0.0;
};

struct InitialData {
    ScalarField rho;
    VectorField q;
};

struct Violation {
    enum class Kind { GridMismatch, NonFinite, NegativeDensity, MomentumOnVacuum, NonPositiveMass };
    Kind kind;
    long cell = -1;  // interior id, -1 when not cell-specific
    double value = 0.0;
};

std::string to_string(Violation::Kind kind);

struct ValidationReport {
    std::optional<State> state;
    std::vector<Violation> violations;
    double mass = 0.0;

    bool ok() const { return state.has_value(); }
    // One line per violation.
    std::string describe() const;
};

ValidationReport validate_initial_data(const InitialData& data, double floor = kDefaultVacuumFloor);

double total_mass(const ScalarField& rho);
inline double total_mass(const State& s) { return total_mass(s.rho); }

}  // namespace baro
