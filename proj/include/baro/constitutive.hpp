#pragma once

// Barotropic pressure laws, the pressure potential P with P'(r) r - P(r) = p(r),
// the Newtonian viscous stress and the growth-bound validator for p'.

#include <array>
#include <filesystem>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace baro {

struct IsentropicLaw {
    double a = 1.0;
    double gamma = 2.0;
};

// Piecewise cubic Hermite interpolant of (rho_k, p_k) nodes with rho_0 = 0, p_0 = 0.
// With `monotone` the slopes are limited (Fritsch-Carlson) so no new extrema appear
// between nodes; otherwise three-point slopes are used. Beyond the last node the law
// is extended linearly with the end slope, keeping it C1.
class TabulatedLaw {
public:
    TabulatedLaw(std::vector<std::pair<double, double>> nodes, bool monotone);

    double value(double rho) const;
    double derivative(double rho) const;
    // P(rho) = rho * int_{rho_1}^{rho} p(s)/s^2 ds, rho_1 the first positive node.
    double potential(double rho) const;

    const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }
    bool monotone() const { return monotone_; }

private:
    std::size_t interval(double rho) const;
    double integrate_p_over_s2(double lo, double hi) const;

    std::vector<std::pair<double, double>> nodes_;
    std::vector<double> slopes_;
    std::vector<double> cumulative_;  // int_{rho_1}^{rho_k} p/s^2, k >= 1
    bool monotone_;
};

class PressureLaw {
public:
    static PressureLaw isentropic(double a, double gamma);
    static PressureLaw tabulated(std::vector<std::pair<double, double>> nodes, bool monotone = true);

    bool is_isentropic() const { return std::holds_alternative<IsentropicLaw>(law_); }
    const IsentropicLaw& as_isentropic() const { return std::get<IsentropicLaw>(law_); }
    const TabulatedLaw& as_tabulated() const { return std::get<TabulatedLaw>(law_); }

private:
    explicit PressureLaw(std::variant<IsentropicLaw, TabulatedLaw> law) : law_(std::move(law)) {}
    std::variant<IsentropicLaw, TabulatedLaw> law_;
};

// Two-column CSV (rho, p), optional header line.
PressureLaw load_tabulated_law(const std::filesystem::path& path, bool monotone = true);

double pressure(double rho, const PressureLaw& law);
double dpressure(double rho, const PressureLaw& law);
// sqrt(max(p'(rho), 0)); negative slopes of non-monotone laws are clamped.
double sound_speed(double rho, const PressureLaw& law);
double pressure_potential(double rho, const PressureLaw& law);

// Specific enthalpy h with h'(rho) = p'(rho)/rho, h(0) = 0 for gamma > 1 and
// h = a ln(rho) for gamma = 1. Isentropic laws only.
double enthalpy(double rho, const IsentropicLaw& law);
// Inverse of enthalpy; values below the vacuum branch map to 0.
double density_from_enthalpy(double h, const IsentropicLaw& law);

class Viscosity {
public:
    // Requires mu > 0 and lambda + mu >= 0.
    Viscosity(double mu, double lambda);

    double mu() const { return mu_; }
    double lambda() const { return lambda_; }
    // Coefficient of the 1D stress, S = (2 mu + lambda) u_x.
    double longitudinal() const { return 2.0 * mu_ + lambda_; }

private:
    double mu_;
    double lambda_;
};

// Row-major dim x dim tensor; only the leading dim x dim block is used.
struct Tensor {
    int dim = 1;
    std::array<double, 4> a{};

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }
};

// S = mu (G + G^T) + lambda tr(G) I
Tensor viscous_stress(const Tensor& grad_u, const Viscosity& visc);

struct GrowthBoundReport {
    double a = 0.0;
    double b = 0.0;
    double gamma = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    int samples = 0;
    double worst_margin = 0.0;  // > 0 means a bound is violated
    double worst_rho = 0.0;
    bool pass = false;
};

// Samples (1/a) r^(gamma-1) - b <= p'(r) <= a r^(gamma-1) + b on a log-spaced grid of
// [rho_min, rho_max].
GrowthBoundReport check_growth_bounds(const PressureLaw& law, double a, double b, double gamma,
                                      double rho_min, double rho_max, int samples);

}  // namespace baro
