#include "baro/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "baro/errors.hpp"

namespace baro {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// pow with exact fast paths for the exponents that dominate in practice.
double power(double x, double e) {
    if (e == 1.0) return x;
    if (e == 2.0) return x * x;
    if (e == 3.0) return x * x * x;
    if (e == 0.5) return std::sqrt(x);
    return std::pow(x, e);
}

double simpson(double fa, double fm, double fb, double a, double b) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

template <class Fn>
double adaptive_simpson(const Fn& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Integral of f over [a, b] to relative tolerance rel_tol.
template <class Fn>
double integrate(const Fn& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double coarse = simpson(fa, fm, fb, a, b);
    const double tol = std::max(rel_tol * std::abs(coarse), 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, coarse, tol, 48);
}

void require_rho(double rho, const char* what) {
    if (!(rho >= 0.0)) throw ConfigError(std::string(what) + ": negative density");
}

}  // namespace

// ---------------------------------------------------------------------------
// TabulatedLaw

TabulatedLaw::TabulatedLaw(std::vector<std::pair<double, double>> nodes, bool monotone)
    : nodes_(std::move(nodes)), monotone_(monotone) {
    const std::size_t n = nodes_.size();
    if (n < 2) throw ConfigError("tabulated law: need at least two nodes");
    if (nodes_[0].first != 0.0 || nodes_[0].second != 0.0)
        throw ConfigError("tabulated law: first node must be (0, 0)");
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(nodes_[k].first) || !std::isfinite(nodes_[k].second))
            throw ConfigError("tabulated law: non-finite node");
        if (k > 0 && !(nodes_[k].first > nodes_[k - 1].first))
            throw ConfigError("tabulated law: density column must be strictly increasing");
    }

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = nodes_[k + 1].first - nodes_[k].first;
        delta[k] = (nodes_[k + 1].second - nodes_[k].second) / h[k];
    }
    slopes_.assign(n, 0.0);
    slopes_[0] = delta[0];
    slopes_[n - 1] = delta[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (monotone_) {
            if (delta[k - 1] * delta[k] <= 0.0) {
                slopes_[k] = 0.0;
            } else {
                const double w1 = 2.0 * h[k] + h[k - 1];
                const double w2 = h[k] + 2.0 * h[k - 1];
                slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
            }
        } else {
            slopes_[k] = (h[k] * delta[k - 1] + h[k - 1] * delta[k]) / (h[k - 1] + h[k]);
        }
    }

    cumulative_.assign(n, 0.0);
    for (std::size_t k = 2; k < n; ++k)
        cumulative_[k] = cumulative_[k - 1] + integrate_p_over_s2(nodes_[k - 1].first, nodes_[k].first);
}

std::size_t TabulatedLaw::interval(double rho) const {
    // Last k with nodes_[k].first <= rho, capped to the final interval.
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), rho,
                                     [](double r, const auto& node) { return r < node.first; });
    const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - nodes_.begin() - 1, 0));
    return std::min(k, nodes_.size() - 2);
}

double TabulatedLaw::value(double rho) const {
    const auto& last = nodes_.back();
    if (rho >= last.first) return last.second + slopes_.back() * (rho - last.first);
    const std::size_t k = interval(rho);
    const double x0 = nodes_[k].first;
    const double h = nodes_[k + 1].first - x0;
    const double t = (rho - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * nodes_[k].second + (t3 - 2 * t2 + t) * h * slopes_[k] +
           (-2 * t3 + 3 * t2) * nodes_[k + 1].second + (t3 - t2) * h * slopes_[k + 1];
}

double TabulatedLaw::derivative(double rho) const {
    if (rho >= nodes_.back().first) return slopes_.back();
    const std::size_t k = interval(rho);
    const double x0 = nodes_[k].first;
    const double h = nodes_[k + 1].first - x0;
    const double t = (rho - x0) / h;
    const double t2 = t * t;
    return (6 * t2 - 6 * t) / h * nodes_[k].second + (3 * t2 - 4 * t + 1) * slopes_[k] +
           (-6 * t2 + 6 * t) / h * nodes_[k + 1].second + (3 * t2 - 2 * t) * slopes_[k + 1];
}

double TabulatedLaw::integrate_p_over_s2(double lo, double hi) const {
    return integrate([this](double s) { return value(s) / (s * s); }, lo, hi, 1e-10);
}

double TabulatedLaw::potential(double rho) const {
    if (rho == 0.0) return 0.0;
    const double r1 = nodes_[1].first;
    if (rho <= r1) return -rho * integrate_p_over_s2(rho, r1);
    const std::size_t last = nodes_.size() - 1;
    std::size_t k = rho >= nodes_[last].first ? last : interval(rho);
    k = std::max<std::size_t>(k, 1);
    return rho * (cumulative_[k] + integrate_p_over_s2(nodes_[k].first, rho));
}

// ---------------------------------------------------------------------------
// PressureLaw

PressureLaw PressureLaw::isentropic(double a, double gamma) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("isentropic law: a must be > 0");
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ConfigError("isentropic law: gamma must be >= 1");
    return PressureLaw(IsentropicLaw{a, gamma});
}

PressureLaw PressureLaw::tabulated(std::vector<std::pair<double, double>> nodes, bool monotone) {
    return PressureLaw(TabulatedLaw(std::move(nodes), monotone));
}

PressureLaw load_tabulated_law(const std::filesystem::path& path, bool monotone) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pressure table " + path.string());
    std::vector<std::pair<double, double>> nodes;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double rho = 0.0, p = 0.0;
        if (!(row >> rho >> p)) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw ConfigError("pressure table: malformed row '" + line + "'");
        }
        first = false;
        nodes.emplace_back(rho, p);
    }
    return PressureLaw::tabulated(std::move(nodes), monotone);
}

double pressure(double rho, const PressureLaw& law) {
    require_rho(rho, "pressure");
    if (law.is_isentropic()) {
        const auto& l = law.as_isentropic();
        return l.gamma == 1.0 ? l.a * rho : l.a * power(rho, l.gamma);
    }
    return law.as_tabulated().value(rho);
}

double dpressure(double rho, const PressureLaw& law) {
    if (!(rho > 0.0)) throw ConfigError("dpressure: density must be positive");
    if (law.is_isentropic()) {
        const auto& l = law.as_isentropic();
        return l.gamma == 1.0 ? l.a : l.a * l.gamma * power(rho, l.gamma - 1.0);
    }
    return law.as_tabulated().derivative(rho);
}

double sound_speed(double rho, const PressureLaw& law) { return std::sqrt(std::max(dpressure(rho, law), 0.0)); }

double pressure_potential(double rho, const PressureLaw& law) {
    require_rho(rho, "pressure_potential");
    if (law.is_isentropic()) {
        const auto& l = law.as_isentropic();
        if (l.gamma == 1.0) return rho == 0.0 ? 0.0 : l.a * rho * std::log(rho);
        return l.a / (l.gamma - 1.0) * power(rho, l.gamma);
    }
    return law.as_tabulated().potential(rho);
}

double enthalpy(double rho, const IsentropicLaw& law) {
    if (law.gamma == 1.0) return law.a * std::log(rho);
    return law.a * law.gamma / (law.gamma - 1.0) * power(rho, law.gamma - 1.0);
}

double density_from_enthalpy(double h, const IsentropicLaw& law) {
    if (law.gamma == 1.0) return std::exp(h / law.a);
    if (!(h > 0.0)) return 0.0;
    return power((law.gamma - 1.0) * h / (law.a * law.gamma), 1.0 / (law.gamma - 1.0));
}

// ---------------------------------------------------------------------------
// Viscous stress

Viscosity::Viscosity(double mu, double lambda) : mu_(mu), lambda_(lambda) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("viscosity: mu must be > 0");
    if (!(lambda + mu >= 0.0) || !std::isfinite(lambda)) throw ConfigError("viscosity: lambda + mu must be >= 0");
}

Tensor viscous_stress(const Tensor& g, const Viscosity& visc) {
    Tensor s;
    s.dim = g.dim;
    double trace = 0.0;
    for (int k = 0; k < g.dim; ++k) trace += g(k, k);
    for (int r = 0; r < g.dim; ++r)
        for (int c = 0; c < g.dim; ++c)
            s(r, c) = visc.mu() * (g(r, c) + g(c, r)) + (r == c ? visc.lambda() * trace : 0.0);
    return s;
}

// ---------------------------------------------------------------------------
// Growth bounds

GrowthBoundReport check_growth_bounds(const PressureLaw& law, double a, double b, double gamma, double rho_min,
                                      double rho_max, int samples) {
    if (!(a > 0.0)) throw ConfigError("growth bounds: a must be > 0");
    if (!(b >= 0.0)) throw ConfigError("growth bounds: b must be >= 0");
    if (samples < 2) throw ConfigError("growth bounds: need at least 2 samples");
    if (!(rho_min > 0.0) || !(rho_max > rho_min)) throw ConfigError("growth bounds: need 0 < rho_min < rho_max");

    GrowthBoundReport r{a, b, gamma, rho_min, rho_max, samples, -std::numeric_limits<double>::infinity(), rho_min, false};
    const double log_lo = std::log(rho_min);
    const double step = (std::log(rho_max) - log_lo) / (samples - 1);
    for (int k = 0; k < samples; ++k) {
        const double rho = k == samples - 1 ? rho_max : std::exp(log_lo + step * k);
        const double dp = dpressure(rho, law);
        const double scale = std::pow(rho, gamma - 1.0);
        const double lower = scale / a - b;
        const double upper = a * scale + b;
        // Comparisons carry a few ulps of slack so exactly tight bounds pass.
        const double lower_margin = (lower - dp) - 4 * kEps * (std::abs(lower) + std::abs(dp));
        const double upper_margin = (dp - upper) - 4 * kEps * (std::abs(upper) + std::abs(dp));
        const double margin = std::max(lower_margin, upper_margin);
        if (margin > r.worst_margin) {
            r.worst_margin = margin;
            r.worst_rho = rho;
        }
    }
    r.pass = r.worst_margin <= 0.0;
    return r;
}

}  // namespace baro
