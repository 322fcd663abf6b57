#include "baro/forcing.hpp"

#include <cmath>
#include <numbers>

#include "baro/errors.hpp"

namespace baro {

double Envelope::operator()(double theta) const {
    double g = mean;
    const double w = 2.0 * std::numbers::pi * theta;
    for (std::size_t k = 0; k < cos.size(); ++k) g += cos[k] * std::cos(static_cast<double>(k + 1) * w);
    for (std::size_t k = 0; k < sin.size(); ++k) g += sin[k] * std::sin(static_cast<double>(k + 1) * w);
    return g;
}

double Envelope::bound() const {
    double b = std::abs(mean);
    for (double c : cos) b += std::abs(c);
    for (double s : sin) b += std::abs(s);
    return b;
}

double max_magnitude(const VectorField& f) {
    double m = 0.0;
    for_each_cell(f.grid(), [&](int i, int j) {
        double s = 0.0;
        for (int k = 0; k < f.dim(); ++k) s += f[k](i, j) * f[k](i, j);
        m = std::max(m, std::sqrt(s));
    });
    return m;
}

Forcing Forcing::none() { return Forcing(NoForcing{}, 0.0); }

Forcing Forcing::constant(VectorField f) {
    for (int k = 0; k < f.dim(); ++k) f[k].require_finite("constant forcing");
    const double b = max_magnitude(f);
    return Forcing(ConstantForcing{std::move(f)}, b);
}

Forcing Forcing::periodic(VectorField f0, double period, Envelope envelope) {
    if (!(period > 0.0)) throw ConfigError("periodic forcing: period must be > 0");
    for (int k = 0; k < f0.dim(); ++k) f0[k].require_finite("periodic forcing");
    const double b = max_magnitude(f0) * envelope.bound();
    return Forcing(PeriodicForcing{std::move(f0), period, std::move(envelope)}, b);
}

Forcing Forcing::gradient(ScalarField potential) {
    potential.require_finite("gradient forcing");
    potential.fill_ghosts(Parity::Even);
    const Grid& g = potential.grid();
    VectorField f(g);
    for_each_cell(g, [&](int i, int j) {
        f[0](i, j) = (potential(i + 1, j) - potential(i - 1, j)) / (2.0 * g.dx[0]);
        if (g.dim > 1) f[1](i, j) = (potential(i, j + 1) - potential(i, j - 1)) / (2.0 * g.dx[1]);
    });
    const double b = max_magnitude(f);
    return Forcing(GradientForcing{std::move(potential), std::move(f)}, b);
}

Forcing Forcing::analytic(std::function<void(double, VectorField&)> fn, double bound) {
    if (!fn) throw ConfigError("analytic forcing: empty function");
    return Forcing(AnalyticForcing{std::move(fn)}, bound);
}

double Forcing::period() const {
    if (const auto* p = std::get_if<PeriodicForcing>(&v_)) return p->period;
    throw ConfigError("forcing is not time-periodic");
}

void Forcing::evaluate(double t, VectorField& out) const {
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            const Grid& g = out.grid();
            if constexpr (std::is_same_v<T, NoForcing>) {
                for (int k = 0; k < out.dim(); ++k) for_each_cell(g, [&](int i, int j) { out[k](i, j) = 0.0; });
            } else if constexpr (std::is_same_v<T, ConstantForcing> || std::is_same_v<T, GradientForcing>) {
                for (int k = 0; k < out.dim(); ++k)
                    for_each_cell(g, [&](int i, int j) { out[k](i, j) = f.f[k](i, j); });
            } else if constexpr (std::is_same_v<T, PeriodicForcing>) {
                const double cycles = t / f.period;
                const double s = f.envelope(cycles - std::floor(cycles));
                for (int k = 0; k < out.dim(); ++k)
                    for_each_cell(g, [&](int i, int j) { out[k](i, j) = s * f.f0[k](i, j); });
            } else {
                f.fn(t, out);
            }
        },
        v_);
}

}  // namespace baro
