#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "baro/core.hpp"

namespace baro {

// Bounded periodic scalar g(theta), theta = t/period mod 1:
// g = mean + sum_k cos_k cos(2 pi k theta) + sin_k sin(2 pi k theta), k = 1, 2, ...
struct Envelope {
    double mean = 0.0;
    std::vector<double> cos;
    std::vector<double> sin;

    double operator()(double theta) const;
    double bound() const;  // sum of absolute coefficients
};

struct NoForcing {};

struct ConstantForcing {
    VectorField f;
};

struct PeriodicForcing {
    VectorField f0;
    double period = 1.0;
    Envelope envelope;
};

// f = grad F; F is stored with even ghost reflection, f by central differences.
struct GradientForcing {
    ScalarField potential;
    VectorField f;
};

// General f(t, x), used for manufactured solutions. fn fills the interior of `out`.
struct AnalyticForcing {
    std::function<void(double t, VectorField& out)> fn;
};

class Forcing {
public:
    static Forcing none();
    static Forcing constant(VectorField f);
    static Forcing periodic(VectorField f0, double period, Envelope envelope);
    static Forcing gradient(ScalarField potential);
    static Forcing analytic(std::function<void(double, VectorField&)> fn, double bound);

    bool is_zero() const { return std::holds_alternative<NoForcing>(v_); }
    bool is_gradient() const { return std::holds_alternative<GradientForcing>(v_); }
    bool is_periodic() const { return std::holds_alternative<PeriodicForcing>(v_); }
    bool is_time_dependent() const { return is_periodic() || std::holds_alternative<AnalyticForcing>(v_); }

    // ess-sup of |f(t, x)| over time and space, fixed at construction.
    double bound() const { return bound_; }
    double period() const;
    const ScalarField& potential() const { return std::get<GradientForcing>(v_).potential; }

    // Writes f(t, .) into the interior of `out` (zero for NoForcing).
    void evaluate(double t, VectorField& out) const;

private:
    using Variant = std::variant<NoForcing, ConstantForcing, PeriodicForcing, GradientForcing, AnalyticForcing>;
    Forcing(Variant v, double bound) : v_(std::move(v)), bound_(bound) {}

    Variant v_;
    double bound_ = 0.0;
};

// Cell-centred magnitude max of a vector field.
double max_magnitude(const VectorField& f);

}  // namespace baro
