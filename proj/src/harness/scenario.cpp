#include "baro/harness/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "baro/errors.hpp"
#include "baro/statics.hpp"

namespace baro::harness {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ConfigError("scenario: " + where + ": " + what);
}

const json& child(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
}

template <class T>
T get(const json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(where, std::string("field '") + key + "' has the wrong type");
    }
}

template <class T>
T require(const json& j, const char* key, const std::string& where) {
    const json& v = child(j, key, where);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        bad(where, std::string("field '") + key + "' has the wrong type");
    }
}

template <std::size_t N>
std::array<double, 2> pair_of(const json& j, const char* key, std::array<double, 2> fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto v = get<std::vector<double>>(j, key, {}, where);
    if (v.empty() || v.size() > N) bad(where, std::string("field '") + key + "' needs 1 or 2 entries");
    std::array<double, 2> out = fallback;
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

ProfileSpec parse_profile(const json& j, const std::filesystem::path& base, const std::string& where) {
    ProfileSpec p;
    const auto kind = require<std::string>(j, "kind", where);
    if (kind == "linear") {
        check_keys(j, {"kind", "offset", "slope"}, where);
        p.kind = ProfileSpec::Kind::Linear;
        p.offset = get(j, "offset", 0.0, where);
        p.slope = pair_of<2>(j, "slope", {0.0, 0.0}, where);
    } else if (kind == "cosine") {
        check_keys(j, {"kind", "offset", "amp", "mode"}, where);
        p.kind = ProfileSpec::Kind::Cosine;
        p.offset = get(j, "offset", 0.0, where);
        p.amp = require<double>(j, "amp", where);
        p.mode = get(j, "mode", 1, where);
    } else if (kind == "radial_bump") {
        check_keys(j, {"kind", "offset", "amp", "center", "width"}, where);
        p.kind = ProfileSpec::Kind::RadialBump;
        p.offset = get(j, "offset", 0.0, where);
        p.amp = require<double>(j, "amp", where);
        p.center = pair_of<2>(j, "center", {0.5, 0.5}, where);
        p.width = require<double>(j, "width", where);
        if (!(p.width > 0.0)) bad(where, "width must be > 0");
    } else if (kind == "csv") {
        check_keys(j, {"kind", "path"}, where);
        p.kind = ProfileSpec::Kind::Csv;
        p.path = resolve(base, require<std::string>(j, "path", where));
    } else {
        bad(where, "unknown profile kind '" + kind + "'");
    }
    return p;
}

json profile_json(const ProfileSpec& p) {
    switch (p.kind) {
        case ProfileSpec::Kind::Linear:
            return {{"kind", "linear"}, {"offset", p.offset}, {"slope", p.slope}};
        case ProfileSpec::Kind::Cosine:
            return {{"kind", "cosine"}, {"offset", p.offset}, {"amp", p.amp}, {"mode", p.mode}};
        case ProfileSpec::Kind::RadialBump:
            return {{"kind", "radial_bump"}, {"offset", p.offset}, {"amp", p.amp}, {"center", p.center},
                    {"width", p.width}};
        case ProfileSpec::Kind::Csv:
            return {{"kind", "csv"}, {"path", p.path.string()}};
    }
    return {};
}

InitialSpec parse_initial(const json& j, const std::string& where) {
    InitialSpec s;
    const auto kind = require<std::string>(j, "kind", where);
    check_keys(j, {"kind", "rho0", "rho_amp", "rho_mode", "u_amp", "u_mode", "u", "centers", "width", "seed", "modes",
                   "mass"},
               where);
    if (kind == "uniform") s.kind = InitialSpec::Kind::Uniform;
    else if (kind == "sine") s.kind = InitialSpec::Kind::Sine;
    else if (kind == "two_bump") s.kind = InitialSpec::Kind::TwoBump;
    else if (kind == "random_smooth") s.kind = InitialSpec::Kind::RandomSmooth;
    else if (kind == "static") s.kind = InitialSpec::Kind::Static;
    else bad(where, "unknown initial kind '" + kind + "'");
    s.rho0 = get(j, "rho0", s.rho0, where);
    s.rho_amp = get(j, "rho_amp", s.rho_amp, where);
    s.rho_mode = get(j, "rho_mode", s.rho_mode, where);
    s.u_amp = get(j, "u_amp", s.u_amp, where);
    s.u_mode = get(j, "u_mode", s.u_mode, where);
    s.u = pair_of<2>(j, "u", s.u, where);
    s.centers = pair_of<2>(j, "centers", s.centers, where);
    s.width = get(j, "width", s.width, where);
    s.seed = get<std::uint64_t>(j, "seed", s.seed, where);
    s.modes = get(j, "modes", s.modes, where);
    s.mass = get(j, "mass", s.mass, where);
    return s;
}

std::string initial_kind(InitialSpec::Kind k) {
    switch (k) {
        case InitialSpec::Kind::Uniform: return "uniform";
        case InitialSpec::Kind::Sine: return "sine";
        case InitialSpec::Kind::TwoBump: return "two_bump";
        case InitialSpec::Kind::RandomSmooth: return "random_smooth";
        case InitialSpec::Kind::Static: return "static";
    }
    return {};
}

ForcingSpec parse_forcing(const json& j, const std::filesystem::path& base, const std::string& where) {
    ForcingSpec f;
    const auto kind = require<std::string>(j, "kind", where);
    if (kind == "none") {
        check_keys(j, {"kind"}, where);
        return f;
    }
    if (kind == "gradient") {
        check_keys(j, {"kind", "potential"}, where);
        f.kind = ForcingSpec::Kind::Gradient;
        f.profile = parse_profile(child(j, "potential", where), base, where + ".potential");
        return f;
    }
    if (kind != "constant" && kind != "periodic") bad(where, "unknown forcing kind '" + kind + "'");
    check_keys(j, {"kind", "profile", "from_gradient", "period", "envelope"}, where);
    f.kind = kind == "constant" ? ForcingSpec::Kind::Constant : ForcingSpec::Kind::Periodic;
    f.profile = parse_profile(child(j, "profile", where), base, where + ".profile");
    f.from_gradient = get(j, "from_gradient", false, where);
    if (f.kind == ForcingSpec::Kind::Periodic) {
        f.period = require<double>(j, "period", where);
        if (j.contains("envelope")) {
            const json& e = j.at("envelope");
            check_keys(e, {"mean", "cos", "sin"}, where + ".envelope");
            f.envelope.mean = get(e, "mean", 0.0, where);
            f.envelope.cos = get<std::vector<double>>(e, "cos", {}, where);
            f.envelope.sin = get<std::vector<double>>(e, "sin", {}, where);
        }
    }
    return f;
}

std::vector<double> read_numbers(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::vector<double> out;
    std::string tok;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream ls(line);
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw ConfigError("non-numeric entry '" + tok + "' in " + path.string());
            }
            if (used != tok.size()) throw ConfigError("non-numeric entry '" + tok + "' in " + path.string());
            out.push_back(v);
        }
    }
    return out;
}

// Uniform double in [-1, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double symmetric_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-52 - 1.0; }

}  // namespace

void Scenario::validate() const {
    if (id.empty()) throw ConfigError("scenario: id must not be empty");
    build_grid(grid);
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("scenario: t_end must be > 0");
    if (!(sample_every > 0.0)) throw ConfigError("scenario: sample_every must be > 0");
    if (snapshot_every && !(*snapshot_every > 0.0)) throw ConfigError("scenario: snapshot_every must be > 0");
    scheme.validate();
    Viscosity(mu, lambda);
    if (!law.tabulated) PressureLaw::isentropic(law.a, law.gamma);
    if (forcing.kind == ForcingSpec::Kind::Periodic && !(forcing.period > 0.0))
        throw ConfigError("scenario: forcing period must be > 0");
    if (initial.kind == InitialSpec::Kind::Static) {
        if (forcing.kind != ForcingSpec::Kind::Gradient) throw ConfigError("scenario: static initial data needs gradient forcing");
        if (law.tabulated || !(law.gamma > 1.0)) throw ConfigError("scenario: static initial data needs an isentropic law with gamma > 1");
        if (!(initial.mass > 0.0)) throw ConfigError("scenario: static mass must be > 0");
    }
    if (initial.kind == InitialSpec::Kind::RandomSmooth && initial.modes < 1)
        throw ConfigError("scenario: random_smooth needs modes >= 1");
    if (initial.kind == InitialSpec::Kind::TwoBump && !(initial.width > 0.0))
        throw ConfigError("scenario: two_bump width must be > 0");

    const auto& d = dissipativity;
    if (d.energy_scales.size() < 2) throw ConfigError("dissipativity: need at least two energy scales");
    for (std::size_t k = 0; k < d.energy_scales.size(); ++k) {
        if (!(d.energy_scales[k] > 0.0)) throw ConfigError("dissipativity: energy scales must be > 0");
        if (k > 0 && !(d.energy_scales[k] > d.energy_scales[k - 1]))
            throw ConfigError("dissipativity: energy scales must increase");
    }
    if (!(d.margin > 0.0)) throw ConfigError("dissipativity: margin must be > 0");
    if (!(d.long_time_fraction > 0.0 && d.long_time_fraction <= 1.0))
        throw ConfigError("dissipativity: long_time_fraction must lie in (0, 1]");

    if (!(periodic.transient >= 0.0)) throw ConfigError("periodic: transient must be >= 0");
    if (periodic.periods < 2) throw ConfigError("periodic: need at least 2 periods");
    if (!(periodic.rel_tol > 0.0) || !(periodic.slack >= 0.0) || !(periodic.noise >= 0.0))
        throw ConfigError("periodic: tolerances must be non-negative and rel_tol > 0");

    if (!(shift.window > 0.0)) throw ConfigError("shift_compactness: window must be > 0");
    for (std::size_t k = 1; k < shift.shift_times.size(); ++k)
        if (!(shift.shift_times[k] > shift.shift_times[k - 1]))
            throw ConfigError("shift_compactness: shift times must increase");
    if (!(shift.slack >= 0.0) || !(shift.final_fraction > 0.0))
        throw ConfigError("shift_compactness: slack must be >= 0 and final_fraction > 0");

    if (!(steady.decay_factor > 0.0) || !(steady.q_tol > 0.0) || !(steady.statics_tol > 0.0) || steady.levels < 1 ||
        !(steady.noise >= 0.0))
        throw ConfigError("steady_convergence: tolerances must be > 0 and levels >= 1");
}

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base) {
    const std::string top = "document";
    check_keys(doc, {"version", "id", "grid", "initial", "fluid", "forcing", "scheme", "t_end", "sample_every",
                     "snapshot_every", "output", "probes"},
               top);
    const int version = require<int>(doc, "version", top);
    if (version != kSchemaVersion)
        throw ConfigError("scenario: unsupported schema version " + std::to_string(version));

    Scenario s;
    s.id = get<std::string>(doc, "id", s.id, top);

    const json& g = child(doc, "grid", top);
    check_keys(g, {"dim", "extents", "cells", "ghost"}, "grid");
    s.grid.dim = require<int>(g, "dim", "grid");
    const auto ext = require<std::vector<double>>(g, "extents", "grid");
    const auto cells = require<std::vector<int>>(g, "cells", "grid");
    if (ext.size() != static_cast<std::size_t>(s.grid.dim) || cells.size() != static_cast<std::size_t>(s.grid.dim))
        bad("grid", "extents and cells need one entry per axis");
    for (std::size_t k = 0; k < ext.size(); ++k) {
        s.grid.extents[k] = ext[k];
        s.grid.cells[k] = cells[k];
    }
    s.grid.ghost = get(g, "ghost", 1, "grid");

    s.initial = parse_initial(child(doc, "initial", top), "initial");

    const json& fl = child(doc, "fluid", top);
    check_keys(fl, {"mu", "lambda", "law"}, "fluid");
    s.mu = require<double>(fl, "mu", "fluid");
    s.lambda = get(fl, "lambda", 0.0, "fluid");
    const json& law = child(fl, "law", "fluid");
    const auto law_kind = require<std::string>(law, "kind", "fluid.law");
    if (law_kind == "isentropic") {
        check_keys(law, {"kind", "a", "gamma"}, "fluid.law");
        s.law.a = require<double>(law, "a", "fluid.law");
        s.law.gamma = require<double>(law, "gamma", "fluid.law");
    } else if (law_kind == "tabulated") {
        check_keys(law, {"kind", "path", "monotone"}, "fluid.law");
        s.law.tabulated = true;
        s.law.table = resolve(base, require<std::string>(law, "path", "fluid.law"));
        s.law.monotone = get(law, "monotone", true, "fluid.law");
    } else {
        bad("fluid.law", "unknown law kind '" + law_kind + "'");
    }

    s.forcing = doc.contains("forcing") ? parse_forcing(doc.at("forcing"), base, "forcing") : ForcingSpec{};

    if (doc.contains("scheme")) {
        const json& sc = doc.at("scheme");
        check_keys(sc, {"cfl", "vacuum_floor", "integrator", "backend", "well_balanced"}, "scheme");
        s.scheme.cfl = get(sc, "cfl", s.scheme.cfl, "scheme");
        s.scheme.vacuum_floor = get(sc, "vacuum_floor", s.scheme.vacuum_floor, "scheme");
        const auto integ = get<std::string>(sc, "integrator", "ssp_rk2", "scheme");
        if (integ == "ssp_rk2") s.scheme.integrator = Integrator::SspRk2;
        else if (integ == "forward_euler") s.scheme.integrator = Integrator::ForwardEuler;
        else bad("scheme", "unknown integrator '" + integ + "'");
        const auto backend = get<std::string>(sc, "backend", "parallel", "scheme");
        if (backend == "parallel") s.scheme.backend = Backend::Parallel;
        else if (backend == "reference") s.scheme.backend = Backend::Reference;
        else bad("scheme", "unknown backend '" + backend + "'");
        s.scheme.well_balanced = get(sc, "well_balanced", true, "scheme");
    }

    s.t_end = require<double>(doc, "t_end", top);
    s.sample_every = require<double>(doc, "sample_every", top);
    if (doc.contains("snapshot_every")) s.snapshot_every = require<double>(doc, "snapshot_every", top);
    s.output = get<std::string>(doc, "output", s.output.string(), top);

    if (doc.contains("probes")) {
        const json& p = doc.at("probes");
        check_keys(p, {"dissipativity", "periodic", "shift_compactness", "steady_convergence"}, "probes");
        if (p.contains("dissipativity")) {
            const json& d = p.at("dissipativity");
            const std::string w = "probes.dissipativity";
            check_keys(d, {"energy_scales", "margin", "long_time_fraction"}, w);
            s.dissipativity.energy_scales = get(d, "energy_scales", s.dissipativity.energy_scales, w);
            s.dissipativity.margin = get(d, "margin", s.dissipativity.margin, w);
            s.dissipativity.long_time_fraction = get(d, "long_time_fraction", s.dissipativity.long_time_fraction, w);
        }
        if (p.contains("periodic")) {
            const json& d = p.at("periodic");
            const std::string w = "probes.periodic";
            check_keys(d, {"transient", "periods", "rel_tol", "slack", "noise"}, w);
            s.periodic.transient = get(d, "transient", s.periodic.transient, w);
            s.periodic.periods = get(d, "periods", s.periodic.periods, w);
            s.periodic.rel_tol = get(d, "rel_tol", s.periodic.rel_tol, w);
            s.periodic.slack = get(d, "slack", s.periodic.slack, w);
            s.periodic.noise = get(d, "noise", s.periodic.noise, w);
        }
        if (p.contains("shift_compactness")) {
            const json& d = p.at("shift_compactness");
            const std::string w = "probes.shift_compactness";
            check_keys(d, {"shift_times", "window", "slack", "final_fraction"}, w);
            s.shift.shift_times = get(d, "shift_times", s.shift.shift_times, w);
            s.shift.window = get(d, "window", s.shift.window, w);
            s.shift.slack = get(d, "slack", s.shift.slack, w);
            s.shift.final_fraction = get(d, "final_fraction", s.shift.final_fraction, w);
        }
        if (p.contains("steady_convergence")) {
            const json& d = p.at("steady_convergence");
            const std::string w = "probes.steady_convergence";
            check_keys(d, {"decay_factor", "q_tol", "statics_tol", "levels", "noise"}, w);
            s.steady.decay_factor = get(d, "decay_factor", s.steady.decay_factor, w);
            s.steady.q_tol = get(d, "q_tol", s.steady.q_tol, w);
            s.steady.statics_tol = get(d, "statics_tol", s.steady.statics_tol, w);
            s.steady.levels = get(d, "levels", s.steady.levels, w);
            s.steady.noise = get(d, "noise", s.steady.noise, w);
        }
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario " + path.string() + ": " + e.what());
    }
    return scenario_from_json(doc, path.parent_path());
}

json to_json(const Scenario& s) {
    json j;
    j["version"] = kSchemaVersion;
    j["id"] = s.id;
    const int d = s.grid.dim;
    j["grid"] = {{"dim", d},
                 {"extents", std::vector<double>(s.grid.extents.begin(), s.grid.extents.begin() + d)},
                 {"cells", std::vector<int>(s.grid.cells.begin(), s.grid.cells.begin() + d)},
                 {"ghost", s.grid.ghost}};
    const auto& in = s.initial;
    j["initial"] = {{"kind", initial_kind(in.kind)}, {"rho0", in.rho0},     {"rho_amp", in.rho_amp},
                    {"rho_mode", in.rho_mode},        {"u_amp", in.u_amp},   {"u_mode", in.u_mode},
                    {"u", in.u},                      {"centers", in.centers}, {"width", in.width},
                    {"seed", in.seed},                {"modes", in.modes},   {"mass", in.mass}};
    json law = s.law.tabulated ? json{{"kind", "tabulated"}, {"path", s.law.table.string()}, {"monotone", s.law.monotone}}
                               : json{{"kind", "isentropic"}, {"a", s.law.a}, {"gamma", s.law.gamma}};
    j["fluid"] = {{"mu", s.mu}, {"lambda", s.lambda}, {"law", law}};
    switch (s.forcing.kind) {
        case ForcingSpec::Kind::None: j["forcing"] = {{"kind", "none"}}; break;
        case ForcingSpec::Kind::Gradient:
            j["forcing"] = {{"kind", "gradient"}, {"potential", profile_json(s.forcing.profile)}};
            break;
        case ForcingSpec::Kind::Constant:
        case ForcingSpec::Kind::Periodic: {
            json f{{"kind", s.forcing.kind == ForcingSpec::Kind::Constant ? "constant" : "periodic"},
                   {"profile", profile_json(s.forcing.profile)},
                   {"from_gradient", s.forcing.from_gradient}};
            if (s.forcing.kind == ForcingSpec::Kind::Periodic) {
                f["period"] = s.forcing.period;
                f["envelope"] = {{"mean", s.forcing.envelope.mean},
                                 {"cos", s.forcing.envelope.cos},
                                 {"sin", s.forcing.envelope.sin}};
            }
            j["forcing"] = f;
            break;
        }
    }
    j["scheme"] = {{"cfl", s.scheme.cfl},
                   {"vacuum_floor", s.scheme.vacuum_floor},
                   {"integrator", s.scheme.integrator == Integrator::SspRk2 ? "ssp_rk2" : "forward_euler"},
                   {"backend", s.scheme.backend == Backend::Parallel ? "parallel" : "reference"},
                   {"well_balanced", s.scheme.well_balanced}};
    j["t_end"] = s.t_end;
    j["sample_every"] = s.sample_every;
    if (s.snapshot_every) j["snapshot_every"] = *s.snapshot_every;
    j["output"] = s.output.string();
    j["probes"] = {
        {"dissipativity",
         {{"energy_scales", s.dissipativity.energy_scales},
          {"margin", s.dissipativity.margin},
          {"long_time_fraction", s.dissipativity.long_time_fraction}}},
        {"periodic",
         {{"transient", s.periodic.transient},
          {"periods", s.periodic.periods},
          {"rel_tol", s.periodic.rel_tol},
          {"slack", s.periodic.slack},
          {"noise", s.periodic.noise}}},
        {"shift_compactness",
         {{"shift_times", s.shift.shift_times},
          {"window", s.shift.window},
          {"slack", s.shift.slack},
          {"final_fraction", s.shift.final_fraction}}},
        {"steady_convergence",
         {{"decay_factor", s.steady.decay_factor},
          {"q_tol", s.steady.q_tol},
          {"statics_tol", s.steady.statics_tol},
          {"levels", s.steady.levels},
          {"noise", s.steady.noise}}}};
    return j;
}

Grid build_grid(const GridSpec& spec) {
    return make_grid(spec.dim, std::span<const double>(spec.extents.data(), 2),
                     std::span<const int>(spec.cells.data(), 2), spec.ghost);
}

ScalarField build_profile(const ProfileSpec& p, const Grid& g) {
    const bool two = g.dim > 1;
    switch (p.kind) {
        case ProfileSpec::Kind::Linear:
            return ScalarField::from_function(g, [&](double x, double y) {
                return p.offset + p.slope[0] * x + (two ? p.slope[1] * y : 0.0);
            });
        case ProfileSpec::Kind::Cosine:
            return ScalarField::from_function(g, [&](double x, double y) {
                double v = std::cos(p.mode * kPi * x / g.extents[0]);
                if (two) v *= std::cos(p.mode * kPi * y / g.extents[1]);
                return p.offset + p.amp * v;
            });
        case ProfileSpec::Kind::RadialBump:
            return ScalarField::from_function(g, [&](double x, double y) {
                double r2 = (x - p.center[0]) * (x - p.center[0]);
                if (two) r2 += (y - p.center[1]) * (y - p.center[1]);
                return p.offset + p.amp * std::exp(-r2 / (p.width * p.width));
            });
        case ProfileSpec::Kind::Csv: {
            const auto v = read_numbers(p.path);
            if (v.size() != g.interior_count())
                throw ConfigError("profile " + p.path.string() + ": expected " + std::to_string(g.interior_count()) +
                                  " values, found " + std::to_string(v.size()));
            ScalarField f(g);
            std::size_t k = 0;
            for_each_cell(g, [&](int i, int j) { f(i, j) = v[k++]; });
            f.require_finite("csv profile");
            return f;
        }
    }
    throw ConfigError("unknown profile kind");
}

Forcing build_forcing(const ForcingSpec& spec, const Grid& g) {
    if (spec.kind == ForcingSpec::Kind::None) return Forcing::none();
    ScalarField profile = build_profile(spec.profile, g);
    if (spec.kind == ForcingSpec::Kind::Gradient) return Forcing::gradient(std::move(profile));

    VectorField f(g);
    if (spec.from_gradient) {
        Forcing::gradient(std::move(profile)).evaluate(0.0, f);
    } else {
        for_each_cell(g, [&](int i, int j) { f[0](i, j) = profile(i, j); });
    }
    if (spec.kind == ForcingSpec::Kind::Constant) return Forcing::constant(std::move(f));
    return Forcing::periodic(std::move(f), spec.period, spec.envelope);
}

FluidParams build_fluid(const Scenario& s) {
    PressureLaw law = s.law.tabulated ? load_tabulated_law(s.law.table, s.law.monotone)
                                      : PressureLaw::isentropic(s.law.a, s.law.gamma);
    return FluidParams{Viscosity(s.mu, s.lambda), std::move(law)};
}

InitialData build_initial(const Scenario& s, const Grid& g, const Forcing& forcing) {
    const InitialSpec& in = s.initial;
    const bool two = g.dim > 1;
    const double lx = g.extents[0];
    const double ly = g.extents[1];

    auto wave = [&](int mode, double x, double y, bool sine) {
        auto f = [&](double t) { return sine ? std::sin(t) : std::cos(t); };
        double v = f(mode * kPi * x / lx);
        if (two) v *= f(mode * kPi * y / ly);
        return v;
    };
    auto sine_velocity = [&](double x, double y) {
        const double v = in.u_amp * wave(in.u_mode, x, y, true);
        return std::array<double, 2>{v, two ? v : 0.0};
    };

    ScalarField rho(g);
    VectorField u(g);
    switch (in.kind) {
        case InitialSpec::Kind::Uniform:
            rho = ScalarField(g, in.rho0);
            u = VectorField::from_function(g, [&](double, double) { return in.u; });
            break;
        case InitialSpec::Kind::Sine:
            rho = ScalarField::from_function(g, [&](double x, double y) {
                return in.rho0 + in.rho_amp * wave(in.rho_mode, x, y, false);
            });
            u = VectorField::from_function(g, sine_velocity);
            break;
        case InitialSpec::Kind::TwoBump:
            rho = ScalarField::from_function(g, [&](double x, double y) {
                double v = in.rho0;
                for (double c : in.centers) {
                    double r2 = (x - c * lx) * (x - c * lx);
                    if (two) r2 += (y - 0.5 * ly) * (y - 0.5 * ly);
                    v += in.rho_amp * std::exp(-r2 / (in.width * in.width));
                }
                return v;
            });
            u = VectorField::from_function(g, sine_velocity);
            break;
        case InitialSpec::Kind::RandomSmooth: {
            std::mt19937_64 rng(in.seed);
            std::vector<double> a, b;
            for (int k = 0; k < in.modes; ++k) {
                a.push_back(symmetric_unit(rng));
                b.push_back(symmetric_unit(rng));
            }
            rho = ScalarField::from_function(g, [&](double x, double y) {
                double v = in.rho0;
                for (int k = 1; k <= in.modes; ++k) v += in.rho_amp * a[k - 1] * wave(k, x, y, false) / (k * k);
                return v;
            });
            u = VectorField::from_function(g, [&](double x, double y) {
                double v = 0.0;
                for (int k = 1; k <= in.modes; ++k) v += in.u_amp * b[k - 1] * wave(k, x, y, true) / (k * k);
                return std::array<double, 2>{v, two ? v : 0.0};
            });
            break;
        }
        case InitialSpec::Kind::Static: {
            if (!forcing.is_gradient()) throw ConfigError("static initial data needs gradient forcing");
            const StaticSolution sol = solve_static(forcing.potential(), in.mass, s.law.a, s.law.gamma);
            rho = sol.rho_s;
            for_each_cell(g, [&](int i, int j) {
                const double y = two ? g.center(1, j) : 0.0;
                rho(i, j) *= 1.0 + in.rho_amp * wave(in.rho_mode, g.center(0, i), y, false);
            });
            u = VectorField::from_function(g, sine_velocity);
            break;
        }
    }

    VectorField q(g);
    for (int k = 0; k < g.dim; ++k) for_each_cell(g, [&](int i, int j) { q[k](i, j) = rho(i, j) * u[k](i, j); });
    return InitialData{std::move(rho), std::move(q)};
}

}  // namespace baro::harness
