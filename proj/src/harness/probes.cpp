#include "baro/harness/probes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "baro/errors.hpp"
#include "baro/statics.hpp"

namespace baro::harness {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::optional<std::filesystem::path> subdir(const ProbeOptions& opt, const std::string& name) {
    if (!opt.out_dir) return std::nullopt;
    return *opt.out_dir / name;
}

void note_run(ProbeReport& r, const RunResult& run) {
    r.clamps += run.stats.clamp_events;
    r.max_mass_drift = std::max(r.max_mass_drift, run.max_mass_drift);
}

void finish(ProbeReport& r, const ProbeOptions& opt, Clock::time_point t0) {
    r.runtime_s = seconds_since(t0);
    r.measurements["clamps"] = r.clamps;
    r.measurements["max_mass_drift"] = r.max_mass_drift;
    if (!opt.out_dir) return;
    std::filesystem::create_directories(*opt.out_dir);
    write_table(*opt.out_dir / (r.probe + "_measurements.csv"), r.table);
    std::ofstream out(*opt.out_dir / (r.probe + "_report.json"));
    if (!out) throw ConfigError("cannot write probe report under " + opt.out_dir->string());
    out << to_json(r).dump(2) << '\n';
}

std::vector<double> column(const Table& t, const std::string& name) {
    const std::size_t c = t.column(name);
    std::vector<double> v;
    for (const auto& row : t.rows) v.push_back(row[c]);
    return v;
}

double threshold(const json& th, const char* key) {
    if (!th.contains(key) || !th.at(key).is_number()) throw ConfigError(std::string("thresholds lack '") + key + "'");
    return th.at(key).get<double>();
}

double gamma_of(const Scenario& s, const char* probe) {
    if (s.law.tabulated) throw ConfigError(std::string(probe) + ": needs an isentropic law");
    return s.law.gamma;
}

}  // namespace

json to_json(const ProbeReport& r) {
    return json{{"probe", r.probe},
                {"pass", r.pass},
                {"measurements", r.measurements},
                {"thresholds", r.thresholds},
                {"runtime_s", r.runtime_s},
                {"tool_version", kToolVersion},
                {"method", r.method},
                {"warnings", r.warnings}};
}

const std::vector<std::string>& probe_names() {
    static const std::vector<std::string> names{"dissipativity", "periodic", "shift_compactness", "steady_convergence"};
    return names;
}

bool non_increasing_within(std::span<const double> v, double slack, double floor) {
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        if (v[k + 1] > (1.0 + slack) * v[k] + floor) return false;
    return true;
}

DissipativityVerdict judge_dissipativity(const std::vector<std::vector<std::pair<double, double>>>& series,
                                         double margin, double long_time_fraction) {
    DissipativityVerdict v;
    if (series.empty() || series.front().empty()) return v;
    const auto& base = series.front();
    const double t_last = base.back().first;
    const double t_from = (1.0 - long_time_fraction) * t_last;
    double long_max = -std::numeric_limits<double>::infinity();
    for (const auto& [t, e] : base)
        if (t >= t_from) long_max = std::max(long_max, e);
    v.band = (1.0 + margin) * long_max;

    v.pass = true;
    for (const auto& run : series) {
        std::optional<double> entry;
        bool stayed = true;
        for (const auto& [t, e] : run) {
            const bool inside = e >= 0.0 && e <= v.band;
            if (!entry && inside) entry = t;
            else if (entry && !inside) stayed = false;
        }
        v.entry_times.push_back(entry);
        v.stayed.push_back(stayed);
        v.pass = v.pass && entry && stayed;
    }
    v.ordered = v.pass;
    for (std::size_t k = 1; v.ordered && k < v.entry_times.size(); ++k)
        v.ordered = *v.entry_times[k] >= *v.entry_times[k - 1];
    v.pass = v.pass && v.ordered;
    return v;
}

bool judge_periodic(std::span<const double> delta, double rho_l1_final, double rel_tol, double slack, double noise) {
    if (delta.empty()) return false;
    return non_increasing_within(delta, slack, noise * rho_l1_final) && delta.back() <= rel_tol * rho_l1_final;
}

bool judge_shift(std::span<const double> delta, double slack, double final_fraction) {
    if (delta.size() < 2) return false;
    return non_increasing_within(delta, slack, 0.0) && delta.back() <= final_fraction * delta.front();
}

bool judge_steady(double e_rho0, double e_rho_end, double e_q0, double e_q_end, double decay_factor, double q_tol,
                  double noise) {
    return e_rho_end <= std::max(decay_factor * e_rho0, noise) && e_q_end <= std::max(q_tol * e_q0, noise);
}

bool recheck(const std::string& probe, const Table& t, const json& th) {
    if (probe == "dissipativity") {
        const auto run = column(t, "run");
        const auto time = column(t, "t");
        const auto e = column(t, "E");
        std::vector<std::vector<std::pair<double, double>>> series;
        for (std::size_t k = 0; k < run.size(); ++k) {
            const auto r = static_cast<std::size_t>(run[k]);
            if (series.size() <= r) series.resize(r + 1);
            series[r].emplace_back(time[k], e[k]);
        }
        return judge_dissipativity(series, threshold(th, "margin"), threshold(th, "long_time_fraction")).pass;
    }
    if (probe == "periodic") {
        const auto d = column(t, "delta_rho");
        const auto l1 = column(t, "rho_l1");
        if (d.empty()) return false;
        return judge_periodic(d, l1.back(), threshold(th, "rel_tol"), threshold(th, "slack"), threshold(th, "noise"));
    }
    if (probe == "shift_compactness")
        return judge_shift(column(t, "delta_rho"), threshold(th, "slack"), threshold(th, "final_fraction"));
    if (probe == "steady_convergence") {
        const auto er = column(t, "e_rho");
        const auto eq = column(t, "e_q");
        if (er.empty()) return false;
        return judge_steady(er.front(), er.back(), eq.front(), eq.back(), threshold(th, "decay_factor"),
                            threshold(th, "q_tol"), threshold(th, "noise"));
    }
    throw ConfigError("unknown probe '" + probe + "'");
}

ProbeReport probe_dissipativity(const Scenario& s, const ProbeOptions& opt) {
    const auto t0 = Clock::now();
    s.validate();
    const auto& cfg = s.dissipativity;
    if (!(cfg.margin > 0.0)) throw ConfigError("dissipativity: margin must be > 0");
    const Grid g = build_grid(s.grid);
    const FluidParams params = build_fluid(s);
    const Forcing forcing = build_forcing(s.forcing, g);
    const InitialData base = build_initial(s, g, forcing);
    const ValidationReport v = validate_initial_data(base, s.scheme.vacuum_floor);
    if (!v.ok()) throw ConfigError("dissipativity: invalid base initial data\n" + v.describe());
    const EnergyRecord e0 = total_energy(*v.state, params.law, s.scheme.vacuum_floor);
    if (!(e0.kinetic > 0.0)) throw ConfigError("dissipativity: base scenario needs a non-zero initial velocity");

    ProbeReport r;
    r.probe = "dissipativity";
    r.method = "velocity-scaled runs with E(0) = scale * E_base(0); band = (1 + margin) * long-time max of run 0";
    r.table.columns = {"run", "scale", "t", "E"};
    r.thresholds = {{"margin", cfg.margin}, {"long_time_fraction", cfg.long_time_fraction}};

    std::vector<std::vector<std::pair<double, double>>> series;
    json runs = json::array();
    for (std::size_t k = 0; k < cfg.energy_scales.size(); ++k) {
        const double scale = cfg.energy_scales[k];
        const double kinetic = scale * e0.total - e0.potential;
        if (!(kinetic > 0.0)) throw ConfigError("dissipativity: energy scale too small to reach by scaling velocity");
        const double factor = std::sqrt(kinetic / e0.kinetic);
        InitialData data = base;
        for (int c = 0; c < g.dim; ++c) for_each_cell(g, [&](int i, int j) { data.q[c](i, j) *= factor; });

        RunOptions ro;
        ro.initial = std::move(data);
        ro.out_dir = subdir(opt, "dissipativity_runs/run_" + std::to_string(k));
        const RunResult run = run_scenario(s, ro);
        note_run(r, run);
        series.emplace_back();
        for (const auto& row : run.samples) {
            series.back().emplace_back(row.energy.time, row.energy.total);
            r.table.rows.push_back({static_cast<double>(k), scale, row.energy.time, row.energy.total});
        }
        runs.push_back({{"scale", scale}, {"E0", run.samples.front().energy.total}, {"E_end", run.samples.back().energy.total},
                        {"clamps", run.stats.clamp_events}});
    }
    const DissipativityVerdict verdict = judge_dissipativity(series, cfg.margin, cfg.long_time_fraction);
    for (std::size_t k = 0; k < runs.size(); ++k) {
        runs[k]["entry_time"] = verdict.entry_times[k] ? json(*verdict.entry_times[k]) : json(nullptr);
        runs[k]["stayed_in_band"] = static_cast<bool>(verdict.stayed[k]);
    }
    r.measurements = {{"band", verdict.band}, {"runs", runs}, {"entry_times_ordered", verdict.ordered}};
    r.pass = verdict.pass;
    finish(r, opt, t0);
    return r;
}

ProbeReport probe_periodic(const Scenario& s, const ProbeOptions& opt) {
    const auto t0 = Clock::now();
    s.validate();
    if (s.forcing.kind != ForcingSpec::Kind::Periodic) throw ConfigError("periodic: forcing must be time-periodic");
    const auto& cfg = s.periodic;
    const double w = s.forcing.period;
    if (s.t_end < cfg.transient + (cfg.periods + 1) * w)
        throw ConfigError("periodic: t_end must be >= transient + (periods + 1) * period");

    std::vector<double> times;
    for (int k = 0; k <= cfg.periods; ++k) times.push_back(cfg.transient + k * w);
    std::vector<State> states;
    RunOptions ro;
    ro.out_dir = subdir(opt, "periodic_run");
    ro.probe_times = times;
    ro.on_probe = [&](const State& st) { states.push_back(st); };
    const RunResult run = run_scenario(s, ro);
    if (states.size() != times.size()) throw std::logic_error("periodic: missed observation times");

    ProbeReport r;
    r.probe = "periodic";
    r.method = "L1 distance between states one forcing period apart after the transient";
    r.table.columns = {"k", "t", "delta_rho", "delta_q", "rho_l1"};
    r.thresholds = {{"rel_tol", cfg.rel_tol}, {"slack", cfg.slack}, {"noise", cfg.noise}};
    note_run(r, run);
    std::vector<double> delta;
    for (int k = 0; k < cfg.periods; ++k) {
        const State& a = states[static_cast<std::size_t>(k)];
        const State& b = states[static_cast<std::size_t>(k) + 1];
        const double d = lp_distance(a.rho, b.rho, 1.0);
        const double dq = lp_distance(a.mom, b.mom, 1.0);
        const double l1 = lp_norm(b.rho, 1.0);
        delta.push_back(d);
        r.table.rows.push_back({static_cast<double>(k), a.time, d, dq, l1});
    }
    const double l1_final = r.table.rows.back()[4];
    r.pass = judge_periodic(delta, l1_final, cfg.rel_tol, cfg.slack, cfg.noise);
    r.measurements = {{"period", w},
                      {"delta_first", delta.front()},
                      {"delta_final", delta.back()},
                      {"rho_l1", l1_final},
                      {"delta_final_relative", delta.back() / l1_final},
                      {"non_increasing", non_increasing_within(delta, cfg.slack, cfg.noise * l1_final)}};
    finish(r, opt, t0);
    return r;
}

ProbeReport probe_shift_compactness(const Scenario& s, const ProbeOptions& opt) {
    const auto t0 = Clock::now();
    s.validate();
    const auto& cfg = s.shift;
    if (cfg.shift_times.size() < 3) throw ConfigError("shift_compactness: need at least 3 shift times");
    if (cfg.shift_times.back() + cfg.window > s.t_end)
        throw ConfigError("shift_compactness: shift times exceed t_end - window");
    const double gamma = gamma_of(s, "shift_compactness");

    // Window quadrature nodes: tau_i = window * i / m.
    const int m = std::max(2, static_cast<int>(std::ceil(cfg.window / s.sample_every - 1e-9)));
    const std::size_t nshift = cfg.shift_times.size();
    std::vector<std::tuple<double, std::size_t, int>> nodes;
    for (std::size_t n = 0; n < nshift; ++n)
        for (int i = 0; i <= m; ++i) nodes.emplace_back(cfg.shift_times[n] + cfg.window * i / m, n, i);
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });

    std::vector<std::vector<State>> at(nshift, std::vector<State>(static_cast<std::size_t>(m) + 1));
    std::size_t next = 0;
    RunOptions ro;
    ro.out_dir = subdir(opt, "shift_compactness_run");
    for (const auto& nd : nodes) ro.probe_times.push_back(std::get<0>(nd));
    ro.on_probe = [&](const State& st) {
        const auto& [t, n, i] = nodes.at(next++);
        at[n][static_cast<std::size_t>(i)] = st;
    };
    const RunResult run = run_scenario(s, ro);
    if (next != nodes.size()) throw std::logic_error("shift_compactness: missed observation times");

    ProbeReport r;
    r.probe = "shift_compactness";
    r.method = "time-shifted self-distance of one trajectory, integrated over a window (trapezoid rule)";
    r.table.columns = {"n", "t_n", "delta_rho", "delta_q"};
    r.thresholds = {{"slack", cfg.slack}, {"final_fraction", cfg.final_fraction}};
    note_run(r, run);
    const double h = cfg.window / m;
    std::vector<double> delta;
    for (std::size_t n = 0; n + 1 < nshift; ++n) {
        double d = 0.0;
        double dq = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double wgt = (i == 0 || i == m) ? 0.5 * h : h;
            const State& a = at[n][static_cast<std::size_t>(i)];
            const State& b = at[n + 1][static_cast<std::size_t>(i)];
            d += wgt * std::pow(lp_distance(a.rho, b.rho, gamma), gamma);
            dq += wgt * lp_distance(a.mom, b.mom, 1.0);
        }
        delta.push_back(d);
        r.table.rows.push_back({static_cast<double>(n), cfg.shift_times[n], d, dq});
    }
    r.pass = judge_shift(delta, cfg.slack, cfg.final_fraction);
    r.measurements = {{"gamma", gamma},
                      {"window", cfg.window},
                      {"quadrature_intervals", m},
                      {"delta_first", delta.front()},
                      {"delta_last", delta.back()},
                      {"ratio", delta.front() > 0.0 ? json(delta.back() / delta.front()) : json(nullptr)},
                      {"non_increasing", non_increasing_within(delta, cfg.slack, 0.0)}};
    finish(r, opt, t0);
    return r;
}

ProbeReport probe_steady_convergence(const Scenario& s, const ProbeOptions& opt) {
    const auto t0 = Clock::now();
    s.validate();
    if (s.forcing.kind != ForcingSpec::Kind::Gradient) throw ConfigError("steady_convergence: forcing must be a gradient");
    const double gamma = gamma_of(s, "steady_convergence");
    if (!(gamma > 1.0)) throw ConfigError("steady_convergence: gamma must be > 1");
    const auto& cfg = s.steady;
    const Grid g = build_grid(s.grid);
    const Forcing forcing = build_forcing(s.forcing, g);

    ProbeReport r;
    r.probe = "steady_convergence";
    r.method = "L^gamma distance to the mass-matched static profile and L1 norm of momentum";
    r.table.columns = {"t", "e_rho", "e_q"};
    r.thresholds = {{"decay_factor", cfg.decay_factor}, {"q_tol", cfg.q_tol}, {"noise", cfg.noise}};

    const LevelSetReport levels = check_level_sets(forcing.potential(), cfg.levels);
    if (!levels.connected_all)
        r.warnings.push_back("level sets of F are disconnected (first at k = " +
                             format_double(*levels.first_disconnected_level) + "); convergence may stall");

    std::optional<StaticSolution> sol;
    std::vector<double> times;
    for (long k = 0; k * s.sample_every < s.t_end; ++k) times.push_back(k * s.sample_every);
    times.push_back(s.t_end);
    RunOptions ro;
    ro.out_dir = subdir(opt, "steady_convergence_run");
    ro.probe_times = times;
    ro.on_probe = [&](const State& st) {
        if (!sol) {
            const double m0 = total_mass(st);
            sol = solve_static(forcing.potential(), m0, s.law.a, gamma, cfg.statics_tol, cfg.levels);
            if (!(std::abs(sol->mass - m0) <= cfg.statics_tol * m0))
                throw std::logic_error("steady_convergence: static profile mass differs from the run's mass");
        }
        r.table.rows.push_back({st.time, lp_distance(st.rho, sol->rho_s, gamma), l1_norm(st.mom)});
    };
    const RunResult run = run_scenario(s, ro);
    note_run(r, run);

    const auto& first = r.table.rows.front();
    const auto& last = r.table.rows.back();
    r.pass = judge_steady(first[1], last[1], first[2], last[2], cfg.decay_factor, cfg.q_tol, cfg.noise);
    r.measurements = {{"c", sol->c},
                      {"static_mass", sol->mass},
                      {"initial_mass", run.mass0},
                      {"e_rho0", first[1]},
                      {"e_rho_end", last[1]},
                      {"e_rho_ratio", first[1] > 0.0 ? json(last[1] / first[1]) : json(nullptr)},
                      {"momentum_scale", first[2]},
                      {"e_q_end", last[2]},
                      {"e_q_relative", first[2] > 0.0 ? json(last[2] / first[2]) : json(nullptr)},
                      {"level_sets_connected", levels.connected_all},
                      {"support_connected", sol->support_connected}};
    finish(r, opt, t0);
    return r;
}

ProbeReport run_probe(const std::string& name, const Scenario& s, const ProbeOptions& opt) {
    if (name == "dissipativity") return probe_dissipativity(s, opt);
    if (name == "periodic") return probe_periodic(s, opt);
    if (name == "shift_compactness") return probe_shift_compactness(s, opt);
    if (name == "steady_convergence") return probe_steady_convergence(s, opt);
    throw ConfigError("unknown probe '" + name + "'");
}

}  // namespace baro::harness
