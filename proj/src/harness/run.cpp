#include "baro/harness/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "baro/errors.hpp"

namespace baro::harness {

using nlohmann::json;

namespace {

class Recorder : public Observer {
public:
    Recorder(const Scenario& s, const FluidParams& params, const Forcing& forcing, const Grid& g,
             const RunOptions& opt, std::ofstream* snapshots)
        : s_(s), params_(params), forcing_(forcing), force_(g), opt_(opt), snapshots_(snapshots) {
        probes_ = opt.probe_times;
        std::sort(probes_.begin(), probes_.end());
    }

    std::optional<double> next_time() const override {
        std::optional<double> t;
        auto take = [&](double v) { t = t ? std::min(*t, v) : v; };
        if (!done_samples_) take(sample_time());
        if (s_.snapshot_every && snap_k_ * *s_.snapshot_every <= s_.t_end) take(snap_k_ * *s_.snapshot_every);
        if (probe_k_ < probes_.size()) take(probes_[probe_k_]);
        return t;
    }

    void observe(const State& st, const SolverStats& stats) override {
        const double t = st.time;
        if (!done_samples_ && sample_time() <= t) {
            forcing_.evaluate(t, force_);
            Sample row;
            row.energy = energy_record(st, params_.law, params_.visc, force_, s_.scheme.vacuum_floor);
            row.mass = total_mass(st);
            row.clamps = stats.clamp_events;
            samples.push_back(row);
            if (sample_time() >= s_.t_end) done_samples_ = true;
            ++sample_k_;
        }
        if (s_.snapshot_every && snap_k_ * *s_.snapshot_every <= t) {
            if (snapshots_) *snapshots_ << snapshot_json(st).dump() << '\n';
            ++snap_k_;
        }
        while (probe_k_ < probes_.size() && probes_[probe_k_] <= t) {
            if (opt_.on_probe) opt_.on_probe(st);
            ++probe_k_;
        }
    }

    std::vector<Sample> samples;

private:
    double sample_time() const { return std::min(static_cast<double>(sample_k_) * s_.sample_every, s_.t_end); }

    const Scenario& s_;
    const FluidParams& params_;
    const Forcing& forcing_;
    VectorField force_;
    const RunOptions& opt_;
    std::ofstream* snapshots_;
    std::vector<double> probes_;
    long sample_k_ = 0;
    long snap_k_ = 0;
    std::size_t probe_k_ = 0;
    bool done_samples_ = false;
};

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + p.string());
    return out;
}

}  // namespace

std::vector<VectorField> weak_test_family(const Grid& g) {
    std::vector<VectorField> family;
    const int lmax = g.dim > 1 ? kWeakModes : 1;
    for (int c = 0; c < g.dim; ++c)
        for (int l = 1; l <= lmax; ++l)
            for (int k = 1; k <= kWeakModes; ++k) {
                VectorField phi(g);
                for_each_cell(g, [&](int i, int j) {
                    double v = std::sin(k * std::numbers::pi * g.center(0, i) / g.extents[0]);
                    if (g.dim > 1) v *= std::sin(l * std::numbers::pi * g.center(1, j) / g.extents[1]);
                    phi[c](i, j) = v;
                });
                family.push_back(std::move(phi));
            }
    return family;
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string timeseries_row(const Sample& s) {
    const auto& e = s.energy;
    std::string row;
    for (double v : {e.time, e.kinetic, e.potential, e.total, e.dissipation, e.power, s.mass}) {
        row += format_double(v);
        row += ',';
    }
    row += std::to_string(s.clamps);
    return row;
}

json snapshot_json(const State& s) {
    const Grid& g = s.rho.grid();
    std::vector<double> rho;
    std::vector<std::vector<double>> mom(static_cast<std::size_t>(g.dim));
    for_each_cell(g, [&](int i, int j) {
        rho.push_back(s.rho(i, j));
        for (int k = 0; k < g.dim; ++k) mom[static_cast<std::size_t>(k)].push_back(s.mom[k](i, j));
    });
    const auto d = static_cast<std::ptrdiff_t>(g.dim);
    return json{{"t", s.time},
                {"rho", rho},
                {"mom", mom},
                {"grid",
                 {{"dim", g.dim},
                  {"extents", std::vector<double>(g.extents.begin(), g.extents.begin() + d)},
                  {"cells", std::vector<int>(g.cells.begin(), g.cells.begin() + d)}}}};
}

RunResult run_scenario(const Scenario& s, const RunOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    s.validate();
    const Grid g = build_grid(s.grid);
    const FluidParams params = build_fluid(s);
    const Forcing forcing = build_forcing(s.forcing, g);
    const InitialData data = opt.initial ? *opt.initial : build_initial(s, g, forcing);
    const ValidationReport v = validate_initial_data(data, s.scheme.vacuum_floor);
    if (!v.ok()) throw ConfigError("scenario " + s.id + ": invalid initial data\n" + v.describe());

    std::ofstream snapshots;
    if (opt.out_dir) {
        std::filesystem::create_directories(*opt.out_dir);
        if (s.snapshot_every) snapshots = open_out(*opt.out_dir / "snapshots.jsonl");
    }

    Recorder rec(s, params, forcing, g, opt, snapshots.is_open() ? &snapshots : nullptr);
    RunResult r;
    r.id = s.id;
    try {
        r.final_state = simulate(*v.state, params, forcing, s.scheme, s.t_end, &rec, &r.stats);
    } catch (const SolverError& e) {
        throw SolverError("scenario " + s.id + ": " + e.what(), e.cell(), e.subterm(), e.time());
    }
    r.samples = std::move(rec.samples);
    r.mass0 = v.mass;
    for (const auto& row : r.samples) r.max_mass_drift = std::max(r.max_mass_drift, std::abs(row.mass - r.mass0) / r.mass0);
    r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (opt.out_dir) {
        auto ts = open_out(*opt.out_dir / "timeseries.csv");
        ts << kTimeseriesHeader << '\n';
        for (const auto& row : r.samples) ts << timeseries_row(row) << '\n';
        const Sample& last = r.samples.back();
        json pairings = json::array();
        for (const auto& phi : weak_test_family(g)) pairings.push_back(weak_pairing(r.final_state.mom, v.state->mom, phi));
        json summary{{"id", s.id},
                     {"final_E", last.energy.total},
                     {"final_mass", last.mass},
                     {"initial_mass", r.mass0},
                     {"max_mass_drift", r.max_mass_drift},
                     {"clamps", r.stats.clamp_events},
                     {"steps", r.stats.steps},
                     {"wall_s", r.wall_s},
                     {"tool_version", kToolVersion},
                     {"weak_pairings",
                      {{"family", {{"version", kWeakFamilyVersion}, {"kind", "sin"}, {"modes_per_axis", kWeakModes}}},
                       {"momentum_final_minus_initial", pairings}}},
                     {"scenario", to_json(s)}};
        open_out(*opt.out_dir / "summary.json") << summary.dump(2) << '\n';
    }
    return r;
}

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ConfigError("table has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

Table read_table(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    if (!in) throw ConfigError("cannot open " + csv.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(csv.string() + ": empty file");
    std::stringstream hs(line);
    for (std::string c; std::getline(hs, c, ',');) t.columns.push_back(c);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) {
            double v = 0.0;
            const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
            if (r.ec != std::errc() || r.ptr != c.data() + c.size())
                throw ConfigError(csv.string() + ": non-numeric entry '" + c + "'");
            row.push_back(v);
        }
        if (row.size() != t.columns.size()) throw ConfigError(csv.string() + ": ragged row");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_table(const std::filesystem::path& csv, const Table& t) {
    auto out = open_out(csv);
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
}

std::vector<Sample> read_timeseries(const std::filesystem::path& csv) {
    const Table t = read_table(csv);
    std::string header;
    for (std::size_t k = 0; k < t.columns.size(); ++k) header += (k ? "," : "") + t.columns[k];
    if (header != kTimeseriesHeader) throw ConfigError(csv.string() + ": unexpected header");
    std::vector<Sample> out;
    for (const auto& r : t.rows) {
        Sample s;
        s.energy = EnergyRecord{r[0], r[1], r[2], r[3], r[4], r[5]};
        s.mass = r[6];
        s.clamps = static_cast<long>(r[7]);
        out.push_back(s);
    }
    return out;
}

}  // namespace baro::harness
