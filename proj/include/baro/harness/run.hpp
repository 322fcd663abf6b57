#pragma once

// Executes scenarios and persists their outputs:
//   <dir>/timeseries.csv   t,kinetic,potential,E,dissipation,power,mass,clamps
//   <dir>/snapshots.jsonl  {"t", "rho", "mom", "grid"} per line, interior cells, axis 0 fastest
//   <dir>/summary.json
// Doubles are written in shortest round-trip form.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baro/diagnostics.hpp"
#include "baro/harness/scenario.hpp"

namespace baro::harness {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kTimeseriesHeader = "t,kinetic,potential,E,dissipation,power,mass,clamps";

// Fixed test functions for weak pairings: sin(k pi x/Lx) [sin(l pi y/Ly)] e_c,
// k, l = 1..kWeakModes, ordered by component, then l, then k.
inline constexpr int kWeakFamilyVersion = 1;
inline constexpr int kWeakModes = 4;
std::vector<VectorField> weak_test_family(const Grid& g);

struct Sample {
    EnergyRecord energy;
    double mass = 0.0;
    long clamps = 0;
};

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  // nothing is written when empty
    std::optional<InitialData> initial;            // replaces the scenario's initial data
    // Extra observation times (any order) and the callback receiving the state there.
    std::vector<double> probe_times;
    std::function<void(const State&)> on_probe;
};

struct RunResult {
    std::string id;
    std::vector<Sample> samples;
    State final_state;
    SolverStats stats;
    double mass0 = 0.0;
    double max_mass_drift = 0.0;  // max |m(t) - m(0)| / m(0) over samples
    double wall_s = 0.0;
};

// Samples at k * sample_every and at t_end. Solver errors are rethrown with the scenario id.
RunResult run_scenario(const Scenario& s, const RunOptions& options = {});

std::string format_double(double v);
std::string timeseries_row(const Sample& s);
std::vector<Sample> read_timeseries(const std::filesystem::path& csv);
nlohmann::json snapshot_json(const State& s);

// Numeric CSV with a header line.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::size_t column(const std::string& name) const;  // throws ConfigError when absent
};
Table read_table(const std::filesystem::path& csv);
void write_table(const std::filesystem::path& csv, const Table& t);

}  // namespace baro::harness
