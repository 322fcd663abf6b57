#pragma once

// Long-time behaviour probes. Each probe writes <out>/<probe>_measurements.csv
// and <out>/<probe>_report.json; the pass flag is a pure function of the
// measurement table and the thresholds recorded in the report (see recheck()).

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baro/harness/run.hpp"
#include "baro/harness/scenario.hpp"
#include "json.hpp"

namespace baro::harness {

struct ProbeReport {
    std::string probe;
    bool pass = false;
    nlohmann::json measurements = nlohmann::json::object();
    nlohmann::json thresholds = nlohmann::json::object();
    double runtime_s = 0.0;
    std::vector<std::string> warnings;
    std::string method;  // what the probe measures, in one sentence
    Table table;         // persisted measurement table
    long clamps = 0;     // summed over the probe's runs
    double max_mass_drift = 0.0;
};

nlohmann::json to_json(const ProbeReport& r);

struct ProbeOptions {
    std::optional<std::filesystem::path> out_dir;
};

const std::vector<std::string>& probe_names();

// Runs the base scenario with its velocity scaled so E(0) = scale * E_base(0)
// for each configured scale, then checks band entry against the empirical
// bound (1 + margin) * (long-time max of the first run).
ProbeReport probe_dissipativity(const Scenario& s, const ProbeOptions& opt = {});
// delta_k = ||rho(t0 + k w) - rho(t0 + (k+1) w)||_1 after the transient t0.
ProbeReport probe_periodic(const Scenario& s, const ProbeOptions& opt = {});
// Delta_n = int_0^window ||rho(t_n + t) - rho(t_{n+1} + t)||_gamma^gamma dt.
ProbeReport probe_shift_compactness(const Scenario& s, const ProbeOptions& opt = {});
// e_rho(t) = ||rho(t) - rho_s||_gamma with rho_s at the run's own mass, e_q(t) = ||q(t)||_1.
ProbeReport probe_steady_convergence(const Scenario& s, const ProbeOptions& opt = {});

// Dispatches by name; throws ConfigError for unknown probes.
ProbeReport run_probe(const std::string& name, const Scenario& s, const ProbeOptions& opt = {});

// Pure pass criteria.
struct DissipativityVerdict {
    double band = 0.0;
    std::vector<std::optional<double>> entry_times;
    std::vector<bool> stayed;  // never left the band after entering
    bool ordered = false;      // entry times non-decreasing in run order
    bool pass = false;
};
// series[r] holds (t, E) samples of run r; run 0 defines the band.
DissipativityVerdict judge_dissipativity(const std::vector<std::vector<std::pair<double, double>>>& series,
                                         double margin, double long_time_fraction);

// values[k + 1] <= (1 + slack) values[k] + floor for all k.
bool non_increasing_within(std::span<const double> values, double slack, double floor);

bool judge_periodic(std::span<const double> delta, double rho_l1_final, double rel_tol, double slack, double noise);
bool judge_shift(std::span<const double> delta, double slack, double final_fraction);
bool judge_steady(double e_rho0, double e_rho_end, double e_q0, double e_q_end, double decay_factor, double q_tol,
                  double noise);

// Recomputes the pass flag of a persisted probe from its measurement table and thresholds.
bool recheck(const std::string& probe, const Table& measurements, const nlohmann::json& thresholds);

}  // namespace baro::harness
