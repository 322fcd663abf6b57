// baro: command-line front end.
//   baro run <scenario.json>
//   baro static <config.json>
//   baro probe <name> <scenario.json>
//   baro validate <scenario.json>
//   baro laws check <law.csv> --a A --b B --gamma G
// Exit codes: 0 success or pass, 1 probe/check failure or solver error, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "baro/errors.hpp"
#include "baro/harness/probes.hpp"
#include "baro/harness/run.hpp"
#include "baro/harness/scenario.hpp"
#include "baro/statics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace baro;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

fs::path out_dir(const std::string& flag, const fs::path& fallback) { return flag.empty() ? fallback : fs::path(flag); }

int cmd_run(const std::string& path, const std::string& out) {
    const harness::Scenario s = harness::load_scenario(path);
    harness::RunOptions opt;
    opt.out_dir = out_dir(out, s.output);
    const harness::RunResult r = harness::run_scenario(s, opt);
    const auto& last = r.samples.back();
    std::cout << s.id << ": t = " << last.energy.time << ", E = " << last.energy.total << ", mass drift = "
              << r.max_mass_drift << ", clamps = " << r.stats.clamp_events << ", steps = " << r.stats.steps
              << ", wall = " << r.wall_s << " s\n"
              << "outputs in " << opt.out_dir->string() << "\n";
    return kOk;
}

// {"version": 1, "grid": {...}, "potential": {profile}, "mass": m, "a": a, "gamma": g, "tol": t, "levels": n}
int cmd_static(const std::string& path, const std::string& out) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    // Reuse the scenario parser for the grid and profile blocks; the viscosity is unused.
    json sc{{"version", doc.value("version", 0)},
            {"grid", doc.at("grid")},
            {"initial", {{"kind", "uniform"}}},
            {"fluid", {{"mu", 1.0}, {"law", {{"kind", "isentropic"}, {"a", doc.value("a", 1.0)}, {"gamma", doc.value("gamma", 2.0)}}}}},
            {"forcing", {{"kind", "gradient"}, {"potential", doc.at("potential")}}},
            {"t_end", 1.0},
            {"sample_every", 1.0}};
    const harness::Scenario s = harness::scenario_from_json(sc, fs::path(path).parent_path());
    const Grid g = harness::build_grid(s.grid);
    const ScalarField F = harness::build_profile(s.forcing.profile, g);
    if (!doc.contains("mass") || !doc.at("mass").is_number()) throw ConfigError("static: missing numeric 'mass'");
    const double m = doc.at("mass").get<double>();
    const int levels = doc.value("levels", 64);
    const StaticSolution sol = solve_static(F, m, s.law.a, s.law.gamma, doc.value("tol", 1e-12), levels);
    const LevelSetReport ls = check_level_sets(F, levels);

    const fs::path dir = out_dir(out, "out/static");
    fs::create_directories(dir);
    harness::Table t;
    t.columns = g.dim == 1 ? std::vector<std::string>{"x", "F", "rho_s"} : std::vector<std::string>{"x", "y", "F", "rho_s"};
    for_each_cell(g, [&](int i, int j) {
        if (g.dim == 1) t.rows.push_back({g.center(0, i), F(i, j), sol.rho_s(i, j)});
        else t.rows.push_back({g.center(0, i), g.center(1, j), F(i, j), sol.rho_s(i, j)});
    });
    harness::write_table(dir / "static_profile.csv", t);
    json report{{"c", sol.c},
                {"mass", sol.mass},
                {"mass_error", sol.mass_error},
                {"iterations", sol.iterations},
                {"support_connected", sol.support_connected},
                {"level_sets_connected", ls.connected_all},
                {"tool_version", harness::kToolVersion}};
    std::ofstream(dir / "static.json") << report.dump(2) << '\n';
    std::cout << "c = " << harness::format_double(sol.c) << ", mass error = " << sol.mass_error
              << (ls.connected_all ? "" : " (warning: disconnected level sets)") << "\n";
    return kOk;
}

int cmd_probe(const std::string& name, const std::string& path, const std::string& out) {
    const harness::Scenario s = harness::load_scenario(path);
    harness::ProbeOptions opt;
    opt.out_dir = out_dir(out, s.output);
    const harness::ProbeReport r = harness::run_probe(name, s, opt);
    std::cout << to_json(r).dump(2) << "\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return r.pass ? kOk : kFail;
}

int cmd_validate(const std::string& path) {
    const harness::Scenario s = harness::load_scenario(path);
    const Grid g = harness::build_grid(s.grid);
    const FluidParams params = harness::build_fluid(s);
    const Forcing f = harness::build_forcing(s.forcing, g);
    const ValidationReport v = validate_initial_data(harness::build_initial(s, g, f), s.scheme.vacuum_floor);
    if (!v.ok()) {
        std::cerr << v.describe();
        return kConfig;
    }
    std::cout << s.id << ": valid (" << g.interior_count() << " cells, mass " << v.mass << ")\n";
    return kOk;
}

int cmd_laws_check(const std::string& path, double a, double b, double gamma, double rho_min, double rho_max,
                   int samples, bool monotone) {
    const PressureLaw law = load_tabulated_law(path, monotone);
    const GrowthBoundReport r = check_growth_bounds(law, a, b, gamma, rho_min, rho_max, samples);
    std::cout << (r.pass ? "pass" : "fail") << ": worst margin " << r.worst_margin << " at rho = " << r.worst_rho
              << " over [" << r.rho_min << ", " << r.rho_max << "]\n";
    return r.pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barotropic Navier-Stokes solver, statics and long-time probes"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("--out", out, "output directory (defaults to the scenario's 'output')");

    std::string path;
    std::string probe;
    auto* run = app.add_subcommand("run", "run a scenario and write its time series");
    run->add_option("scenario", path)->required();
    auto* stat = app.add_subcommand("static", "solve the static problem for a potential");
    stat->add_option("config", path)->required();
    auto* pr = app.add_subcommand("probe", "run a long-time probe");
    pr->add_option("name", probe)->required()->check(CLI::IsMember(harness::probe_names()));
    pr->add_option("scenario", path)->required();
    auto* val = app.add_subcommand("validate", "check a scenario and its initial data");
    val->add_option("scenario", path)->required();
    auto* laws = app.add_subcommand("laws", "pressure law utilities");
    laws->require_subcommand(1);
    auto* check = laws->add_subcommand("check", "sample the growth bounds of a tabulated law");
    double a = 1.0, b = 0.0, gamma = 2.0, rho_min = 1e-3, rho_max = 1e3;
    int samples = 2000;
    bool non_monotone = false;
    check->add_option("law", path, "two-column CSV: rho,p")->required();
    check->add_option("--a", a)->required();
    check->add_option("--b", b)->required();
    check->add_option("--gamma", gamma)->required();
    check->add_option("--rho-min", rho_min);
    check->add_option("--rho-max", rho_max);
    check->add_option("--samples", samples);
    check->add_flag("--non-monotone", non_monotone, "use three-point slopes instead of monotone interpolation");
    for (auto* sub : {run, stat, pr, val}) sub->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*run) return cmd_run(path, out);
        if (*stat) return cmd_static(path, out);
        if (*pr) return cmd_probe(probe, path, out);
        if (*val) return cmd_validate(path);
        if (*check) return cmd_laws_check(path, a, b, gamma, rho_min, rho_max, samples, !non_monotone);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kFail;
    }
    return kConfig;
}
