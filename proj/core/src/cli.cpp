#include "sairs/io/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sairs/io/json_io.hpp"
#include "sairs/io/reference_values.hpp"
#include "sairs/metrics.hpp"
#include "sairs/reproduction.hpp"
#include "sairs/stability.hpp"

namespace sairs::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SairsError(Errc::IoError, "cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SairsError(Errc::IoError, "cannot write '" + path.string() + "'");
    out << content;
}

ScenarioConfig load_config(const CommandRequest& request) {
    if (request.config.empty()) {
        throw SairsError(Errc::ConfigError, "this command requires --config");
    }
    const bool inline_json = request.config.find('{') == 0;
    ScenarioConfig config = parse_config(inline_json ? request.config : read_file(request.config));
    if (request.gamma_variant) {
        if (*request.gamma_variant == "paper") {
            config.gamma = kGammaAsPrinted;
        } else if (*request.gamma_variant == "calibrated") {
            config.gamma = kGammaCalibrated;
        } else {
            throw SairsError(Errc::ConfigError, "--gamma-variant must be 'paper' or 'calibrated'");
        }
    }
    if (request.seed_fraction) config.seed_fraction = *request.seed_fraction;
    if (request.fixed_step) config.integrator.fixed_step = *request.fixed_step;
    config.validate();
    return config;
}

Json r0_report(const ScenarioConfig& config) {
    const ModelParams params = config.build_params();
    const NetworkTopology topo = config.build_topology();
    const NextGenDecomposition decomp = next_gen_decomposition(params);
    const R0Bounds bounds = r0_bounds(params, topo);
    Json report = r0_report_to_json(decomp.r0, bounds, bounds.rho_abar - 1.0);
    report["gamma"] = config.gamma;
    report["topology"] = topology_kind_name(config.kind);
    return report;
}

int command_simulate(const CommandRequest& request, const ScenarioConfig& config) {
    const auto [traj, events] = run_scenario(config);
    const std::vector<CommunitySummary> summaries = peak_summary(traj, events);

    const fs::path out(request.out_dir);
    write_file(out / "trajectory.csv", trajectory_to_csv(traj));
    Json report;
    report["config"] = scenario_to_json(config);
    report["events"] = events_to_json(events);
    report["peaks"] = summaries_to_json(summaries);
    write_file(out / "events.json", report.dump(2) + "\n");
    std::cout << "wrote " << (out / "trajectory.csv").string() << " and "
              << (out / "events.json").string() << "\n";
    return 0;
}

int command_metrics(const CommandRequest& request, const ScenarioConfig& config) {
    const auto [traj, events] = run_scenario(config);
    std::vector<CommunitySummary> summaries;
    const ModelParams params = config.build_params();
    const double reproduction_number = r0(params);
    if (reproduction_number > 1.0) {
        summaries = peak_summary(traj, events, solve_endemic(params));
    } else {
        summaries = peak_summary(traj, events);
    }

    const fs::path out(request.out_dir);
    if (request.format == "json") {
        write_file(out / "metrics.json", summaries_to_json(summaries).dump(2) + "\n");
        std::cout << "wrote " << (out / "metrics.json").string() << "\n";
    } else {
        write_file(out / "tables.csv",
                   table_report(summaries, CompartmentKind::Symptomatic, TableFormat::Csv));
        write_file(out / "tables_asymptomatic.csv",
                   table_report(summaries, CompartmentKind::Asymptomatic, TableFormat::Csv));
        std::cout << table_report(summaries, CompartmentKind::Symptomatic, TableFormat::Text);
        std::cout << table_report(summaries, CompartmentKind::Asymptomatic, TableFormat::Text);
        std::cout << "wrote " << (out / "tables.csv").string() << " and "
                  << (out / "tables_asymptomatic.csv").string() << "\n";
    }
    return 0;
}

ScenarioConfig reproduction_scenario(TopologyKind kind, double gamma, double seed_fraction,
                                     std::optional<double> fixed_step) {
    ScenarioConfig config;  // bundled-reference defaults
    config.kind = kind;
    config.n = 9;
    config.gamma = gamma;
    config.seed_fraction = seed_fraction;
    config.t_end = 80.0;
    config.integrator.rtol = 1e-10;
    config.integrator.atol = 1e-12;
    config.integrator.sample_interval = 0.005;
    // fixed-step override keeps reruns bit-identical
    config.integrator.fixed_step = fixed_step.value_or(0.005);
    return config;
}

int command_reproduce(const CommandRequest& request) {
    const double seed_fraction = request.seed_fraction.value_or(kSeedFractionCalibrated);
    const fs::path out(request.out_dir);
    Json report;
    report["seed_fraction"] = seed_fraction;
    report["note"] =
        "headline reference r0 values match gamma = 0.04, not the published parameter-table "
        "gamma = 0.02; both parameterizations are emitted. Start/peak times depend on the "
        "unpublished initial seed and are reported as deltas only.";
    Json scenarios = Json::array();

    for (const TopologyReference& ref : topology_references()) {
        for (const double gamma : {kGammaAsPrinted, kGammaCalibrated}) {
            const ScenarioConfig config =
                reproduction_scenario(ref.kind, gamma, seed_fraction, request.fixed_step);
            char dir_name[64];
            std::snprintf(dir_name, sizeof dir_name, "%s_gamma_%.2f", ref.name, gamma);
            const fs::path scenario_dir = out / dir_name;

            const Json r0_json = r0_report(config);
            write_file(scenario_dir / "r0.json", r0_json.dump(2) + "\n");

            const auto [traj, events] = run_scenario(config);
            const std::vector<CommunitySummary> summaries = peak_summary(traj, events);
            write_file(scenario_dir / "trajectory.csv", trajectory_to_csv(traj));
            write_file(scenario_dir / "tables.csv",
                       table_report(summaries, CompartmentKind::Symptomatic, TableFormat::Csv));
            write_file(scenario_dir / "tables_asymptomatic.csv",
                       table_report(summaries, CompartmentKind::Asymptomatic, TableFormat::Csv));
            write_file(scenario_dir / "totals.csv", totals_to_csv(totals(traj)));

            Json entry;
            entry["directory"] = dir_name;
            entry["topology"] = ref.name;
            entry["gamma"] = gamma;
            entry["r0"] = r0_json["r0"];
            entry["r0_reference"] = ref.r0_headline;
            entry["r0_delta"] = r0_json["r0"].get<double>() - ref.r0_headline;
            entry["rho_abar"] = r0_json["rho_abar"];
            entry["rho_abar_reference"] = ref.rho_abar;
            Json peaks = Json::array();
            for (int g = 0; g < 9; ++g) {
                peaks.push_back(Json{
                    {"community", g + 1},
                    {"i_peak_magnitude", summaries[g].i_peak.magnitude},
                    {"i_peak_magnitude_reference", ref.i_rows[g].peak_magnitude},
                    {"i_peak_magnitude_delta",
                     summaries[g].i_peak.magnitude - ref.i_rows[g].peak_magnitude},
                    {"i_peak_time", summaries[g].i_peak.time},
                    {"i_peak_time_reference", ref.i_rows[g].peak_time},
                    {"i_start_time", summaries[g].i_start ? Json(*summaries[g].i_start) : Json(nullptr)},
                    {"i_start_time_reference", ref.i_rows[g].start_time},
                });
            }
            entry["peak_comparison"] = std::move(peaks);
            scenarios.push_back(std::move(entry));

            std::cout << dir_name << ": r0 = " << r0_json["r0"].get<double>()
                      << " (reference " << ref.r0_headline << ", delta "
                      << r0_json["r0"].get<double>() - ref.r0_headline << ")\n";
        }
    }
    report["scenarios"] = std::move(scenarios);
    write_file(out / "reproduce_report.json", report.dump(2) + "\n");
    std::cout << "wrote " << (out / "reproduce_report.json").string() << "\n";
    return 0;
}

}  // namespace

int run_command(const CommandRequest& request) {
    try {
        switch (request.command) {
            case Command::Reproduce:
                return command_reproduce(request);
            case Command::Validate: {
                load_config(request);
                std::cout << "config OK\n";
                return 0;
            }
            case Command::Simulate:
                return command_simulate(request, load_config(request));
            case Command::R0: {
                const ScenarioConfig config = load_config(request);
                const Json report = r0_report(config);
                write_file(fs::path(request.out_dir) / "r0.json", report.dump(2) + "\n");
                std::cout << report.dump(2) << "\n";
                return 0;
            }
            case Command::Equilibrium: {
                const ScenarioConfig config = load_config(request);
                const ModelParams params = config.build_params();
                const double reproduction_number = r0(params);
                const EquilibriumReport report =
                    reproduction_number > 1.0 ? solve_endemic(params) : dfe(params);
                const Json j = equilibrium_to_json(report);
                write_file(fs::path(request.out_dir) / "equilibrium.json", j.dump(2) + "\n");
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            case Command::Stability: {
                const ScenarioConfig config = load_config(request);
                const StabilityVerdict verdict = classify(config.build_params());
                const Json j = stability_to_json(verdict);
                write_file(fs::path(request.out_dir) / "stability.json", j.dump(2) + "\n");
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            case Command::Metrics:
                return command_metrics(request, load_config(request));
        }
        return 1;
    } catch (const SairsError& err) {
        const Json error = {{"error", {{"code", errc_name(err.code())}, {"message", err.what()}}}};
        std::cerr << error.dump() << "\n";
        return 2;
    } catch (const std::exception& err) {
        const Json error = {{"error", {{"code", "INTERNAL"}, {"message", err.what()}}}};
        std::cerr << error.dump() << "\n";
        return 3;
    }
}

}  // namespace sairs::cli
