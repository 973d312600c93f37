#include <CLI11.hpp>

#include "sairs/io/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Multi-group SAIRS epidemic model toolkit"};
    app.require_subcommand(1);

    sairs::cli::CommandRequest request;
    double fixed_step = 0.0;
    double seed_fraction = 0.0;
    std::string gamma_variant;

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config = cmd->add_option("--config", request.config,
                                       "path to a scenario JSON config, or inline JSON");
        if (needs_config) config->required();
        cmd->add_option("--out", request.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--format", request.format, "output format for tables: csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--fixed-step", fixed_step,
                        "fixed integrator step (disables adaptive error control)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--gamma-variant", gamma_variant,
                        "override gamma: 'paper' (0.02) or 'calibrated' (0.04)")
            ->check(CLI::IsMember({"paper", "calibrated"}));
        cmd->add_option("--seed-fraction", seed_fraction,
                        "initial asymptomatic fraction in the seed community")
            ->check(CLI::PositiveNumber);
    };

    struct SubcommandSpec {
        const char* name;
        const char* help;
        sairs::cli::Command command;
        bool needs_config;
    };
    const SubcommandSpec specs[] = {
        {"simulate", "run a scenario; writes trajectory.csv and events.json",
         sairs::cli::Command::Simulate, true},
        {"r0", "basic reproduction number with topology bounds", sairs::cli::Command::R0, true},
        {"equilibrium", "disease-free or endemic equilibrium report",
         sairs::cli::Command::Equilibrium, true},
        {"stability", "stability classification and condition reports",
         sairs::cli::Command::Stability, true},
        {"metrics", "per-community start/peak tables", sairs::cli::Command::Metrics, true},
        {"reproduce", "run the four bundled network scenarios under both gamma variants",
         sairs::cli::Command::Reproduce, false},
        {"validate", "parse and lint a scenario config", sairs::cli::Command::Validate, true},
    };
    for (const SubcommandSpec& spec : specs) {
        CLI::App* cmd = app.add_subcommand(spec.name, spec.help);
        add_common(cmd, spec.needs_config);
        cmd->callback([&request, command = spec.command] { request.command = command; });
    }

    CLI11_PARSE(app, argc, argv);

    const CLI::App* active = app.get_subcommands().front();
    if (active->count("--fixed-step") > 0) request.fixed_step = fixed_step;
    if (active->count("--seed-fraction") > 0) request.seed_fraction = seed_fraction;
    if (active->count("--gamma-variant") > 0) request.gamma_variant = gamma_variant;

    return sairs::cli::run_command(request);
}
