#pragma once

#include <optional>
#include <string>

namespace sairs::cli {

enum class Command { Simulate, R0, Equilibrium, Stability, Metrics, Reproduce, Validate };

struct CommandRequest {
    Command command = Command::Validate;
    // Path to a JSON config, or inline JSON when the string starts with '{'.
    // Required for every command except reproduce.
    std::string config;
    std::string out_dir = ".";
    std::string format = "csv";  // "csv" | "json" for tabular outputs
    std::optional<double> fixed_step;
    std::optional<std::string> gamma_variant;  // "paper" (0.02) | "calibrated" (0.04)
    std::optional<double> seed_fraction;
};

// Dispatches the command and writes its artifacts under out_dir. Returns the
// process exit status; failures print one machine-readable JSON error line to
// stderr.
int run_command(const CommandRequest& request);

}  // namespace sairs::cli
