#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sairs/model.hpp"
#include "sairs/numerics.hpp"
#include "sairs/topology.hpp"
#include "sairs/types.hpp"

namespace sairs {

// Scenario: a community network, transmission/epidemic rates, and a single
// seeded group with asymptomatic fraction seed_fraction (everyone else
// susceptible). mu and nu hold either one value (uniform) or n values.
struct ScenarioConfig {
    TopologyKind kind = TopologyKind::Ring;
    int n = 9;
    std::vector<std::pair<int, int>> edges;  // used when kind == Custom

    double beta_a_intra = 0.8;
    double beta_a_inter = 0.4;
    double beta_i_intra = 0.95;
    double beta_i_inter = 0.475;
    std::optional<Matrix> beta_a_matrix;  // overrides the intra/inter construction
    std::optional<Matrix> beta_i_matrix;

    double alpha = 0.8;
    double gamma = 0.02;
    double delta_a = 0.1;
    double delta_i = 0.51;
    Vector mu = Vector::Constant(1, 1.0 / 25550.0);
    Vector nu = Vector::Constant(1, 0.01);

    int seed_group = 1;  // 1-based
    double seed_fraction = 0.01;
    double t_end = 100.0;
    IntegratorOptions integrator{1e-8, 1e-10, std::numeric_limits<double>::infinity(),
                                 std::nullopt, 0.005};
    double event_threshold = 1e-5;

    NetworkTopology build_topology() const;
    ModelParams build_params() const;
    StateVector initial_state() const;
    void validate() const;
};

// First time each group's A / I exceeds the threshold; empty if never.
struct EventLog {
    double threshold = 0.0;
    std::vector<std::optional<double>> a_first;
    std::vector<std::optional<double>> i_first;
};

// Integrates the reduced system over [0, t_end] with feasible-region clamping
// on accepted states, then scans for threshold crossings.
std::pair<Trajectory, EventLog> run_scenario(const ScenarioConfig& config);

// First up-crossing per group per compartment kind, refined to 1e-6 time
// accuracy by bisection on the cubic interpolant between samples. The
// trajectory is interpreted as Reduced3N states.
EventLog detect_threshold_crossings(const Trajectory& traj, double threshold);

// min over t >= burn_in and over all groups of min(S_i, A_i, I_i).
double persistence_margin(const Trajectory& traj, double burn_in);

}  // namespace sairs
