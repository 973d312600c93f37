#pragma once

#include <string>

#include <json.hpp>

#include "sairs/equilibria.hpp"
#include "sairs/metrics.hpp"
#include "sairs/reproduction.hpp"
#include "sairs/simulate.hpp"
#include "sairs/stability.hpp"
#include "sairs/topology.hpp"

namespace sairs {

using Json = nlohmann::ordered_json;

// Topologies serialize as 1-based edge lists: {"n": 9, "edges": [[1,2], ...]}.
Json topology_to_json(const NetworkTopology& topo);
NetworkTopology topology_from_json(const Json& j);

Json scenario_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const Json& j);

// Throws SairsError(ConfigError) with field-level messages; Table-defaults
// are applied for everything absent.
ScenarioConfig parse_config(const std::string& text);

Json equilibrium_to_json(const EquilibriumReport& report);
Json r0_report_to_json(double r0_value, const R0Bounds& bounds, double rho_a);
Json stability_to_json(const StabilityVerdict& verdict);
Json events_to_json(const EventLog& events);
Json summaries_to_json(const std::vector<CommunitySummary>& summaries);

// Trajectory CSV: header t,S_1,A_1,I_1,R_1,...,R_n with R derived, LF endings.
std::string trajectory_to_csv(const Trajectory& traj);
std::string totals_to_csv(const TotalsSeries& series);

}  // namespace sairs
