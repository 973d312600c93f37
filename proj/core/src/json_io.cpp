#include "sairs/io/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace sairs {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& problem) {
    throw SairsError(Errc::ConfigError, "config field '" + field + "': " + problem);
}

double require_nonnegative(const Json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number()) config_error(field, "must be a number");
    const double value = j.at(field).get<double>();
    if (!(value >= 0.0) || !std::isfinite(value)) config_error(field, "must be >= 0");
    return value;
}

Vector rate_vector(const Json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return Vector::Constant(1, fallback);
    const Json& node = j.at(field);
    if (node.is_number()) {
        const double value = node.get<double>();
        if (!std::isfinite(value) || value < 0.0) config_error(field, "must be >= 0");
        return Vector::Constant(1, value);
    }
    if (!node.is_array() || node.empty()) config_error(field, "must be a number or an array");
    Vector out(node.size());
    for (std::size_t k = 0; k < node.size(); ++k) {
        if (!node[k].is_number()) config_error(field, "entries must be numbers");
        out[static_cast<Eigen::Index>(k)] = node[k].get<double>();
        if (!(out[static_cast<Eigen::Index>(k)] >= 0.0)) config_error(field, "entries must be >= 0");
    }
    return out;
}

Matrix matrix_from_json(const Json& node, const std::string& field) {
    if (!node.is_array() || node.empty()) config_error(field, "must be an array of rows");
    const std::size_t n = node.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!node[i].is_array() || node[i].size() != n) {
            config_error(field, "must be a square row-major matrix");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!node[i][j].is_number()) config_error(field, "entries must be numbers");
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                node[i][j].get<double>();
        }
    }
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
    return out;
}

TopologyKind kind_from_name(const std::string& name) {
    if (name == "star") return TopologyKind::Star;
    if (name == "ring") return TopologyKind::Ring;
    if (name == "line") return TopologyKind::Line;
    if (name == "cycle_tree") return TopologyKind::CycleTree;
    if (name == "custom") return TopologyKind::Custom;
    config_error("topology.kind", "unknown kind '" + name + "'");
}

void reject_unknown_keys(const Json& node, const char* scope,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : node.items()) {
        bool recognized = false;
        for (const char* name : known) recognized = recognized || key == name;
        if (!recognized) {
            config_error(std::string(scope) + key, "unknown field");
        }
    }
}

}  // namespace

Json topology_to_json(const NetworkTopology& topo) {
    Json j;
    j["n"] = topo.n;
    j["kind"] = topology_kind_name(topo.kind);
    Json edges = Json::array();
    for (const auto& [a, b] : topo.edges()) edges.push_back(Json::array({a, b}));
    j["edges"] = std::move(edges);
    return j;
}

NetworkTopology topology_from_json(const Json& j) {
    if (!j.contains("n") || !j.at("n").is_number_integer()) config_error("n", "must be an integer");
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        for (const Json& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) config_error("edges", "entries must be [i, j] pairs");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return topology_from_edges(n, edges);
}

ScenarioConfig scenario_from_json(const Json& j) {
    ScenarioConfig config;
    if (!j.is_object()) throw SairsError(Errc::ConfigError, "config root must be a JSON object");
    reject_unknown_keys(j, "", {"topology", "rates", "initial", "t_end", "event_threshold",
                                "integrator"});

    if (j.contains("topology")) {
        const Json& topo = j.at("topology");
        if (!topo.is_object()) config_error("topology", "must be an object");
        reject_unknown_keys(topo, "topology.", {"kind", "n", "edges"});
        const std::string kind = topo.value("kind", std::string("ring"));
        config.kind = kind_from_name(kind);
        if (topo.contains("n")) {
            if (!topo.at("n").is_number_integer()) config_error("topology.n", "must be an integer");
            config.n = topo.at("n").get<int>();
        } else if (config.kind == TopologyKind::CycleTree) {
            config.n = 9;
        }
        if (config.kind == TopologyKind::Custom) {
            if (!topo.contains("edges")) config_error("topology.edges", "required for custom topologies");
            for (const Json& e : topo.at("edges")) {
                if (!e.is_array() || e.size() != 2) {
                    config_error("topology.edges", "entries must be [i, j] pairs");
                }
                config.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            if (!topo.contains("n")) config.n = 0;  // force an explicit n
            if (config.n < 1) config_error("topology.n", "required for custom topologies");
        }
    }

    if (j.contains("rates")) {
        const Json& rates = j.at("rates");
        if (!rates.is_object()) config_error("rates", "must be an object");
        reject_unknown_keys(rates, "rates.",
                            {"beta_a_intra", "beta_a_inter", "beta_i_intra", "beta_i_inter",
                             "beta_a_matrix", "beta_i_matrix", "alpha", "gamma", "delta_a",
                             "delta_i", "mu", "nu"});
        config.beta_a_intra = require_nonnegative(rates, "beta_a_intra", config.beta_a_intra);
        config.beta_a_inter = require_nonnegative(rates, "beta_a_inter", config.beta_a_inter);
        config.beta_i_intra = require_nonnegative(rates, "beta_i_intra", config.beta_i_intra);
        config.beta_i_inter = require_nonnegative(rates, "beta_i_inter", config.beta_i_inter);
        config.alpha = require_nonnegative(rates, "alpha", config.alpha);
        config.gamma = require_nonnegative(rates, "gamma", config.gamma);
        config.delta_a = require_nonnegative(rates, "delta_a", config.delta_a);
        config.delta_i = require_nonnegative(rates, "delta_i", config.delta_i);
        config.mu = rate_vector(rates, "mu", config.mu[0]);
        config.nu = rate_vector(rates, "nu", config.nu[0]);
        if (rates.contains("beta_a_matrix")) {
            config.beta_a_matrix = matrix_from_json(rates.at("beta_a_matrix"), "rates.beta_a_matrix");
        }
        if (rates.contains("beta_i_matrix")) {
            config.beta_i_matrix = matrix_from_json(rates.at("beta_i_matrix"), "rates.beta_i_matrix");
        }
    }

    if (j.contains("initial")) {
        const Json& initial = j.at("initial");
        if (!initial.is_object()) config_error("initial", "must be an object");
        reject_unknown_keys(initial, "initial.", {"seed_group", "seed_fraction"});
        if (initial.contains("seed_group")) config.seed_group = initial.at("seed_group").get<int>();
        if (initial.contains("seed_fraction")) {
            config.seed_fraction = initial.at("seed_fraction").get<double>();
        }
    }

    if (j.contains("t_end")) {
        if (!j.at("t_end").is_number()) config_error("t_end", "must be a number");
        config.t_end = j.at("t_end").get<double>();
    }
    if (j.contains("event_threshold")) {
        config.event_threshold = j.at("event_threshold").get<double>();
        if (!(config.event_threshold > 0.0)) config_error("event_threshold", "must be > 0");
    }

    if (j.contains("integrator")) {
        const Json& integ = j.at("integrator");
        if (!integ.is_object()) config_error("integrator", "must be an object");
        reject_unknown_keys(integ, "integrator.",
                            {"rtol", "atol", "max_step", "fixed_step", "sample_step"});
        if (integ.contains("rtol")) config.integrator.rtol = integ.at("rtol").get<double>();
        if (integ.contains("atol")) config.integrator.atol = integ.at("atol").get<double>();
        if (integ.contains("max_step")) config.integrator.max_step = integ.at("max_step").get<double>();
        if (integ.contains("fixed_step") && !integ.at("fixed_step").is_null()) {
            config.integrator.fixed_step = integ.at("fixed_step").get<double>();
        }
        if (integ.contains("sample_step")) {
            config.integrator.sample_interval = integ.at("sample_step").get<double>();
        }
        if (!(config.integrator.rtol > 0.0) || !(config.integrator.atol > 0.0)) {
            config_error("integrator", "tolerances must be > 0");
        }
    }

    try {
        config.validate();
    } catch (const SairsError& err) {
        if (err.code() == Errc::ConfigError) throw;
        throw SairsError(err.code(), std::string("config rejected: ") + err.what());
    }
    return config;
}

ScenarioConfig parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw SairsError(Errc::ConfigError, std::string("config is not valid JSON: ") + err.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const nlohmann::json::exception& err) {
        throw SairsError(Errc::ConfigError, std::string("config has a wrongly typed field: ") +
                                                err.what());
    }
}

Json scenario_to_json(const ScenarioConfig& config) {
    Json j;
    Json topo;
    topo["kind"] = topology_kind_name(config.kind);
    topo["n"] = config.n;
    if (config.kind == TopologyKind::Custom) {
        Json edges = Json::array();
        for (const auto& [a, b] : config.edges) edges.push_back(Json::array({a, b}));
        topo["edges"] = std::move(edges);
    }
    j["topology"] = std::move(topo);

    Json rates;
    rates["beta_a_intra"] = config.beta_a_intra;
    rates["beta_a_inter"] = config.beta_a_inter;
    rates["beta_i_intra"] = config.beta_i_intra;
    rates["beta_i_inter"] = config.beta_i_inter;
    rates["alpha"] = config.alpha;
    rates["gamma"] = config.gamma;
    rates["delta_a"] = config.delta_a;
    rates["delta_i"] = config.delta_i;
    rates["mu"] = config.mu.size() == 1 ? Json(config.mu[0]) : vector_to_json(config.mu);
    rates["nu"] = config.nu.size() == 1 ? Json(config.nu[0]) : vector_to_json(config.nu);
    if (config.beta_a_matrix) rates["beta_a_matrix"] = matrix_to_json(*config.beta_a_matrix);
    if (config.beta_i_matrix) rates["beta_i_matrix"] = matrix_to_json(*config.beta_i_matrix);
    j["rates"] = std::move(rates);

    j["initial"] = Json{{"seed_group", config.seed_group}, {"seed_fraction", config.seed_fraction}};
    j["t_end"] = config.t_end;
    j["event_threshold"] = config.event_threshold;
    Json integ;
    integ["rtol"] = config.integrator.rtol;
    integ["atol"] = config.integrator.atol;
    if (std::isfinite(config.integrator.max_step)) integ["max_step"] = config.integrator.max_step;
    if (config.integrator.fixed_step) integ["fixed_step"] = *config.integrator.fixed_step;
    integ["sample_step"] = config.integrator.sample_interval;
    j["integrator"] = std::move(integ);
    return j;
}

Json equilibrium_to_json(const EquilibriumReport& report) {
    Json j;
    j["kind"] = report.kind == EquilibriumKind::Dfe ? "DFE" : "ENDEMIC";
    j["r0"] = report.r0;
    const int n = report.state.group_count();
    Json groups = Json::array();
    for (int g = 0; g < n; ++g) {
        groups.push_back(Json{{"community", g + 1},
                              {"s", report.state.s(g)},
                              {"a", report.state.a(g)},
                              {"i", report.state.i(g)},
                              {"r", report.state.r(g)}});
    }
    j["groups"] = std::move(groups);
    j["residual"] = report.residual;
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    if (report.near_threshold) {
        j["warning"] = "r0 is within 1e-6 of 1: convergence is slow and the equilibrium "
                       "is near-degenerate";
    }
    return j;
}

Json r0_report_to_json(double r0_value, const R0Bounds& bounds, double rho_a) {
    Json j;
    j["r0"] = r0_value;
    j["bounds"] = Json::array({bounds.lower, bounds.upper});
    j["rho_abar"] = bounds.rho_abar;
    j["rho_a"] = rho_a;
    return j;
}

Json stability_to_json(const StabilityVerdict& verdict) {
    Json j;
    j["r0"] = verdict.r0;
    j["regime"] = regime_name(verdict.regime);
    j["dfe_spectral_abscissa"] = verdict.dfe_spectral_abscissa;
    if (verdict.ee_spectral_abscissa) j["ee_spectral_abscissa"] = *verdict.ee_spectral_abscissa;
    if (verdict.local_conditions) {
        const LocalStabilityReport& local = *verdict.local_conditions;
        Json lj;
        lj["pass"] = local.pass;
        lj["proportional"] = local.proportional;
        Json h = Json::array();
        for (double value : local.h) {
            if (std::isnan(value)) {
                h.push_back(nullptr);
            } else {
                h.push_back(value);
            }
        }
        lj["h"] = std::move(h);
        lj["delta_a_above_nu"] = local.delta_a_above_nu;
        lj["delta_i_above_nu"] = local.delta_i_above_nu;
        lj["inequality_margin"] = vector_to_json(local.inequality_margin);
        lj["failures"] = local.failures;
        j["local_stability_conditions"] = std::move(lj);
    }
    if (verdict.gas_conditions) {
        const GasEndemicReport& gas = *verdict.gas_conditions;
        j["gas_endemic_conditions"] = Json{{"pass", gas.pass},
                                           {"s_r_margin", vector_to_json(gas.s_r_margin)},
                                           {"delta_nu_margin", vector_to_json(gas.delta_nu_margin)}};
    }
    if (!verdict.notes.empty()) j["notes"] = verdict.notes;
    return j;
}

Json events_to_json(const EventLog& events) {
    Json j;
    j["threshold"] = events.threshold;
    Json groups = Json::array();
    for (std::size_t g = 0; g < events.a_first.size(); ++g) {
        Json row;
        row["community"] = static_cast<int>(g) + 1;
        row["a_start"] = events.a_first[g] ? Json(*events.a_first[g]) : Json(nullptr);
        row["i_start"] = events.i_first[g] ? Json(*events.i_first[g]) : Json(nullptr);
        groups.push_back(std::move(row));
    }
    j["groups"] = std::move(groups);
    return j;
}

Json summaries_to_json(const std::vector<CommunitySummary>& summaries) {
    Json rows = Json::array();
    for (const CommunitySummary& row : summaries) {
        Json r;
        r["community"] = row.group;
        r["a"] = Json{{"start_time", row.a_start ? Json(*row.a_start) : Json(nullptr)},
                      {"peak_time", row.a_peak.time},
                      {"peak_magnitude", row.a_peak.magnitude}};
        r["i"] = Json{{"start_time", row.i_start ? Json(*row.i_start) : Json(nullptr)},
                      {"peak_time", row.i_peak.time},
                      {"peak_magnitude", row.i_peak.magnitude}};
        if (row.a_endemic) r["a"]["endemic"] = *row.a_endemic;
        if (row.i_endemic) r["i"]["endemic"] = *row.i_endemic;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    if (traj.size() == 0 || traj.states.front().size() % 3 != 0) {
        throw SairsError(Errc::DimensionMismatch, "trajectory does not hold reduced states");
    }
    const int n = static_cast<int>(traj.states.front().size()) / 3;
    std::string out = "t";
    for (int g = 1; g <= n; ++g) {
        out += ",S_" + std::to_string(g) + ",A_" + std::to_string(g) + ",I_" + std::to_string(g) +
               ",R_" + std::to_string(g);
    }
    out += "\n";
    char buffer[40];
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::snprintf(buffer, sizeof buffer, "%.10g", traj.times[k]);
        out += buffer;
        const Vector& x = traj.states[k];
        for (int g = 0; g < n; ++g) {
            const double s = x[3 * g], a = x[3 * g + 1], i = x[3 * g + 2];
            for (double value : {s, a, i, 1.0 - s - a - i}) {
                std::snprintf(buffer, sizeof buffer, ",%.10g", value);
                out += buffer;
            }
        }
        out += "\n";
    }
    return out;
}

std::string totals_to_csv(const TotalsSeries& series) {
    std::string out = "t,sum_A,sum_I\n";
    char buffer[96];
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        std::snprintf(buffer, sizeof buffer, "%.10g,%.10g,%.10g\n", series.times[k],
                      series.sum_a[k], series.sum_i[k]);
        out += buffer;
    }
    return out;
}

}  // namespace sairs
