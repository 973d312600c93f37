#include "sairs/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace sairs {

NetworkTopology ScenarioConfig::build_topology() const {
    if (kind == TopologyKind::Custom) return topology_from_edges(n, edges);
    return make_topology(kind, n);
}

namespace {

Vector broadcast(const Vector& v, int n, const char* name) {
    if (v.size() == n) return v;
    if (v.size() == 1) return Vector::Constant(n, v[0]);
    throw SairsError(Errc::ConfigError,
                     std::string(name) + " must hold 1 or n values");
}

}  // namespace

ModelParams ScenarioConfig::build_params() const {
    const NetworkTopology topo = build_topology();
    Matrix ba = beta_a_matrix ? *beta_a_matrix : build_beta(topo, beta_a_intra, beta_a_inter);
    Matrix bi = beta_i_matrix ? *beta_i_matrix : build_beta(topo, beta_i_intra, beta_i_inter);
    return ModelParams::create(std::move(ba), std::move(bi), broadcast(mu, n, "mu"),
                               broadcast(nu, n, "nu"), alpha, gamma, delta_a, delta_i);
}

StateVector ScenarioConfig::initial_state() const {
    Vector v = Vector::Zero(3 * n);
    for (int g = 0; g < n; ++g) v[3 * g] = 1.0;
    v[3 * (seed_group - 1) + 0] = 1.0 - seed_fraction;
    v[3 * (seed_group - 1) + 1] = seed_fraction;
    return StateVector::reduced(std::move(v));
}

void ScenarioConfig::validate() const {
    if (seed_group < 1 || seed_group > n) {
        throw SairsError(Errc::ConfigError, "seed_group out of range");
    }
    if (!(seed_fraction > 0.0) || !(seed_fraction < 1.0)) {
        throw SairsError(Errc::ConfigError, "seed_fraction must lie in (0, 1)");
    }
    if (!(t_end > 0.0)) throw SairsError(Errc::ConfigError, "t_end must be > 0");
    if (!(event_threshold > 0.0)) throw SairsError(Errc::ConfigError, "event_threshold must be > 0");
    build_params();  // surfaces topology/rate problems with their own messages
}

std::pair<Trajectory, EventLog> run_scenario(const ScenarioConfig& config) {
    config.validate();
    const ModelParams params = config.build_params();
    const StateVector x0 = config.initial_state();

    const VectorField field = [&params](double, const Vector& x) {
        return rhs_reduced(params, StateVector{StateLayout::Reduced3N, x});
    };
    const StateProjection project = [](const Vector& x) {
        return clamped(StateVector{StateLayout::Reduced3N, x}).values;
    };

    Trajectory traj = integrate(field, x0.values, 0.0, config.t_end, config.integrator, project);
    EventLog events = detect_threshold_crossings(traj, config.event_threshold);
    return {std::move(traj), std::move(events)};
}

namespace {

double hermite_scalar(double u, double h, double ya, double yb, double fa, double fb) {
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * ya + (u3 - 2 * u2 + u) * h * fa + (-2 * u3 + 3 * u2) * yb +
           (u3 - u2) * h * fb;
}

// First time the cubic interpolant on [ta, tb] reaches the threshold.
double refine_crossing(double ta, double tb, double ya, double yb, double fa, double fb,
                       double threshold) {
    const double h = tb - ta;
    double lo = 0.0, hi = 1.0;
    while ((hi - lo) * h > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        if (hermite_scalar(mid, h, ya, yb, fa, fb) >= threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return ta + 0.5 * (lo + hi) * h;
}

}  // namespace

EventLog detect_threshold_crossings(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0)) {
        throw SairsError(Errc::InvalidArgument, "threshold must be > 0");
    }
    if (traj.size() == 0 || traj.states.front().size() % 3 != 0) {
        throw SairsError(Errc::DimensionMismatch, "trajectory does not hold reduced states");
    }
    const int n = static_cast<int>(traj.states.front().size()) / 3;

    EventLog log;
    log.threshold = threshold;
    log.a_first.assign(n, std::nullopt);
    log.i_first.assign(n, std::nullopt);

    for (int g = 0; g < n; ++g) {
        for (int comp = 1; comp <= 2; ++comp) {
            auto& slot = comp == 1 ? log.a_first[g] : log.i_first[g];
            const int idx = 3 * g + comp;
            if (traj.states.front()[idx] >= threshold) {
                slot = traj.times.front();
                continue;
            }
            for (std::size_t k = 1; k < traj.size(); ++k) {
                if (traj.states[k][idx] > threshold) {
                    slot = refine_crossing(traj.times[k - 1], traj.times[k],
                                           traj.states[k - 1][idx], traj.states[k][idx],
                                           traj.derivatives[k - 1][idx], traj.derivatives[k][idx],
                                           threshold);
                    break;
                }
            }
        }
    }
    return log;
}

double persistence_margin(const Trajectory& traj, double burn_in) {
    if (traj.size() == 0 || traj.states.front().size() % 3 != 0) {
        throw SairsError(Errc::DimensionMismatch, "trajectory does not hold reduced states");
    }
    if (burn_in >= traj.times.back()) {
        throw SairsError(Errc::InvalidArgument, "burn_in must precede the trajectory end");
    }
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < burn_in) continue;
        margin = std::min(margin, traj.states[k].minCoeff());
    }
    return margin;
}

}  // namespace sairs
