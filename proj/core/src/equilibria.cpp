#include "sairs/equilibria.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "sairs/reproduction.hpp"

namespace sairs {

FixedPointMap FixedPointMap::create(const ModelParams& params) {
    params.validate();
    FixedPointMap map;
    map.params = params;
    map.k = (params.alpha / (params.delta_i + params.mu.array())).matrix();
    map.xi = ((params.alpha + params.delta_a + params.mu.array() + params.gamma +
               params.gamma * map.k.array()) /
              (params.mu.array() + params.gamma))
                 .matrix();

    const Vector s0 = ((params.gamma + params.mu.array()) /
                       (params.gamma + params.mu.array() + params.nu.array()))
                          .matrix();
    const Vector row_scale = (s0.array() / (params.alpha + params.delta_a + params.mu.array())).matrix();
    map.m1 = row_scale.asDiagonal() * (params.beta_a + params.beta_i * map.k.asDiagonal());
    return map;
}

Vector endemic_map(const FixedPointMap& map, const Vector& y) {
    if (y.size() != map.params.n) {
        throw SairsError(Errc::DimensionMismatch, "endemic map input has wrong length");
    }
    if ((y.array() < 0.0).any()) {
        throw SairsError(Errc::InvalidArgument, "endemic map input must be nonnegative");
    }
    const Vector weighted = map.m1 * y;
    return (weighted.array() / (1.0 + map.xi.array() * weighted.array())).matrix();
}

EquilibriumReport dfe(const ModelParams& params) {
    params.validate();
    const int n = params.n;
    Vector v = Vector::Zero(4 * n);
    for (int g = 0; g < n; ++g) {
        const double s0 = (params.gamma + params.mu[g]) / (params.gamma + params.mu[g] + params.nu[g]);
        v[4 * g + 0] = s0;
        v[4 * g + 3] = 1.0 - s0;
    }
    EquilibriumReport report;
    report.kind = EquilibriumKind::Dfe;
    report.state = StateVector::full(std::move(v));
    report.residual = equilibrium_residual(params, report.state);
    report.converged = true;
    report.r0 = r0(params);
    return report;
}

Vector endemic_fixed_point_from(const FixedPointMap& map, const Vector& seed,
                                long max_iterations, double tol) {
    Vector y = seed;
    for (long it = 1; it <= max_iterations; ++it) {
        Vector next = endemic_map(map, y);
        const double delta = (next - y).lpNorm<Eigen::Infinity>();
        y = std::move(next);
        if (delta < tol) return y;
    }
    throw SairsError(Errc::NonConvergence, "endemic fixed-point iteration hit the cap");
}

StateVector endemic_state_from_profile(const FixedPointMap& map, const Vector& a_star) {
    const ModelParams& p = map.params;
    const int n = p.n;
    const Vector i_star = (map.k.array() * a_star.array()).matrix();
    const Vector force = p.beta_a * a_star + p.beta_i * i_star;
    Vector v(4 * n);
    for (int g = 0; g < n; ++g) {
        const double s = (p.alpha + p.delta_a + p.mu[g]) * a_star[g] / force[g];
        v[4 * g + 0] = s;
        v[4 * g + 1] = a_star[g];
        v[4 * g + 2] = i_star[g];
        v[4 * g + 3] = 1.0 - s - a_star[g] - i_star[g];
    }
    return StateVector::full(std::move(v));
}

namespace {

// Newton refinement on rhs_reduced = 0 starting from the fixed-point solution.
StateVector newton_polish(const ModelParams& params, const StateVector& full_state,
                          double target_residual, int max_iterations) {
    StateVector best = full_state;
    double best_residual = equilibrium_residual(params, best);
    StateVector current = full_state.to_reduced();
    for (int it = 0; it < max_iterations && best_residual > target_residual; ++it) {
        const Vector f = rhs_reduced(params, current);
        const Matrix jac = jacobian_reduced(params, current);
        const Vector step = jac.fullPivLu().solve(-f);
        if (!step.allFinite()) break;
        current.values += step;
        const double residual = rhs_reduced(params, current).lpNorm<Eigen::Infinity>();
        if (residual < best_residual) {
            best_residual = residual;
            best = current.to_full();
        } else {
            break;
        }
    }
    return best;
}

}  // namespace

EquilibriumReport solve_endemic(const ModelParams& params) {
    const double reproduction_number = r0(params);
    if (!(reproduction_number > 1.0)) {
        throw SairsError(Errc::R0NotAboveOne,
                         "no endemic equilibrium exists: r0 = " + std::to_string(reproduction_number));
    }

    const FixedPointMap map = FixedPointMap::create(params);
    const Vector upper_seed =
        map.xi.cwiseInverse().cwiseMin(((params.delta_i + params.mu.array()) / params.alpha).matrix());

    EquilibriumReport report;
    report.kind = EquilibriumKind::Endemic;
    report.r0 = reproduction_number;
    report.near_threshold = reproduction_number < 1.0 + 1e-6;

    Vector y = upper_seed;
    constexpr long kCap = 1000000;
    constexpr double kTol = 1e-13;
    long iterations = 0;
    for (; iterations < kCap; ++iterations) {
        Vector next = endemic_map(map, y);
        const double delta = (next - y).lpNorm<Eigen::Infinity>();
        y = std::move(next);
        if (delta < kTol) break;
    }
    report.iterations = iterations + 1;

    // Newton pass on the full equilibrium system; near the threshold it also
    // finishes off the slow tail of the linear iteration.
    StateVector state = endemic_state_from_profile(map, y);
    state = newton_polish(params, state, 1e-12, 40);
    report.state = std::move(state);
    report.residual = equilibrium_residual(params, report.state);
    report.converged = report.residual <= 1e-10;
    if (!report.converged) {
        throw SairsError(Errc::NonConvergence,
                         iterations >= kCap ? "endemic solver hit the iteration cap"
                                            : "endemic equilibrium residual above 1e-10");
    }
    for (int g = 0; g < params.n; ++g) {
        if (!(report.state.a(g) > 0.0) || !(report.state.s(g) > 0.0) ||
            !(report.state.i(g) > 0.0)) {
            throw SairsError(Errc::NonConvergence, "endemic equilibrium is not interior");
        }
    }
    return report;
}

double equilibrium_residual(const ModelParams& params, const StateVector& state) {
    return rhs_reduced(params, state.to_reduced()).lpNorm<Eigen::Infinity>();
}

}  // namespace sairs
