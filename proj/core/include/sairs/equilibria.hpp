#pragma once

#include "sairs/model.hpp"
#include "sairs/types.hpp"

namespace sairs {

// Monotone sublinear map whose unique positive fixed point is the endemic
// asymptomatic profile A*:
//
//   h_i(y) = (sum_j M(i,j) y_j) / (1 + xi_i sum_j M(i,j) y_j)
//
// with k_i = alpha/(delta_i + mu_i) and
// xi_i = (alpha + delta_a + mu_i + gamma + gamma k_i) / (mu_i + gamma).
//
// H is monotonically increasing, bounded by 1/xi componentwise, and strictly
// sublinear (H(r y) > r H(y) componentwise for r in (0,1) and y > 0), so a
// positive fixed point exists iff rho(M) > 1 and is then unique. Only these
// qualitative facts are used; no operation computes the sublinearity margin.
struct FixedPointMap {
    ModelParams params;
    Vector k;
    Vector xi;
    // Map matrix (beta_a(i,j) + k_j beta_i(i,j)) S0_i / (alpha+delta_a+mu_i).
    // The recovery weight enters by column (it comes from I*_j = k_j A*_j), so
    // the fixed point solves the equilibrium equations exactly for
    // heterogeneous mu; with uniform mu this is the next-generation block M1.
    Matrix m1;

    static FixedPointMap create(const ModelParams& params);
};

// Componentwise h_i(y); maps nonnegative vectors to [0, 1/xi_i) componentwise
// and is monotonically increasing.
Vector endemic_map(const FixedPointMap& map, const Vector& y);

enum class EquilibriumKind { Dfe, Endemic };

struct EquilibriumReport {
    EquilibriumKind kind = EquilibriumKind::Dfe;
    StateVector state;  // Full4N (S*, A*, I*, R*)
    double residual = 0.0;  // ||rhs_reduced at the equilibrium||_inf
    long iterations = 0;
    bool converged = false;
    bool near_threshold = false;  // 1 < r0 < 1 + 1e-6: slow, near-degenerate
    double r0 = 0.0;
};

// Disease-free equilibrium: S0_i = (gamma+mu_i)/(gamma+mu_i+nu_i), A = I = 0.
EquilibriumReport dfe(const ModelParams& params);

// Unique interior equilibrium for r0 > 1: fixed-point iteration on the
// endemic map followed by a Newton polish on the full equilibrium system.
// Throws SairsError(R0NotAboveOne) when r0 <= 1.
EquilibriumReport solve_endemic(const ModelParams& params);

// Same iteration started from a caller-supplied positive seed (uniqueness
// probes); no Newton polish.
Vector endemic_fixed_point_from(const FixedPointMap& map, const Vector& seed,
                                long max_iterations = 1000000, double tol = 1e-13);

// Back-substitution of an asymptomatic profile into the equilibrium
// equations: I* = k A*, S* from the A-balance, R* = 1 - S* - A* - I*.
StateVector endemic_state_from_profile(const FixedPointMap& map, const Vector& a_star);

double equilibrium_residual(const ModelParams& params, const StateVector& state);

}  // namespace sairs
