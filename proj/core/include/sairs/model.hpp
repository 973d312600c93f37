#pragma once

#include <string>

#include "sairs/types.hpp"

namespace sairs {

// Per-group compartment layout of a flat state vector.
enum class StateLayout { Full4N, Reduced3N };

// Multi-group SAIRS rates. beta_a(i,j) / beta_i(i,j) are the rates at which
// asymptomatic / symptomatic individuals of group j infect susceptibles of
// group i. Both matrices must be nonnegative, have strictly positive
// diagonals and be irreducible; mu must be strictly positive.
struct ModelParams {
    int n = 0;
    Matrix beta_a;
    Matrix beta_i;
    Vector mu;       // per-group birth/death rate
    Vector nu;       // per-group vaccination rate
    double alpha = 0.0;    // symptom onset rate (A -> I)
    double gamma = 0.0;    // immunity loss rate (R -> S)
    double delta_a = 0.0;  // recovery rate from A
    double delta_i = 0.0;  // recovery rate from I

    static ModelParams create(Matrix beta_a, Matrix beta_i, Vector mu, Vector nu,
                              double alpha, double gamma, double delta_a, double delta_i);

    // Throws SairsError on any violated constraint.
    void validate() const;

    // Returns a copy with both transmission matrices scaled by t > 0.
    ModelParams scaled_beta(double t) const;
};

// Compartment fractions, groupwise (S_i, A_i, I_i[, R_i]).
struct StateVector {
    StateLayout layout = StateLayout::Reduced3N;
    Vector values;

    static StateVector reduced(Vector v);
    static StateVector full(Vector v);

    int group_count() const;
    int stride() const { return layout == StateLayout::Full4N ? 4 : 3; }

    double s(int g) const { return values[g * stride() + 0]; }
    double a(int g) const { return values[g * stride() + 1]; }
    double i(int g) const { return values[g * stride() + 2]; }
    double r(int g) const;  // stored (full) or 1 - S - A - I (reduced)

    StateVector to_full() const;
    StateVector to_reduced() const;
};

// Boundary excursions up to this size are accepted and clamped away;
// anything larger is a hard error.
inline constexpr double kStateTol = 1e-9;

struct StateValidation {
    bool pass = true;
    double worst_negative = 0.0;  // most negative entry, 0 if none
    Vector group_excess;          // per-group sum violation (0 where satisfied)
    std::string message;
};

StateValidation validate_state(const StateVector& state, double tol = kStateTol);

// Negative entries set to 0 and oversized group sums rescaled. Throws
// SairsError(StateOutsideRegion) when the violation exceeds tol.
StateVector clamped(const StateVector& state, double tol = kStateTol);

// Time derivative of (S_i, A_i, I_i) per group; the force of infection on
// group i is sum_j (beta_a(i,j) A_j + beta_i(i,j) I_j) * S_i.
Vector rhs_reduced(const ModelParams& params, const StateVector& state);

// Time derivative of (S_i, A_i, I_i, R_i); components sum to zero per group.
Vector rhs_full(const ModelParams& params, const StateVector& state);

// Exact partial derivatives of rhs_reduced, 3n x 3n.
Matrix jacobian_reduced(const ModelParams& params, const StateVector& state);

}  // namespace sairs
