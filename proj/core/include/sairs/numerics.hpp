#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "sairs/types.hpp"

namespace sairs {

// Perron root and right eigenvector (max-norm 1) of a nonnegative
// irreducible matrix.
struct PerronData {
    double rho = 0.0;
    Vector right_vector;
    int iterations = 0;
    double residual = 0.0;  // ||M v - rho v||_inf
};

// Power iteration from the all-ones vector with a Rayleigh-quotient
// convergence test. Throws on reducible input or when the iteration cap is
// exceeded.
PerronData power_iteration(const Matrix& m, int max_iterations = 100000);

// Max real part over the eigenvalues of a general real matrix.
double spectral_abscissa(const Matrix& m);

// Positive vector c (normalized min(c) = 1) solving the weighted
// flow-balance system c_k sum_j W(k,j) = sum_i c_i W(i,k) for every k.
// Equivalently the positive left null vector of diag(rowsum(W)) - W. This is
// what makes sum_{i,j} c_i W(i,j) (p_i - p_j) vanish for all potentials p.
Vector positive_balance_vector(const Matrix& w);

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    std::optional<double> fixed_step;  // disables error control; bit-identical reruns
    // Dense-output grid spacing; <= 0 records accepted steps only.
    double sample_interval = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> derivatives;
    long accepted_steps = 0;
    long rejected_steps = 0;
    IntegratorOptions options_used;

    std::size_t size() const { return times.size(); }
    const Vector& back_state() const { return states.back(); }
};

using VectorField = std::function<Vector(double, const Vector&)>;

// Applied to every accepted step state (e.g. feasible-region clamping).
// May throw to abort the integration.
using StateProjection = std::function<Vector(const Vector&)>;

// Dormand-Prince 5(4) pair with proportional step control on the mixed
// tolerance and cubic-Hermite dense output. Deterministic for identical
// inputs and options.
Trajectory integrate(const VectorField& f, const Vector& x0, double t0, double t1,
                     const IntegratorOptions& opts = {}, const StateProjection& project = {});

}  // namespace sairs
