#include "sairs/reproduction.hpp"

#include <cmath>

#include "sairs/numerics.hpp"

namespace sairs {

NextGenDecomposition next_gen_decomposition(const ModelParams& params) {
    params.validate();
    const int n = params.n;

    NextGenDecomposition d;
    d.n = n;
    d.s0 = (params.gamma + params.mu.array()) /
           (params.gamma + params.mu.array() + params.nu.array());

    d.f = Matrix::Zero(2 * n, 2 * n);
    d.f.topLeftCorner(n, n) = d.s0.asDiagonal() * params.beta_a;
    d.f.topRightCorner(n, n) = d.s0.asDiagonal() * params.beta_i;

    const Vector out_a = params.alpha + params.delta_a + params.mu.array();
    const Vector out_i = params.delta_i + params.mu.array();

    d.v = Matrix::Zero(2 * n, 2 * n);
    d.v.topLeftCorner(n, n) = out_a.asDiagonal();
    d.v.bottomLeftCorner(n, n) = -params.alpha * Matrix::Identity(n, n);
    d.v.bottomRightCorner(n, n) = out_i.asDiagonal();

    d.v_inverse = Matrix::Zero(2 * n, 2 * n);
    d.v_inverse.topLeftCorner(n, n) = out_a.cwiseInverse().asDiagonal();
    d.v_inverse.bottomLeftCorner(n, n) =
        (params.alpha / (out_a.array() * out_i.array())).matrix().asDiagonal();
    d.v_inverse.bottomRightCorner(n, n) = out_i.cwiseInverse().asDiagonal();

    d.m = d.f * d.v_inverse;
    d.m1 = d.m.topLeftCorner(n, n);
    d.m2 = d.m.topRightCorner(n, n);

    const PerronData perron = power_iteration(d.m1);
    d.r0 = perron.rho;
    d.right_perron = perron.right_vector;
    d.left_perron_omega = left_perron_vector(d);
    return d;
}

double r0(const ModelParams& params) {
    return next_gen_decomposition(params).r0;
}

R0Bounds r0_bounds(const ModelParams& params, const NetworkTopology& topo) {
    const NextGenDecomposition d = next_gen_decomposition(params);
    if (topo.n != params.n) {
        throw SairsError(Errc::DimensionMismatch, "topology size does not match params");
    }
    const Matrix abar = topo.adjacency + Matrix::Identity(topo.n, topo.n);

    double beta1 = std::numeric_limits<double>::infinity();
    double beta2 = 0.0;
    for (int i = 0; i < params.n; ++i) {
        for (int j = 0; j < params.n; ++j) {
            const bool in_pattern = abar(i, j) != 0.0;
            const bool nonzero = d.m1(i, j) != 0.0;
            if (in_pattern != nonzero) {
                throw SairsError(Errc::PatternMismatch,
                                 "transmission pattern does not match adjacency + I");
            }
            if (in_pattern) {
                beta1 = std::min(beta1, d.m1(i, j));
                beta2 = std::max(beta2, d.m1(i, j));
            }
        }
    }

    R0Bounds bounds;
    bounds.rho_abar = power_iteration(abar).rho;
    bounds.lower = beta1 * bounds.rho_abar;
    bounds.upper = beta2 * bounds.rho_abar;
    if (bounds.lower > bounds.upper) {
        throw SairsError(Errc::InvalidArgument, "bound inversion: beta1 > beta2");
    }
    return bounds;
}

Vector left_perron_vector(const NextGenDecomposition& decomp) {
    if (!(decomp.r0 > 0.0)) {
        throw SairsError(Errc::PreconditionFailed, "left Perron vector requires r0 > 0");
    }
    const int n = decomp.n;
    const PerronData left = power_iteration(decomp.m1.transpose());
    Vector omega(2 * n);
    omega.head(n) = left.right_vector;
    // omega_1^T M2 = r0 omega_2^T
    omega.tail(n) = (left.right_vector.transpose() * decomp.m2).transpose() / decomp.r0;
    omega /= omega.sum();

    const double residual =
        (omega.transpose() * decomp.m - decomp.r0 * omega.transpose()).lpNorm<Eigen::Infinity>();
    if (residual > 1e-10 * std::max(1.0, decomp.r0)) {
        throw SairsError(Errc::NonConvergence, "left eigenvector residual above tolerance");
    }
    if (!(omega.minCoeff() > 0.0)) {
        throw SairsError(Errc::NonConvergence,
                         "left eigenvector has a non-positive component (irreducibility broken)");
    }
    return omega;
}

}  // namespace sairs
