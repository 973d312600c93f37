#pragma once

#include "sairs/model.hpp"
#include "sairs/topology.hpp"
#include "sairs/types.hpp"

namespace sairs {

// Next-generation machinery linearized at the disease-free equilibrium, with
// disease compartments ordered (A_1..A_n, I_1..I_n).
//
//   F = [ BA~  BI~ ]   V = [ diag(alpha+delta_a+mu_i)       0          ]
//       [  0    0  ]       [        -alpha I        diag(delta_i+mu_i) ]
//
// where BA~(i,j) = beta_a(i,j) S0_i. M = F V^{-1}; its lower n rows are zero,
// so r0 = rho(M) = rho(M1) with M1 the upper-left n x n block.
struct NextGenDecomposition {
    int n = 0;
    Vector s0;          // DFE susceptible fractions (gamma+mu_i)/(gamma+mu_i+nu_i)
    Matrix f;           // 2n x 2n new-infection matrix
    Matrix v;           // 2n x 2n transition matrix
    Matrix v_inverse;   // closed-form blockwise inverse
    Matrix m;           // F V^{-1}
    Matrix m1;          // upper-left block of m
    Matrix m2;          // upper-right block of m
    double r0 = 0.0;
    Vector right_perron;       // positive right eigenvector of m1, max-norm 1
    Vector left_perron_omega;  // positive left eigenvector of m, unit sum
};

NextGenDecomposition next_gen_decomposition(const ModelParams& params);

// Basic reproduction number rho(M1).
double r0(const ModelParams& params);

struct R0Bounds {
    double lower = 0.0;   // beta1 * rho(A + I)
    double upper = 0.0;   // beta2 * rho(A + I)
    double rho_abar = 0.0;
};

// beta1/beta2 are the min/max M1 entries over the nonzero pattern, which must
// coincide with the pattern of adjacency + I.
R0Bounds r0_bounds(const ModelParams& params, const NetworkTopology& topo);

// omega with omega^T M = r0 omega^T, strictly positive, unit sum. The upper
// half is the left Perron vector of M1 and omega_1^T M2 = r0 omega_2^T.
Vector left_perron_vector(const NextGenDecomposition& decomp);

}  // namespace sairs
