#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sairs/equilibria.hpp"
#include "sairs/model.hpp"
#include "sairs/types.hpp"

namespace sairs {

enum class Regime { DfeGas, DfeGasBoundaryNu0, Endemic };

const char* regime_name(Regime regime);

// Columnwise proportionality beta_i = beta_a * diag(h), plus the two rate
// conditions that make the endemic equilibrium provably locally stable.
struct LocalStabilityReport {
    bool pass = false;
    bool proportional = false;
    std::vector<double> h;             // column ratios (NaN for skipped all-zero columns)
    bool delta_a_above_nu = false;
    bool delta_i_above_nu = false;
    Vector inequality_margin;          // rhs - lhs of the rate inequality, per group
    std::vector<std::string> failures; // reason codes, empty on pass
};

LocalStabilityReport local_stability_conditions(const ModelParams& params);

// Sufficient conditions for global stability of the endemic equilibrium when
// delta_a = delta_i: (mu_i+nu_i) S*_i >= gamma R*_i and delta > nu_i.
struct GasEndemicReport {
    bool pass = false;
    Vector s_r_margin;      // (mu_i+nu_i) S*_i - gamma R*_i
    Vector delta_nu_margin; // delta - nu_i
};

GasEndemicReport gas_endemic_conditions(const ModelParams& params, const EquilibriumReport& ee);

enum class LyapunovVariant { DfeQ, SairV, SairsDeltaEqVW };

const char* lyapunov_variant_name(LyapunovVariant variant);

// DfeQ:            Q(x) = omega^T V^{-1} (A_1..A_n, I_1..I_n), nu = 0 only.
// SairV (gamma=0): V = sum_i c_i (S*_i g(s~) + A*_i g(a~)) + c_{n+i} I*_i g(i~)
//                  with g(x) = x - 1 - ln x and c the balance vector of the
//                  equilibrium-weighted digraph beta~.
// SairsDeltaEqVW:  adds sum_i c_i W_i, W_i = gamma (R_i-R*_i)^2 / (2 S*_i (delta-nu_i)).
struct LyapunovCertificate {
    LyapunovVariant variant = LyapunovVariant::SairV;
    ModelParams params;
    Vector coefficients;     // omega (2n, unit sum) or c (2n, min 1)
    StateVector equilibrium; // Full4N reference point
    Matrix beta_tilde;       // 2n x 2n weight matrix (endemic variants)
    Matrix v_inverse;        // 2n x 2n (DfeQ)
};

LyapunovCertificate build_certificate(const ModelParams& params, LyapunovVariant variant,
                                      const EquilibriumReport& equilibrium);

// Nonnegative, zero only at the certificate's reference equilibrium. Endemic
// variants require a strictly interior state.
double evaluate_lyapunov(const LyapunovCertificate& cert, const StateVector& state);

struct StabilityVerdict {
    double r0 = 0.0;
    Regime regime = Regime::DfeGas;
    double dfe_spectral_abscissa = 0.0;
    std::optional<double> ee_spectral_abscissa;  // reported, never used to claim GAS
    std::optional<LocalStabilityReport> local_conditions;
    std::optional<GasEndemicReport> gas_conditions;
    std::string notes;
};

StabilityVerdict classify(const ModelParams& params);

}  // namespace sairs
