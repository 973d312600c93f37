#include "sairs/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sairs/numerics.hpp"
#include "sairs/reproduction.hpp"
#include "sairs/topology.hpp"

namespace sairs {

namespace {
constexpr double kBoundaryWindow = 1e-9;  // |r0 - 1| window for the nu=0 boundary regime
constexpr double kRatioTol = 1e-12;
}  // namespace

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::DfeGas: return "DFE_GAS";
        case Regime::DfeGasBoundaryNu0: return "DFE_GAS_BOUNDARY_NU0";
        case Regime::Endemic: return "ENDEMIC";
    }
    return "DFE_GAS";
}

const char* lyapunov_variant_name(LyapunovVariant variant) {
    switch (variant) {
        case LyapunovVariant::DfeQ: return "DFE_Q";
        case LyapunovVariant::SairV: return "SAIR_V";
        case LyapunovVariant::SairsDeltaEqVW: return "SAIRS_DELTA_EQ_VW";
    }
    return "SAIR_V";
}

LocalStabilityReport local_stability_conditions(const ModelParams& params) {
    params.validate();
    const int n = params.n;
    LocalStabilityReport report;
    report.h.assign(n, std::numeric_limits<double>::quiet_NaN());

    // (a) columnwise ratio constancy beta_i(., j) = h_j beta_a(., j)
    report.proportional = true;
    for (int j = 0; j < n; ++j) {
        bool column_has_entries = false;
        double ratio = std::numeric_limits<double>::quiet_NaN();
        for (int i = 0; i < n; ++i) {
            const double a = params.beta_a(i, j), b = params.beta_i(i, j);
            if (a == 0.0 && b == 0.0) continue;  // uninformative entry
            if (a == 0.0 || b == 0.0) {          // mixed zero pattern
                report.proportional = false;
                continue;
            }
            const double r = b / a;
            if (!column_has_entries) {
                ratio = r;
                column_has_entries = true;
            } else if (std::abs(r - ratio) > kRatioTol * std::max(1.0, std::abs(ratio))) {
                report.proportional = false;
            }
        }
        if (column_has_entries) report.h[j] = ratio;
        // a column that is entirely zero in both matrices is skipped
    }
    if (!report.proportional) report.failures.push_back("NO_COLUMN_PROPORTIONALITY");

    // (b) delta_a > nu_i and delta_i > nu_i
    report.delta_a_above_nu = (params.nu.array() < params.delta_a).all();
    report.delta_i_above_nu = (params.nu.array() < params.delta_i).all();
    if (!report.delta_a_above_nu) report.failures.push_back("DELTA_A_NOT_ABOVE_NU");
    if (!report.delta_i_above_nu) report.failures.push_back("DELTA_I_NOT_ABOVE_NU");

    // (c) (delta_i - nu_i) alpha <= 2 (mu_i + 2 nu_i + gamma + delta_i)
    //     sqrt((mu_i + nu_i + gamma)(delta_i + nu_i)) + (mu_i + 2 nu_i + gamma + delta_i)^2
    report.inequality_margin = Vector(n);
    bool inequality_ok = true;
    for (int g = 0; g < n; ++g) {
        const double lhs = (params.delta_i - params.nu[g]) * params.alpha;
        const double s = params.mu[g] + 2.0 * params.nu[g] + params.gamma + params.delta_i;
        const double rhs =
            2.0 * s *
                std::sqrt((params.mu[g] + params.nu[g] + params.gamma) *
                          (params.delta_i + params.nu[g])) +
            s * s;
        report.inequality_margin[g] = rhs - lhs;
        if (lhs > rhs) inequality_ok = false;
    }
    if (!inequality_ok) report.failures.push_back("RATE_INEQUALITY_FAILED");

    report.pass = report.proportional && report.delta_a_above_nu && report.delta_i_above_nu &&
                  inequality_ok;
    return report;
}

GasEndemicReport gas_endemic_conditions(const ModelParams& params, const EquilibriumReport& ee) {
    params.validate();
    if (std::abs(params.delta_a - params.delta_i) > 1e-12) {
        throw SairsError(Errc::DeltaMismatch, "conditions require delta_a = delta_i");
    }
    if (ee.kind != EquilibriumKind::Endemic || !ee.converged) {
        throw SairsError(Errc::PreconditionFailed, "a converged endemic equilibrium is required");
    }
    const int n = params.n;
    GasEndemicReport report;
    report.s_r_margin = Vector(n);
    report.delta_nu_margin = Vector(n);
    for (int g = 0; g < n; ++g) {
        report.s_r_margin[g] =
            (params.mu[g] + params.nu[g]) * ee.state.s(g) - params.gamma * ee.state.r(g);
        report.delta_nu_margin[g] = params.delta_a - params.nu[g];
    }
    report.pass = (report.s_r_margin.array() >= 0.0).all() &&
                  (report.delta_nu_margin.array() > 0.0).all();
    return report;
}

namespace {

Matrix assemble_beta_tilde(const ModelParams& params, const StateVector& eq) {
    const int n = params.n;
    Matrix bt = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bt(i, j) = params.beta_a(i, j) * eq.a(j) * eq.s(i);
            bt(i, n + j) = params.beta_i(i, j) * eq.i(j) * eq.s(i);
        }
        bt(n + i, i) = params.alpha * eq.a(i);
    }
    return bt;
}

double g_entropy(double x) { return x - 1.0 - std::log(x); }

}  // namespace

LyapunovCertificate build_certificate(const ModelParams& params, LyapunovVariant variant,
                                      const EquilibriumReport& equilibrium) {
    params.validate();
    LyapunovCertificate cert;
    cert.variant = variant;
    cert.params = params;
    cert.equilibrium = equilibrium.state.to_full();

    switch (variant) {
        case LyapunovVariant::DfeQ: {
            if ((params.nu.array() != 0.0).any()) {
                throw SairsError(Errc::PreconditionFailed, "DFE_Q requires nu = 0 for every group");
            }
            const NextGenDecomposition decomp = next_gen_decomposition(params);
            cert.coefficients = decomp.left_perron_omega;
            cert.v_inverse = decomp.v_inverse;
            return cert;
        }
        case LyapunovVariant::SairV:
            if (params.gamma != 0.0) {
                throw SairsError(Errc::PreconditionFailed, "SAIR_V requires gamma = 0");
            }
            break;
        case LyapunovVariant::SairsDeltaEqVW: {
            if (std::abs(params.delta_a - params.delta_i) > 1e-12) {
                throw SairsError(Errc::DeltaMismatch, "SAIRS_DELTA_EQ_VW requires delta_a = delta_i");
            }
            const GasEndemicReport predicate = gas_endemic_conditions(params, equilibrium);
            if (!predicate.pass) {
                throw SairsError(Errc::PreconditionFailed,
                                 "SAIRS_DELTA_EQ_VW requires the endemic GAS conditions to hold");
            }
            break;
        }
    }

    if (equilibrium.kind != EquilibriumKind::Endemic || !equilibrium.converged) {
        throw SairsError(Errc::PreconditionFailed, "a converged endemic equilibrium is required");
    }
    cert.beta_tilde = assemble_beta_tilde(params, cert.equilibrium);
    if (!is_strongly_connected(cert.beta_tilde)) {
        throw SairsError(Errc::ReducibleMatrix, "certificate digraph is not strongly connected");
    }
    cert.coefficients = positive_balance_vector(cert.beta_tilde);
    return cert;
}

double evaluate_lyapunov(const LyapunovCertificate& cert, const StateVector& state) {
    const ModelParams& p = cert.params;
    const int n = p.n;
    if (state.group_count() != n) {
        throw SairsError(Errc::DimensionMismatch, "state does not match the certificate's group count");
    }

    if (cert.variant == LyapunovVariant::DfeQ) {
        Vector infected(2 * n);
        for (int g = 0; g < n; ++g) {
            infected[g] = state.a(g);
            infected[n + g] = state.i(g);
        }
        return cert.coefficients.dot(cert.v_inverse * infected);
    }

    const StateVector& eq = cert.equilibrium;
    for (int g = 0; g < n; ++g) {
        if (!(state.s(g) > 0.0) || !(state.a(g) > 0.0) || !(state.i(g) > 0.0)) {
            throw SairsError(Errc::BoundaryState,
                             "endemic Lyapunov functions need a strictly interior state");
        }
    }

    double value = 0.0;
    for (int g = 0; g < n; ++g) {
        value += cert.coefficients[g] *
                 (eq.s(g) * g_entropy(state.s(g) / eq.s(g)) +
                  eq.a(g) * g_entropy(state.a(g) / eq.a(g)));
        value += cert.coefficients[n + g] * eq.i(g) * g_entropy(state.i(g) / eq.i(g));
    }
    if (cert.variant == LyapunovVariant::SairsDeltaEqVW) {
        const double delta = p.delta_a;
        for (int g = 0; g < n; ++g) {
            const double dr = state.r(g) - eq.r(g);
            value += cert.coefficients[g] * p.gamma * dr * dr /
                     (2.0 * eq.s(g) * (delta - p.nu[g]));
        }
    }
    return value;
}

StabilityVerdict classify(const ModelParams& params) {
    params.validate();
    StabilityVerdict verdict;

    const EquilibriumReport dfe_report = dfe(params);
    verdict.r0 = dfe_report.r0;
    verdict.dfe_spectral_abscissa =
        spectral_abscissa(jacobian_reduced(params, dfe_report.state.to_reduced()));

    const bool no_vaccination = (params.nu.array() == 0.0).all();
    if (no_vaccination && std::abs(verdict.r0 - 1.0) <= kBoundaryWindow) {
        verdict.regime = Regime::DfeGasBoundaryNu0;
        verdict.notes = "r0 = 1 within 1e-9 and nu = 0: boundary case, DFE globally stable";
        return verdict;
    }
    if (verdict.r0 < 1.0) {
        verdict.regime = Regime::DfeGas;
        return verdict;
    }

    verdict.regime = Regime::Endemic;
    const EquilibriumReport ee = solve_endemic(params);
    verdict.ee_spectral_abscissa =
        spectral_abscissa(jacobian_reduced(params, ee.state.to_reduced()));
    verdict.local_conditions = local_stability_conditions(params);

    const bool delta_equal = std::abs(params.delta_a - params.delta_i) <= 1e-12;
    if (params.gamma == 0.0) {
        verdict.notes = "gamma = 0: endemic equilibrium globally stable (no extra conditions)";
    } else if (delta_equal) {
        verdict.gas_conditions = gas_endemic_conditions(params, ee);
        verdict.notes = verdict.gas_conditions->pass
                            ? "delta_a = delta_i and the sufficient conditions hold: "
                              "endemic equilibrium globally stable"
                            : "UNPROVEN_REGIME: delta_a = delta_i but the sufficient "
                              "conditions fail; only local/empirical evidence available";
    } else {
        verdict.notes = "UNPROVEN_REGIME: global stability is not established for "
                        "delta_a != delta_i with vaccination";
    }
    return verdict;
}

}  // namespace sairs
