#include "sairs/model.hpp"

#include <cmath>
#include <sstream>

#include "sairs/topology.hpp"

namespace sairs {

namespace {

void check_rate_matrix(const Matrix& beta, int n, const char* name) {
    if (beta.rows() != n || beta.cols() != n) {
        throw SairsError(Errc::DimensionMismatch,
                         std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if ((beta.array() < 0.0).any()) {
        throw SairsError(Errc::InvalidArgument, std::string(name) + " has a negative entry");
    }
    for (int i = 0; i < n; ++i) {
        if (!(beta(i, i) > 0.0)) {
            throw SairsError(Errc::InvalidArgument,
                             std::string(name) + " diagonal entry " + std::to_string(i + 1) +
                                 " must be strictly positive");
        }
    }
    if (!is_strongly_connected(beta)) {
        throw SairsError(Errc::ReducibleMatrix, std::string(name) + " is reducible");
    }
}

}  // namespace

ModelParams ModelParams::create(Matrix beta_a, Matrix beta_i, Vector mu, Vector nu,
                                double alpha, double gamma, double delta_a, double delta_i) {
    ModelParams p;
    p.n = static_cast<int>(mu.size());
    p.beta_a = std::move(beta_a);
    p.beta_i = std::move(beta_i);
    p.mu = std::move(mu);
    p.nu = std::move(nu);
    p.alpha = alpha;
    p.gamma = gamma;
    p.delta_a = delta_a;
    p.delta_i = delta_i;
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (n < 1) throw SairsError(Errc::InvalidArgument, "group count must be >= 1");
    check_rate_matrix(beta_a, n, "beta_a");
    check_rate_matrix(beta_i, n, "beta_i");
    if (mu.size() != n || nu.size() != n) {
        throw SairsError(Errc::DimensionMismatch, "mu and nu must have length n");
    }
    if (!(mu.array() > 0.0).all()) {
        throw SairsError(Errc::InvalidArgument, "all mu_i must be strictly positive");
    }
    if ((nu.array() < 0.0).any()) {
        throw SairsError(Errc::InvalidArgument, "nu entries must be nonnegative");
    }
    for (auto [value, name] : {std::pair{alpha, "alpha"}, {gamma, "gamma"},
                               {delta_a, "delta_a"}, {delta_i, "delta_i"}}) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw SairsError(Errc::InvalidArgument, std::string(name) + " must be >= 0");
        }
    }
}

ModelParams ModelParams::scaled_beta(double t) const {
    if (!(t > 0.0)) throw SairsError(Errc::InvalidArgument, "beta scale must be > 0");
    ModelParams p = *this;
    p.beta_a *= t;
    p.beta_i *= t;
    return p;
}

StateVector StateVector::reduced(Vector v) {
    if (v.size() % 3 != 0 || v.size() == 0) {
        throw SairsError(Errc::DimensionMismatch, "reduced state length must be a positive multiple of 3");
    }
    return StateVector{StateLayout::Reduced3N, std::move(v)};
}

StateVector StateVector::full(Vector v) {
    if (v.size() % 4 != 0 || v.size() == 0) {
        throw SairsError(Errc::DimensionMismatch, "full state length must be a positive multiple of 4");
    }
    return StateVector{StateLayout::Full4N, std::move(v)};
}

int StateVector::group_count() const {
    return static_cast<int>(values.size()) / stride();
}

double StateVector::r(int g) const {
    if (layout == StateLayout::Full4N) return values[g * 4 + 3];
    return 1.0 - s(g) - a(g) - i(g);
}

StateVector StateVector::to_full() const {
    if (layout == StateLayout::Full4N) return *this;
    const int n = group_count();
    Vector v(4 * n);
    for (int g = 0; g < n; ++g) {
        v[4 * g + 0] = s(g);
        v[4 * g + 1] = a(g);
        v[4 * g + 2] = i(g);
        v[4 * g + 3] = 1.0 - s(g) - a(g) - i(g);
    }
    return StateVector{StateLayout::Full4N, std::move(v)};
}

StateVector StateVector::to_reduced() const {
    if (layout == StateLayout::Reduced3N) return *this;
    const int n = group_count();
    Vector v(3 * n);
    for (int g = 0; g < n; ++g) {
        v[3 * g + 0] = s(g);
        v[3 * g + 1] = a(g);
        v[3 * g + 2] = i(g);
    }
    return StateVector{StateLayout::Reduced3N, std::move(v)};
}

StateValidation validate_state(const StateVector& state, double tol) {
    const int n = state.group_count();
    const int stride = state.stride();
    StateValidation report;
    report.group_excess = Vector::Zero(n);

    for (int k = 0; k < state.values.size(); ++k) {
        report.worst_negative = std::min(report.worst_negative, state.values[k]);
    }
    for (int g = 0; g < n; ++g) {
        double sum = 0.0;
        for (int c = 0; c < stride; ++c) sum += state.values[g * stride + c];
        if (state.layout == StateLayout::Full4N) {
            report.group_excess[g] = std::abs(sum - 1.0);  // simplex: sum must equal 1
        } else {
            report.group_excess[g] = std::max(0.0, sum - 1.0);  // sub-simplex: sum <= 1
        }
    }

    report.pass = report.worst_negative >= -tol && (report.group_excess.array() <= tol).all();
    if (!report.pass) {
        std::ostringstream msg;
        msg << "state outside feasible region: worst negative " << report.worst_negative
            << ", worst group excess " << report.group_excess.maxCoeff();
        report.message = msg.str();
    }
    return report;
}

StateVector clamped(const StateVector& state, double tol) {
    const StateValidation report = validate_state(state, tol);
    if (!report.pass) {
        throw SairsError(Errc::StateOutsideRegion, report.message);
    }
    StateVector out = state;
    const int n = out.group_count();
    const int stride = out.stride();
    for (int k = 0; k < out.values.size(); ++k) {
        if (out.values[k] < 0.0) out.values[k] = 0.0;
    }
    for (int g = 0; g < n; ++g) {
        double sum = 0.0;
        for (int c = 0; c < stride; ++c) sum += out.values[g * stride + c];
        const bool oversized =
            state.layout == StateLayout::Full4N ? sum != 1.0 && sum > 0.0 : sum > 1.0;
        if (oversized) {
            const double scale = 1.0 / sum;
            for (int c = 0; c < stride; ++c) out.values[g * stride + c] *= scale;
        }
    }
    return out;
}

namespace {

void check_state(const ModelParams& params, const StateVector& state, StateLayout expected) {
    if (state.layout != expected) {
        throw SairsError(Errc::InvalidArgument, "state has the wrong layout");
    }
    if (state.group_count() != params.n ||
        state.values.size() != params.n * (expected == StateLayout::Full4N ? 4 : 3)) {
        throw SairsError(Errc::DimensionMismatch, "state length does not match params.n");
    }
}

}  // namespace

Vector rhs_reduced(const ModelParams& params, const StateVector& state) {
    check_state(params, state, StateLayout::Reduced3N);
    const int n = params.n;
    Vector out(3 * n);
    for (int g = 0; g < n; ++g) {
        double force = 0.0;
        for (int j = 0; j < n; ++j) {
            force += params.beta_a(g, j) * state.a(j) + params.beta_i(g, j) * state.i(j);
        }
        const double s = state.s(g), a = state.a(g), i = state.i(g);
        out[3 * g + 0] = params.mu[g] - force * s - (params.mu[g] + params.nu[g] + params.gamma) * s +
                         params.gamma * (1.0 - a - i);
        out[3 * g + 1] = force * s - (params.alpha + params.delta_a + params.mu[g]) * a;
        out[3 * g + 2] = params.alpha * a - (params.delta_i + params.mu[g]) * i;
    }
    return out;
}

Vector rhs_full(const ModelParams& params, const StateVector& state) {
    check_state(params, state, StateLayout::Full4N);
    const int n = params.n;
    Vector out(4 * n);
    for (int g = 0; g < n; ++g) {
        double force = 0.0;
        for (int j = 0; j < n; ++j) {
            force += params.beta_a(g, j) * state.a(j) + params.beta_i(g, j) * state.i(j);
        }
        const double s = state.s(g), a = state.a(g), i = state.i(g), r = state.r(g);
        out[4 * g + 0] = params.mu[g] - force * s - (params.mu[g] + params.nu[g]) * s + params.gamma * r;
        out[4 * g + 1] = force * s - (params.alpha + params.delta_a + params.mu[g]) * a;
        out[4 * g + 2] = params.alpha * a - (params.delta_i + params.mu[g]) * i;
        out[4 * g + 3] = params.delta_a * a + params.delta_i * i + params.nu[g] * s -
                         (params.gamma + params.mu[g]) * r;
    }
    return out;
}

Matrix jacobian_reduced(const ModelParams& params, const StateVector& state) {
    check_state(params, state, StateLayout::Reduced3N);
    const int n = params.n;
    Matrix jac = Matrix::Zero(3 * n, 3 * n);
    for (int g = 0; g < n; ++g) {
        double force = 0.0;
        for (int j = 0; j < n; ++j) {
            force += params.beta_a(g, j) * state.a(j) + params.beta_i(g, j) * state.i(j);
        }
        const double s = state.s(g);
        const int rs = 3 * g, ra = 3 * g + 1, ri = 3 * g + 2;

        jac(rs, rs) = -force - (params.mu[g] + params.nu[g] + params.gamma);
        jac(ra, rs) = force;
        jac(ra, ra) = -(params.alpha + params.delta_a + params.mu[g]);
        jac(ri, ra) = params.alpha;
        jac(ri, ri) = -(params.delta_i + params.mu[g]);
        for (int j = 0; j < n; ++j) {
            jac(rs, 3 * j + 1) -= params.beta_a(g, j) * s;
            jac(rs, 3 * j + 2) -= params.beta_i(g, j) * s;
            jac(ra, 3 * j + 1) += params.beta_a(g, j) * s;
            jac(ra, 3 * j + 2) += params.beta_i(g, j) * s;
        }
        jac(rs, ra) -= params.gamma;
        jac(rs, ri) -= params.gamma;
    }
    return jac;
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "INVALID_ARGUMENT";
        case Errc::DimensionMismatch: return "DIMENSION_MISMATCH";
        case Errc::ReducibleMatrix: return "IRREDUCIBILITY";
        case Errc::IterationCapExceeded: return "ITERATION_CAP_EXCEEDED";
        case Errc::StepSizeUnderflow: return "STEP_SIZE_UNDERFLOW";
        case Errc::StateOutsideRegion: return "STATE_OUTSIDE_REGION";
        case Errc::R0NotAboveOne: return "R0_NOT_ABOVE_ONE";
        case Errc::NonConvergence: return "NON_CONVERGENCE";
        case Errc::PatternMismatch: return "PATTERN_MISMATCH";
        case Errc::DeltaMismatch: return "DELTA_MISMATCH";
        case Errc::PreconditionFailed: return "PRECONDITION_FAILED";
        case Errc::BoundaryState: return "BOUNDARY_STATE";
        case Errc::ConfigError: return "CONFIG_ERROR";
        case Errc::IoError: return "IO_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace sairs
