#include "sairs/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "sairs/topology.hpp"

namespace sairs {

PerronData power_iteration(const Matrix& m, int max_iterations) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw SairsError(Errc::DimensionMismatch, "power iteration requires a square matrix");
    }
    if ((m.array() < 0.0).any()) {
        throw SairsError(Errc::InvalidArgument, "power iteration requires a nonnegative matrix");
    }

    const double m_norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // ||M||_inf
    const double target_residual = std::max(1e-12 * m_norm, 1e-300);

    Vector v = Vector::Ones(m.rows());
    double rayleigh = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        const Vector mv = m * v;
        rayleigh = v.dot(mv) / v.dot(v);
        const double residual = (mv - rayleigh * v).lpNorm<Eigen::Infinity>();
        if (residual <= target_residual) {
            return PerronData{rayleigh, v / v.lpNorm<Eigen::Infinity>(), it, residual};
        }
        const double scale = mv.lpNorm<Eigen::Infinity>();
        if (scale == 0.0) {
            throw SairsError(Errc::InvalidArgument, "matrix annihilated a positive vector");
        }
        v = mv / scale;
    }
    // Periodic nonzero patterns make the iteration cycle; reducibility is the
    // usual culprit and gets its own error. (Reducible inputs that converge,
    // e.g. diagonal matrices, still return the correct spectral radius.)
    if (!is_strongly_connected(m)) {
        throw SairsError(Errc::ReducibleMatrix, "power iteration stalled on a reducible matrix");
    }
    throw SairsError(Errc::IterationCapExceeded, "power iteration did not converge");
}

double spectral_abscissa(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw SairsError(Errc::DimensionMismatch, "spectral abscissa requires a square matrix");
    }
    if (!m.allFinite()) {
        throw SairsError(Errc::InvalidArgument, "spectral abscissa requires finite entries");
    }
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw SairsError(Errc::NonConvergence, "eigenvalue iteration failed to converge");
    }
    return solver.eigenvalues().real().maxCoeff();
}

Vector positive_balance_vector(const Matrix& w) {
    if (w.rows() != w.cols() || w.rows() == 0) {
        throw SairsError(Errc::DimensionMismatch, "balance vector requires a square matrix");
    }
    if ((w.array() < 0.0).any()) {
        throw SairsError(Errc::InvalidArgument, "balance vector requires a nonnegative matrix");
    }
    const int m = static_cast<int>(w.rows());
    if (m == 1) return Vector::Ones(1);
    if (!is_strongly_connected(w)) {
        throw SairsError(Errc::ReducibleMatrix, "balance vector requires an irreducible weight matrix");
    }

    // c solves L^T c = 0 with L = diag(rowsum(W)) - W; fix c_m = 1 and solve
    // the leading (m-1)-dimensional block.
    const Matrix lt = (Matrix(w.rowwise().sum().asDiagonal()) - w).transpose();
    Vector c(m);
    const Matrix block = lt.topLeftCorner(m - 1, m - 1);
    Eigen::FullPivLU<Matrix> lu(block);
    bool solved = false;
    if (lu.isInvertible()) {
        c.head(m - 1) = lu.solve(-lt.topRightCorner(m - 1, 1)).col(0);
        c[m - 1] = 1.0;
        solved = (lt * c).lpNorm<Eigen::Infinity>() <=
                 1e-9 * std::max(1.0, lt.cwiseAbs().maxCoeff());
    }
    if (!solved) {
        // reduced system singular or inaccurate: fall back to the full kernel
        Eigen::FullPivLU<Matrix> full(lt);
        full.setThreshold(1e-12);
        const Matrix kernel = full.kernel();
        if (kernel.cols() != 1) {
            throw SairsError(Errc::ReducibleMatrix, "balance system kernel dimension != 1");
        }
        c = kernel.col(0);
        if (c.sum() < 0.0) c = -c;
    }

    const double cmin = c.minCoeff();
    if (!(cmin > 0.0)) {
        throw SairsError(Errc::NonConvergence, "balance vector has a non-positive component");
    }
    c /= cmin;

    const Vector out_weight = w.rowwise().sum();
    const Vector in_weight = w.transpose() * c;
    const double scale = std::max(1.0, (c.array() * out_weight.array()).abs().maxCoeff());
    const double residual =
        ((c.array() * out_weight.array()) - in_weight.array()).abs().maxCoeff() / scale;
    if (residual > 1e-10) {
        throw SairsError(Errc::NonConvergence, "balance residual above tolerance");
    }
    return c;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
// b(5th) - b(4th), used for the embedded error estimate
constexpr double kE1 = kB1 - 5179.0 / 57600, kE3 = kB3 - 7571.0 / 16695, kE4 = kB4 - 393.0 / 640,
                 kE5 = kB5 + 92097.0 / 339200, kE6 = kB6 - 187.0 / 2100, kE7 = -1.0 / 40;

Vector hermite(double t, double ta, double tb, const Vector& ya, const Vector& yb,
               const Vector& fa, const Vector& fb) {
    const double h = tb - ta;
    const double u = (t - ta) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * ya + (u3 - 2 * u2 + u) * h * fa + (-2 * u3 + 3 * u2) * yb +
           (u3 - u2) * h * fb;
}

Vector hermite_derivative(double t, double ta, double tb, const Vector& ya, const Vector& yb,
                          const Vector& fa, const Vector& fb) {
    const double h = tb - ta;
    const double u = (t - ta) / h;
    const double u2 = u * u;
    return ((6 * u2 - 6 * u) * ya + (3 * u2 - 4 * u + 1) * h * fa + (-6 * u2 + 6 * u) * yb +
            (3 * u2 - 2 * u) * h * fb) /
           h;
}

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double atol, double rtol) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < err.size(); ++k) {
        const double sc = atol + rtol * std::max(std::abs(y0[k]), std::abs(y1[k]));
        const double e = err[k] / sc;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

double initial_step(const VectorField& f, double t0, const Vector& x0, const Vector& f0,
                    double atol, double rtol, double span) {
    const auto scaled_norm = [&](const Vector& v, const Vector& ref) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            const double sc = atol + rtol * std::abs(ref[k]);
            acc += (v[k] / sc) * (v[k] / sc);
        }
        return std::sqrt(acc / static_cast<double>(v.size()));
    };
    const double d0 = scaled_norm(x0, x0);
    const double d1 = scaled_norm(f0, x0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const Vector x1 = x0 + h0 * f0;
    const Vector f1 = f(t0 + h0, x1);
    const double d2 = scaled_norm(f1 - f0, x0) / h0;
    double h1;
    if (std::max(d1, d2) <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    }
    return std::min({100.0 * h0, h1, span});
}

}  // namespace

Trajectory integrate(const VectorField& f, const Vector& x0, double t0, double t1,
                     const IntegratorOptions& opts, const StateProjection& project) {
    if (!x0.allFinite()) throw SairsError(Errc::InvalidArgument, "initial state must be finite");
    if (!(t1 > t0)) throw SairsError(Errc::InvalidArgument, "integration span must be nonempty");
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) {
        throw SairsError(Errc::InvalidArgument, "integrator tolerances must be > 0");
    }
    if (opts.fixed_step && !(*opts.fixed_step > 0.0)) {
        throw SairsError(Errc::InvalidArgument, "fixed step must be > 0");
    }

    Trajectory traj;
    traj.options_used = opts;

    Vector y = project ? project(x0) : x0;
    double t = t0;
    Vector fy = f(t, y);

    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.derivatives.push_back(fy);

    const bool sample_grid = opts.sample_interval > 0.0;
    long next_sample = 1;  // grid index: t0 + next_sample * sample_interval

    const bool fixed = opts.fixed_step.has_value();
    double h = fixed ? std::min(*opts.fixed_step, t1 - t0)
                     : std::min(initial_step(f, t0, y, fy, opts.atol, opts.rtol, t1 - t0),
                                opts.max_step);

    long fixed_index = 0;  // fixed-step times are computed by multiplication to avoid drift

    Vector k2, k3, k4, k5, k6, y_new, f_new, err;
    while (t < t1) {
        double h_step;
        double t_target;
        if (fixed) {
            t_target =
                std::min(t0 + static_cast<double>(fixed_index + 1) * *opts.fixed_step, t1);
            h_step = t_target - t;
        } else {
            h_step = std::min(h, t1 - t);
            t_target = t + h_step;
        }
        if (h_step < 1e-14 * std::max(1.0, std::abs(t))) {
            throw SairsError(Errc::StepSizeUnderflow, "step size underflow (stiffness signal)");
        }

        const Vector& k1 = fy;
        k2 = f(t + kC2 * h_step, y + h_step * (kA21 * k1));
        k3 = f(t + kC3 * h_step, y + h_step * (kA31 * k1 + kA32 * k2));
        k4 = f(t + kC4 * h_step, y + h_step * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        k5 = f(t + kC5 * h_step, y + h_step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        k6 = f(t + h_step,
               y + h_step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
        y_new = y + h_step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        f_new = f(t + h_step, y_new);

        if (!fixed) {
            err = h_step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * f_new);
            const double norm = error_norm(err, y, y_new, opts.atol, opts.rtol);
            if (!(norm <= 1.0) || !y_new.allFinite()) {
                ++traj.rejected_steps;
                const double factor =
                    y_new.allFinite() ? std::max(0.2, 0.9 * std::pow(norm, -0.2)) : 0.2;
                h = h_step * std::min(factor, 1.0);
                continue;
            }
            const double factor = std::clamp(0.9 * std::pow(std::max(norm, 1e-10), -0.2), 0.2, 5.0);
            h = std::min(h_step * factor, opts.max_step);
        }
        ++traj.accepted_steps;
        if (fixed) ++fixed_index;

        const double t_new = t_target;
        if (project) {
            y_new = project(y_new);
            f_new = f(t_new, y_new);
        }

        if (sample_grid) {
            // grid points strictly inside the accepted step; the endpoint is
            // emitted exactly when it lands on the grid or at t1
            while (true) {
                const double ts = t0 + static_cast<double>(next_sample) * opts.sample_interval;
                if (ts >= t_new - 1e-12 * std::max(1.0, std::abs(t_new)) || ts > t1) break;
                Vector sample = hermite(ts, t, t_new, y, y_new, k1, f_new);
                if (project) sample = project(sample);
                traj.times.push_back(ts);
                traj.states.push_back(std::move(sample));
                traj.derivatives.push_back(hermite_derivative(ts, t, t_new, y, y_new, k1, f_new));
                ++next_sample;
            }
            const bool at_end = t_new >= t1 - 1e-12 * std::max(1.0, std::abs(t1));
            const double ts = t0 + static_cast<double>(next_sample) * opts.sample_interval;
            const bool on_grid = std::abs(ts - t_new) <= 1e-12 * std::max(1.0, std::abs(t_new));
            if (on_grid || at_end) {
                traj.times.push_back(t_new);
                traj.states.push_back(y_new);
                traj.derivatives.push_back(f_new);
                if (on_grid) ++next_sample;
            }
        } else {
            traj.times.push_back(t_new);
            traj.states.push_back(y_new);
            traj.derivatives.push_back(f_new);
        }

        t = t_new;
        y = y_new;
        fy = f_new;
        if (t1 - t <= 1e-12 * std::max(1.0, std::abs(t1))) break;  // endpoint reached up to roundoff
    }
    return traj;
}

}  // namespace sairs
