#include <doctest.h>

#include <cmath>

#include "sairs/equilibria.hpp"
#include "sairs/numerics.hpp"
#include "support/instances.hpp"

using namespace sairs;
using sairs::testing::Rng;

TEST_CASE("power_iteration: reference matrices") {
    CHECK(power_iteration(Matrix::Identity(5, 5)).rho == doctest::Approx(1.0).epsilon(1e-10));

    const Matrix permutation{{0.0, 1.0}, {1.0, 0.0}};
    CHECK(power_iteration(permutation).rho == doctest::Approx(1.0).epsilon(1e-10));

    const Matrix symmetric{{2.0, 1.0}, {1.0, 2.0}};
    const PerronData perron = power_iteration(symmetric);
    CHECK(perron.rho == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(perron.right_vector.minCoeff() > 0.0);
    CHECK(perron.right_vector.lpNorm<Eigen::Infinity>() == doctest::Approx(1.0));
    CHECK(perron.residual <= 1e-10 * 3.0);
}

TEST_CASE("power_iteration reports reducibility when the iteration stalls") {
    // periodic dominant block plus an unreachable node: the iteration cycles
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = 2.0;
    m(1, 0) = 1.0;
    m(2, 2) = 0.1;
    try {
        power_iteration(m, 5000);
        FAIL("expected a reducibility error");
    } catch (const SairsError& err) {
        CHECK(err.code() == Errc::ReducibleMatrix);
    }
}

TEST_CASE("power_iteration agrees with the dense eigensolver on random matrices") {
    Rng rng(201);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 2, 10);
        Matrix m = sairs::testing::random_connected_pattern(rng, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = sairs::testing::uniform(rng, 0.1, 2.0);
            for (int j = 0; j < n; ++j) {
                if (m(i, j) != 0.0 && i != j) m(i, j) = sairs::testing::uniform(rng, 0.1, 2.0);
            }
        }
        const double rho = power_iteration(m).rho;
        CHECK(rho == doctest::Approx(spectral_abscissa(m)).epsilon(1e-8));
    }
}

TEST_CASE("spectral_abscissa: reference spectra") {
    CHECK(spectral_abscissa(Vector{{-1.0, -2.0, -3.0}}.asDiagonal().toDenseMatrix()) ==
          doctest::Approx(-1.0).epsilon(1e-10));

    const Matrix rotation{{0.0, 1.0}, {-1.0, 0.0}};  // eigenvalues +-i
    CHECK(spectral_abscissa(rotation) == doctest::Approx(0.0).epsilon(1e-10));

    // companion matrix of (x + 1)(x^2 + 2x + 5) = x^3 + 3x^2 + 7x + 5:
    // roots -1 and -1 +- 2i
    Matrix companion = Matrix::Zero(3, 3);
    companion(0, 2) = -5.0;
    companion(1, 2) = -7.0;
    companion(2, 2) = -3.0;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    CHECK(spectral_abscissa(companion) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("spectral_abscissa holds 1e-8 accuracy at dimension 100") {
    Rng rng(203);
    const int n = 100;
    // orthogonal similarity of a known spectrum: eigenvalues are preserved
    Matrix noise(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) noise(i, j) = sairs::testing::uniform(rng, -1.0, 1.0);
    }
    const Matrix q = Eigen::HouseholderQR<Matrix>(noise).householderQ();
    Vector spectrum(n);
    for (int k = 0; k < n; ++k) spectrum[k] = sairs::testing::uniform(rng, -5.0, 0.0);
    spectrum[37] = 1.25;  // the known rightmost eigenvalue
    const Matrix m = q * spectrum.asDiagonal() * q.transpose();
    CHECK(spectral_abscissa(m) == doctest::Approx(1.25).epsilon(1e-8));
}

TEST_CASE("positive_balance_vector: closed-form cases") {
    SUBCASE("symmetric equal row sums gives a constant vector") {
        const Matrix ring{{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}};
        const Vector c = positive_balance_vector(ring);
        CHECK((c - Vector::Ones(3)).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    SUBCASE("two-node balance") {
        const Matrix w{{0.0, 2.0}, {1.0, 0.0}};
        const Vector c = positive_balance_vector(w);
        CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("reducible weight matrix is rejected") {
        Matrix block = Matrix::Zero(3, 3);
        block(0, 1) = block(1, 0) = 1.0;
        block(2, 2) = 1.0;
        CHECK_THROWS_AS(positive_balance_vector(block), SairsError);
    }
}

TEST_CASE("positive_balance_vector: potential identity and scale invariance") {
    Rng rng(202);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 2, 8);
        Matrix w = sairs::testing::random_connected_pattern(rng, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (w(i, j) != 0.0) w(i, j) = sairs::testing::uniform(rng, 0.1, 3.0);
            }
        }
        const Vector c = positive_balance_vector(w);

        for (int probe = 0; probe < 100; ++probe) {
            Vector p(n);
            for (int k = 0; k < n; ++k) p[k] = sairs::testing::uniform(rng, -1.0, 1.0);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) acc += c[i] * w(i, j) * (p[i] - p[j]);
            }
            CHECK(std::abs(acc) < 1e-9);
        }

        const Vector scaled = positive_balance_vector(3.7 * w);
        CHECK((scaled - c).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("integrate: exponential decay and constant fields") {
    const VectorField decay = [](double, const Vector& x) { return Vector(-x); };
    const Trajectory traj = integrate(decay, Vector::Ones(1), 0.0, 1.0);
    CHECK(traj.back_state()[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));

    const VectorField zero = [](double, const Vector& x) { return Vector(Vector::Zero(x.size())); };
    const Trajectory flat = integrate(zero, Vector::Constant(3, 0.25), 0.0, 5.0);
    for (const Vector& state : flat.states) {
        CHECK((state.array() == 0.25).all());
    }
}

TEST_CASE("integrate: halving tolerances changes the endpoint below the coarse tolerance") {
    const ModelParams p = sairs::testing::table_params(TopologyKind::Ring, 3);
    const VectorField field = [&p](double, const Vector& x) {
        return rhs_reduced(p, StateVector{StateLayout::Reduced3N, x});
    };
    Vector x0 = Vector::Zero(9);
    for (int g = 0; g < 3; ++g) x0[3 * g] = 1.0;
    x0[0] = 0.99;
    x0[1] = 0.01;

    IntegratorOptions coarse;
    coarse.rtol = 1e-7;
    coarse.atol = 1e-9;
    IntegratorOptions fine;
    fine.rtol = 5e-8;
    fine.atol = 5e-10;
    const Vector end_coarse = integrate(field, x0, 0.0, 30.0, coarse).back_state();
    const Vector end_fine = integrate(field, x0, 0.0, 30.0, fine).back_state();
    CHECK((end_coarse - end_fine).lpNorm<Eigen::Infinity>() < 1e-7);
}

TEST_CASE("integrate: fixed-step reruns are bit-identical") {
    const ModelParams p = sairs::testing::table_params(TopologyKind::Ring, 3);
    const VectorField field = [&p](double, const Vector& x) {
        return rhs_reduced(p, StateVector{StateLayout::Reduced3N, x});
    };
    Vector x0 = Vector::Zero(9);
    for (int g = 0; g < 3; ++g) x0[3 * g] = 1.0;
    x0[1] = 0.01;
    x0[0] = 0.99;

    IntegratorOptions opts;
    opts.fixed_step = 0.01;
    opts.sample_interval = 0.1;
    const Trajectory a = integrate(field, x0, 0.0, 10.0, opts);
    const Trajectory b = integrate(field, x0, 0.0, 10.0, opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.times[k] == b.times[k]);
        CHECK((a.states[k].array() == b.states[k].array()).all());
    }
}

TEST_CASE("integrate: one-group long-horizon endpoint hits the fixed-point equilibrium") {
    const ModelParams p = ModelParams::create(
        Matrix::Constant(1, 1, 0.8), Matrix::Constant(1, 1, 0.95), Vector::Constant(1, 1.0 / 25550.0),
        Vector::Constant(1, 0.01), 0.8, 0.02, 0.1, 0.51);

    // independent scalar oracle: bisection on h(a) - a over (0, 1/xi)
    const FixedPointMap map = FixedPointMap::create(p);
    const double m1 = map.m1(0, 0);
    const double xi = map.xi[0];
    const auto h = [&](double a) { return m1 * a / (1.0 + xi * m1 * a); };
    double lo = 1e-12, hi = 1.0 / xi;
    REQUIRE(h(lo) - lo > 0.0);
    REQUIRE(h(hi) - hi < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) - mid > 0.0 ? lo : hi) = mid;
    }
    const double a_star = 0.5 * (lo + hi);
    const double i_star = map.k[0] * a_star;
    const double s_star = (p.alpha + p.delta_a + p.mu[0]) * a_star /
                          ((p.beta_a(0, 0) + p.beta_i(0, 0) * map.k[0]) * a_star);

    const VectorField field = [&p](double, const Vector& x) {
        return rhs_reduced(p, StateVector{StateLayout::Reduced3N, x});
    };
    const Trajectory traj = integrate(field, Vector{{0.99, 0.01, 0.0}}, 0.0, 2000.0);
    CHECK(traj.back_state()[0] == doctest::Approx(s_star).epsilon(1e-6));
    CHECK(traj.back_state()[1] == doctest::Approx(a_star).epsilon(1e-6));
    CHECK(traj.back_state()[2] == doctest::Approx(i_star).epsilon(1e-6));
}

TEST_CASE("integrate rejects bad spans and tolerances") {
    const VectorField zero = [](double, const Vector& x) { return Vector(Vector::Zero(x.size())); };
    CHECK_THROWS_AS(integrate(zero, Vector::Ones(1), 1.0, 1.0), SairsError);
    IntegratorOptions bad;
    bad.rtol = 0.0;
    CHECK_THROWS_AS(integrate(zero, Vector::Ones(1), 0.0, 1.0, bad), SairsError);
}
