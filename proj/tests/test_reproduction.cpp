#include <doctest.h>

#include <cmath>

#include "sairs/numerics.hpp"
#include "sairs/reproduction.hpp"
#include "support/instances.hpp"

using namespace sairs;
using sairs::testing::Rng;

namespace {
constexpr double kMu = 1.0 / 25550.0;
}

TEST_CASE("one-group decomposition reproduces the scalar formulas") {
    const ModelParams p = ModelParams::create(
        Matrix::Constant(1, 1, 0.8), Matrix::Constant(1, 1, 0.95), Vector::Constant(1, kMu),
        Vector::Constant(1, 0.01), 0.8, 0.02, 0.1, 0.51);
    const NextGenDecomposition d = next_gen_decomposition(p);
    CHECK(d.s0[0] == doctest::Approx(0.66710).epsilon(1.5e-5));
    CHECK(d.r0 == doctest::Approx(1.69744).epsilon(1e-4 / 1.69744));
    // scalar closed form
    const double expected =
        (0.8 + 0.8 * 0.95 / (0.51 + kMu)) * d.s0[0] / (0.8 + 0.1 + kMu);
    CHECK(d.r0 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("no vaccination lifts the susceptible fractions to one") {
    const ModelParams p = ModelParams::create(
        Matrix::Constant(1, 1, 0.8), Matrix::Constant(1, 1, 0.95), Vector::Constant(1, kMu),
        Vector::Zero(1), 0.8, 0.02, 0.1, 0.51);
    const NextGenDecomposition d = next_gen_decomposition(p);
    CHECK(d.s0[0] == 1.0);
}

TEST_CASE("decomposition block structure and closed forms") {
    Rng rng(301);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 2, 6);
        const ModelParams p = sairs::testing::random_params(rng, n);
        const NextGenDecomposition d = next_gen_decomposition(p);

        // lower half of M is exactly zero
        CHECK(d.m.bottomRows(n).lpNorm<Eigen::Infinity>() == 0.0);

        // M V = F to 1e-12 relative
        const double scale = d.f.cwiseAbs().maxCoeff();
        CHECK((d.m * d.v - d.f).lpNorm<Eigen::Infinity>() <= 1e-12 * scale);

        // closed-form V^{-1} vs generic inversion oracle
        const Matrix generic = d.v.fullPivLu().inverse();
        CHECK((d.v_inverse - generic).lpNorm<Eigen::Infinity>() <=
              1e-12 * generic.cwiseAbs().maxCoeff());

        // V^{-1} is nonnegative
        CHECK(d.v_inverse.minCoeff() >= 0.0);

        // block identity: M1 = F_UL V^{-1}_UL + F_UR V^{-1}_LL
        const Matrix block = d.f.topLeftCorner(n, n) * d.v_inverse.topLeftCorner(n, n) +
                             d.f.topRightCorner(n, n) * d.v_inverse.bottomLeftCorner(n, n);
        CHECK((d.m1 - block).lpNorm<Eigen::Infinity>() <= 1e-13 * block.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("uniform-mu M1 matches the entrywise closed form") {
    Rng rng(302);
    sairs::testing::InstanceRanges uniform_rates;
    uniform_rates.heterogeneous = false;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 1, 6);
        const ModelParams p = sairs::testing::random_params(rng, n, uniform_rates);
        const NextGenDecomposition d = next_gen_decomposition(p);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double expected =
                    (p.beta_a(i, j) + p.alpha * p.beta_i(i, j) / (p.delta_i + p.mu[i])) *
                    d.s0[i] / (p.alpha + p.delta_a + p.mu[i]);
                CHECK(d.m1(i, j) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("r0 equals the dense spectral radius of the full next-generation matrix") {
    Rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 1, 6);
        const ModelParams p = sairs::testing::random_params(rng, n);
        const NextGenDecomposition d = next_gen_decomposition(p);
        CHECK(d.r0 == doctest::Approx(spectral_abscissa(d.m)).epsilon(1e-8));
    }
}

TEST_CASE("homogeneous-rate networks factor into a scalar times the shifted adjacency") {
    const std::pair<TopologyKind, int> cases[] = {{TopologyKind::Ring, 9},
                                                  {TopologyKind::Star, 9},
                                                  {TopologyKind::Ring, 30},
                                                  {TopologyKind::Star, 25}};
    for (const auto& [kind, n] : cases) {
        const NetworkTopology topo = make_topology(kind, n);
        const ModelParams p = sairs::testing::table_params(kind, n);
        const NextGenDecomposition d = next_gen_decomposition(p);
        const double c = d.m1(0, 0) / 2.0;  // diagonal entry is twice the off-diagonal
        const double rho_a = adjacency_spectral_radius(topo, false);
        CHECK(d.r0 == doctest::Approx(c * (2.0 + rho_a)).epsilon(1e-8));
        // even cycles and stars have bipartite-or-periodic adjacency; the
        // closed forms stay exact
        if (kind == TopologyKind::Ring) {
            CHECK(rho_a == doctest::Approx(2.0).epsilon(1e-8));
        } else {
            CHECK(rho_a == doctest::Approx(std::sqrt(n - 1.0)).epsilon(1e-8));
        }
    }
}

TEST_CASE("r0 is exactly linear in a simultaneous beta scaling") {
    Rng rng(304);
    const ModelParams p = sairs::testing::random_params(rng, 4);
    const double base = r0(p);
    for (const double t : {0.25, 0.5, 2.0, 7.5}) {
        CHECK(r0(p.scaled_beta(t)) == doctest::Approx(t * base).epsilon(1e-10));
    }
}

TEST_CASE("star network r0 under both gamma readings") {
    const ModelParams printed = sairs::testing::table_params(TopologyKind::Star, 9, 0.02);
    CHECK(r0(printed) == doctest::Approx(4.098).epsilon(1e-3 / 4.098));
    const ModelParams calibrated = sairs::testing::table_params(TopologyKind::Star, 9, 0.04);
    CHECK(r0(calibrated) == doctest::Approx(4.915).epsilon(1e-3 / 4.915));
    // dense-eigensolver oracle for both
    CHECK(r0(printed) ==
          doctest::Approx(spectral_abscissa(next_gen_decomposition(printed).m1)).epsilon(1e-10));
    CHECK(r0(calibrated) ==
          doctest::Approx(spectral_abscissa(next_gen_decomposition(calibrated).m1)).epsilon(1e-10));
}

TEST_CASE("r0_bounds bracket the reproduction number") {
    SUBCASE("equal rates on a complete graph collapse the bracket") {
        const int n = 4;
        Matrix adj = Matrix::Ones(n, n) - Matrix::Identity(n, n);
        NetworkTopology topo{n, adj, TopologyKind::Custom};
        // equal intra and inter rates make every M1 entry identical
        const ModelParams p = ModelParams::create(
            build_beta(topo, 0.5, 0.5), build_beta(topo, 0.5, 0.5), Vector::Constant(n, 1e-3),
            Vector::Constant(n, 0.01), 0.8, 0.02, 0.1, 0.51);
        const R0Bounds bounds = r0_bounds(p, topo);
        const double rho = r0(p);
        CHECK(bounds.lower == doctest::Approx(rho).epsilon(1e-8));
        CHECK(bounds.upper == doctest::Approx(rho).epsilon(1e-8));
    }
    SUBCASE("ring bracket contains r0") {
        const NetworkTopology topo = make_topology(TopologyKind::Ring, 9);
        const ModelParams p = sairs::testing::table_params(TopologyKind::Ring, 9);
        const R0Bounds bounds = r0_bounds(p, topo);
        const double rho = r0(p);
        CHECK(bounds.lower <= rho + 1e-8);
        CHECK(rho <= bounds.upper + 1e-8);
        CHECK(bounds.lower <= bounds.upper);
    }
    SUBCASE("pattern mismatch is rejected") {
        const NetworkTopology ring = make_topology(TopologyKind::Ring, 9);
        const ModelParams star_params = sairs::testing::table_params(TopologyKind::Star, 9);
        CHECK_THROWS_AS(r0_bounds(star_params, ring), SairsError);
    }
}

TEST_CASE("left Perron vector of the next-generation matrix") {
    SUBCASE("one group: omega_2 = omega_1 M2 / r0") {
        const ModelParams p = ModelParams::create(
            Matrix::Constant(1, 1, 0.8), Matrix::Constant(1, 1, 0.95), Vector::Constant(1, kMu),
            Vector::Constant(1, 0.01), 0.8, 0.02, 0.1, 0.51);
        const NextGenDecomposition d = next_gen_decomposition(p);
        const Vector omega = d.left_perron_omega;
        CHECK(omega[1] == doctest::Approx(omega[0] * d.m2(0, 0) / d.r0).epsilon(1e-10));
        CHECK(omega.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("symmetric uniform case has a constant upper block") {
        const ModelParams p = sairs::testing::table_params(TopologyKind::Ring, 6, 0.02, 0.0);
        const NextGenDecomposition d = next_gen_decomposition(p);
        const Vector upper = d.left_perron_omega.head(6);
        CHECK((upper.array() - upper[0]).abs().maxCoeff() < 1e-10);
    }
    SUBCASE("random three-group residual") {
        Rng rng(305);
        const ModelParams p = sairs::testing::random_params(rng, 3);
        const NextGenDecomposition d = next_gen_decomposition(p);
        const Vector omega = d.left_perron_omega;
        CHECK((omega.transpose() * d.m - d.r0 * omega.transpose()).lpNorm<Eigen::Infinity>() <
              1e-10);
        CHECK(omega.minCoeff() > 0.0);
    }
}

TEST_CASE("threshold consistency: sign of the stability abscissa tracks r0 - 1") {
    Rng rng(306);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 1, 6);
        const double target = sairs::testing::uniform(rng, 0.3, 3.0);
        const ModelParams p =
            sairs::testing::with_r0(sairs::testing::random_params(rng, n), target);
        const NextGenDecomposition d = next_gen_decomposition(p);
        if (std::abs(d.r0 - 1.0) <= 1e-6) continue;
        const double abscissa = spectral_abscissa(d.f - d.v);
        CHECK(std::signbit(abscissa) == std::signbit(d.r0 - 1.0));
        ++checked;
    }
    CHECK(checked >= 35);
}

TEST_CASE("increasing a transmission entry weakly increases r0") {
    Rng rng(307);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = sairs::testing::uniform_int(rng, 2, 5);
        ModelParams p = sairs::testing::random_params(rng, n);
        const double base = r0(p);
        const int i = sairs::testing::uniform_int(rng, 0, n - 1);
        const int j = sairs::testing::uniform_int(rng, 0, n - 1);
        p.beta_a(i, j) += 0.3;
        CHECK(r0(p) >= base - 1e-12);
    }
}
