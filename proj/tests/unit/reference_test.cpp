#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include <gjsoq/errors.hpp>
#include <gjsoq/reference.hpp>

#include "draws.hpp"

namespace gjsoq {
namespace {

using testing::Draws;
using testing::baseline;

const SystemParams kRatioPreset{0.04, 0.01, 0.01, 0.44, 0.25, 0.25};

TEST(ReferenceDecay, RatioPresetLoad) {
    EXPECT_DOUBLE_EQ(std::round(reference_decay_rate(kRatioPreset) * 1e4) / 1e4, 0.1527);
}

TEST(ReferenceDecay, DeterminantVanishesAtTheRoot) {
    for (const SystemParams& p : {baseline(), kRatioPreset}) {
        const ReferenceQBD q = reference_qbd(p);
        EXPECT_LT(std::abs(reference_determinant(q, reference_decay_rate(p))), 1e-12);
    }
}

TEST(ReferenceDecay, SpectralRadiusOfRIsTheLoad) {
    const ReferenceQBD q = reference_qbd(baseline());
    EXPECT_NEAR(q.zeta, derive_rates(baseline()).rho, 1e-10);
    EXPECT_LT(q.r_iterations, 100000);
}

TEST(ReferenceDecay, OverloadIsRejected) {
    EXPECT_THROW(reference_qbd({0.8, 0.05, 0.05, 1.0, 1.0, 1.0}), HypothesisError);
}

// Stationary vector of the single-orbit chain truncated at level n_max, solved
// densely from rates written out here rather than from the library's blocks.
Eigen::VectorXd truncated_reference(const SystemParams& p, int n_max) {
    const int size = 2 * (n_max + 1);
    const double lam = p.lambda(), a = p.alpha1 + p.alpha2;
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
    auto idle = [](int n) { return 2 * n; };
    auto busy = [](int n) { return 2 * n + 1; };
    for (int n = 0; n <= n_max; ++n) {
        q(idle(n), busy(n)) += lam;
        if (n >= 1) q(idle(n), busy(n - 1)) += n == 1 ? p.alpha1 : a;
        q(busy(n), idle(n)) += p.mu;
        if (n < n_max) q(busy(n), busy(n + 1)) += lam;
    }
    for (int s = 0; s < size; ++s) q(s, s) = -q.row(s).sum();
    Eigen::MatrixXd sys = q.transpose();
    sys.row(0).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
    rhs(0) = 1.0;
    return sys.fullPivLu().solve(rhs);
}

TEST(ReferenceDecay, MatchesTruncatedChainDecay) {
    for (const SystemParams& p : {baseline(), SystemParams{0.3, 0.05, 0.1, 1.0, 0.6, 0.5}}) {
        const Eigen::VectorXd pi = truncated_reference(p, 80);
        const double zeta = reference_decay_rate(p);
        for (int n = 30; n < 40; ++n) {
            const double ratio = (pi(2 * n + 2) + pi(2 * n + 3)) / (pi(2 * n) + pi(2 * n + 1));
            EXPECT_NEAR(ratio / zeta, 1.0, 0.01) << "level " << n;
        }
    }
}

TEST(ReferenceStationary, MatchesTruncatedChainLevels) {
    const auto levels = reference_stationary(baseline(), 30);
    const Eigen::VectorXd pi = truncated_reference(baseline(), 200);
    for (const auto& l : levels) {
        EXPECT_NEAR(l.idle, pi(2 * l.n), 1e-12);
        EXPECT_NEAR(l.busy, pi(2 * l.n + 1), 1e-12);
    }
}

TEST(ReferenceStationary, NormalizedAndGeometric) {
    const SystemParams p = baseline();
    const auto levels = reference_stationary(p, 200);
    double total = 0.0;
    for (const auto& l : levels) {
        EXPECT_GE(l.idle, 0.0);
        EXPECT_GE(l.busy, 0.0);
        total += l.idle + l.busy;
    }
    const double zeta = reference_decay_rate(p);
    EXPECT_NEAR(total, 1.0, 1e-12 + std::pow(zeta, 200));
    for (int n = 30; n < 60; ++n) {
        const double ratio = (levels[n + 1].idle + levels[n + 1].busy) /
                             (levels[n].idle + levels[n].busy);
        EXPECT_NEAR(ratio, zeta, 1e-6) << "level " << n;
    }
}

TEST(ReferenceQBD, PhaseVectorOfTheLevelChain) {
    const SystemParams p = baseline();
    const ReferenceQBD q = reference_qbd(p);
    const double u0 = p.mu, u1 = p.lambda() + p.alpha1 + p.alpha2;
    for (int c = 0; c < 2; ++c) {
        const double col = u0 * (q.up[0][c] + q.local[0][c] + q.down[0][c]) +
                           u1 * (q.up[1][c] + q.local[1][c] + q.down[1][c]);
        EXPECT_NEAR(col, 0.0, 1e-14);
    }
}

TEST(ReferenceQBD, GeneratorRowsSumToZero) {
    const ReferenceQBD q = reference_qbd(baseline());
    for (int r = 0; r < 2; ++r) {
        EXPECT_NEAR(q.local_level0[r][0] + q.local_level0[r][1] + q.up[r][0] + q.up[r][1], 0.0,
                    1e-15);
        EXPECT_NEAR(q.local_level1[r][0] + q.local_level1[r][1] + q.up[r][0] + q.up[r][1] +
                        q.down_level1[r][0] + q.down_level1[r][1],
                    0.0, 1e-15);
        EXPECT_NEAR(q.local[r][0] + q.local[r][1] + q.up[r][0] + q.up[r][1] + q.down[r][0] +
                        q.down[r][1],
                    0.0, 1e-15);
    }
}

TEST(ReferenceProperty, MeanDriftConditionIsLoadBelowOne) {
    Draws draws(61);
    for (int n = 0; n < 500; ++n) {
        SystemParams p = draws.any();
        const double rho = derive_rates(p).rho;
        const double u0 = p.mu, u1 = p.lambda() + p.alpha1 + p.alpha2;
        // Drift of the level chain, from the interior blocks written out directly.
        const double up = u1 * p.lambda();
        const double down = u0 * (p.alpha1 + p.alpha2);
        EXPECT_EQ(up < down, rho < 1.0);
        if (rho < 1.0) {
            const ReferenceQBD q = reference_qbd(p);
            const double lib_up = u0 * (q.up[0][0] + q.up[0][1]) + u1 * (q.up[1][0] + q.up[1][1]);
            const double lib_down =
                u0 * (q.down[0][0] + q.down[0][1]) + u1 * (q.down[1][0] + q.down[1][1]);
            EXPECT_LT(lib_up, lib_down);
        }
    }
}

}  // namespace
}  // namespace gjsoq
