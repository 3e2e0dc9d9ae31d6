#include "gjsoq/reference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gjsoq/errors.hpp"

namespace gjsoq {

namespace {

using M2 = Eigen::Matrix2d;

M2 to_eigen(const Mat2& m) {
    M2 e;
    e << m[0][0], m[0][1], m[1][0], m[1][1];
    return e;
}

Mat2 from_eigen(const M2& e) { return {{{e(0, 0), e(0, 1)}, {e(1, 0), e(1, 1)}}}; }

}  // namespace

ReferenceQBD reference_qbd(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    if (!(d.lambda_hat < d.mu_hat_1 + d.mu_hat_2))
        throw HypothesisError(Hypothesis::Unstable,
                              "reference system requires lambda_hat < mu_hat_1 + mu_hat_2");
    const double lam = d.lambda, mu = p.mu, a1 = p.alpha1, a = p.alpha1 + p.alpha2;

    ReferenceQBD q;
    q.up = {{{0.0, 0.0}, {0.0, lam}}};
    q.local_level0 = {{{-lam, lam}, {mu, -(lam + mu)}}};
    q.local_level1 = {{{-(lam + a1), lam}, {mu, -(lam + mu)}}};
    q.local = {{{-(lam + a), lam}, {mu, -(lam + mu)}}};
    q.down_level1 = {{{0.0, a1}, {0.0, 0.0}}};
    q.down = {{{0.0, a}, {0.0, 0.0}}};

    const M2 up = to_eigen(q.up), local = to_eigen(q.local), down = to_eigen(q.down);
    M2 R = M2::Zero();
    for (q.r_iterations = 1; q.r_iterations <= 100000; ++q.r_iterations) {
        const M2 next = up * (-local - R * down).inverse();
        const double change = (next - R).cwiseAbs().maxCoeff();
        R = next;
        if (change < 1e-14) break;
    }
    if (q.r_iterations > 100000) throw NumericError("R iteration did not converge in 1e5 steps");
    q.R = from_eigen(R);
    q.zeta = R.eigenvalues().cwiseAbs().maxCoeff();
    return q;
}

double reference_determinant(const ReferenceQBD& q, double z) {
    const M2 m = to_eigen(q.up) + to_eigen(q.local) * z + to_eigen(q.down) * z * z;
    return m.determinant();
}

double reference_decay_rate(const SystemParams& p) {
    const ReferenceQBD q = reference_qbd(p);
    constexpr int kSteps = 4096;
    const double edge = 1e-12;
    double lo = edge;
    double f_lo = reference_determinant(q, lo);
    for (int s = 1; s <= kSteps; ++s) {
        const double hi = edge + (1.0 - 2.0 * edge) * s / kSteps;
        const double f_hi = reference_determinant(q, hi);
        if (f_lo == 0.0) return lo;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo, b = hi;
            for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = reference_determinant(q, mid);
                if ((fm < 0.0) == (f_lo < 0.0))
                    a = mid;
                else
                    b = mid;
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
    throw NumericError("no root of the reference determinant in (0, 1)");
}

std::vector<LevelProbability> reference_stationary(const SystemParams& p, int n_max) {
    if (n_max < 1) throw InputError("n_max must be >= 1");
    const ReferenceQBD q = reference_qbd(p);
    const M2 R = to_eigen(q.R);
    const M2 I = M2::Identity();

    // [pi0 pi1] B = 0 with B = [[L0^(0), up], [down^(0), L0^(1) + R down]].
    Eigen::Matrix4d B;
    B.block<2, 2>(0, 0) = to_eigen(q.local_level0);
    B.block<2, 2>(0, 2) = to_eigen(q.up);
    B.block<2, 2>(2, 0) = to_eigen(q.down_level1);
    B.block<2, 2>(2, 2) = to_eigen(q.local_level1) + R * to_eigen(q.down);

    // Transpose to column form and swap one balance equation for normalization.
    Eigen::Matrix4d A = B.transpose();
    const Eigen::Vector2d tail_mass = (I - R).inverse() * Eigen::Vector2d::Ones();
    A.row(0) << 1.0, 1.0, tail_mass(0), tail_mass(1);
    Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
    rhs(0) = 1.0;
    const Eigen::Vector4d x = A.fullPivLu().solve(rhs);

    std::vector<LevelProbability> out;
    out.push_back({0, x(0), x(1)});
    Eigen::RowVector2d level(x(2), x(3));
    for (int n = 1; n <= n_max; ++n) {
        out.push_back({n, level(0), level(1)});
        level = level * R;
    }
    return out;
}

}  // namespace gjsoq
