#include "gjsoq/tail.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "gjsoq/stability.hpp"

namespace gjsoq {

namespace {

struct Hats {
    double l0, l1, l2, m1, m2, total;  // total = lambda_hat + mu_hat_1 + mu_hat_2
};

Hats hats_of(const DerivedRates& d) {
    return {d.lambda_hat_k[0], d.lambda_hat_k[1], d.lambda_hat_k[2], d.mu_hat_1, d.mu_hat_2,
            d.lambda_hat + d.mu_hat_1 + d.mu_hat_2};
}

Discriminants discriminants_of(const Hats& h, double z) {
    const double s2 = h.total * h.total;
    return {s2 - 4.0 * (h.m1 + (h.l0 + h.l2) * z) * (h.m2 / z + h.l1),
            s2 - 4.0 * (h.m2 + (h.l0 + h.l1) * z) * (h.m1 / z + h.l2)};
}

void require_real(const Discriminants& b, double z) {
    if (b.beta12 < 0.0)
        throw NumericError("discriminant beta12 negative at z=" + std::to_string(z) +
                           " (eta quadratic has no real roots)");
    if (b.beta21 < 0.0)
        throw NumericError("discriminant beta21 negative at z=" + std::to_string(z) +
                           " (theta quadratic has no real roots)");
}

double f_of(const Hats& h, double z) {
    const Discriminants b = discriminants_of(h, z);
    require_real(b, z);
    const double lo1 = h.m2 / z + h.l1;
    const double lo2 = h.m1 / z + h.l2;
    return (lo1 + 0.5 * h.l0) / (2.0 * lo1) * (1.0 - std::sqrt(b.beta12) / h.total) +
           (lo2 + 0.5 * h.l0) / (2.0 * lo2) * (1.0 - std::sqrt(b.beta21) / h.total);
}

bool both_real(const Hats& h, double z) {
    const Discriminants b = discriminants_of(h, z);
    return b.beta12 >= 0.0 && b.beta21 >= 0.0;
}

// Roots of a x^2 - s x + c = 0 with a, c > 0, computed without cancellation.
std::pair<double, double> positive_roots(double a, double s, double c, double disc) {
    const double q = s + std::sqrt(disc);
    return {2.0 * c / q, q / (2.0 * a)};
}

}  // namespace

Discriminants discriminants(const SystemParams& p, double z) {
    return discriminants_of(hats_of(derive_rates(p)), z);
}

double f_value(const SystemParams& p, double z) { return f_of(hats_of(derive_rates(p)), z); }

double solve_f(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    if (!(d.rho < 1.0))
        throw HypothesisError(Hypothesis::Unstable, "rho >= 1, no root of f(z)=1 above 1");
    const Hats h = hats_of(d);
    auto g = [&](double z) { return f_of(h, z) - 1.0; };

    double lo = 1.0 + 1e-9;
    if (!(g(lo) < 0.0)) throw NumericError("f(z) - 1 not negative just above z = 1");

    // Scan z - 1 geometrically until f - 1 changes sign or a discriminant goes negative.
    double hi = 0.0;
    double gap = 1e-6;
    while (true) {
        const double z = 1.0 + gap;
        if (z > 1e8) throw NumericError("no root of f(z)=1 found below z=1e8");
        if (!both_real(h, z)) {
            // Locate z_max, the edge of the region where both discriminants are nonnegative.
            double in = lo, out = z;
            for (int it = 0; it < 200 && out - in > 1e-15 * out; ++it) {
                const double mid = 0.5 * (in + out);
                (both_real(h, mid) ? in : out) = mid;
            }
            if (g(in) >= 0.0) {
                hi = in;
                break;
            }
            const Discriminants b = discriminants_of(h, out);
            throw NumericError(std::string("discriminant ") +
                               (b.beta12 < 0.0 ? "beta12" : "beta21") +
                               " went negative before f(z)=1 was bracketed");
        }
        if (g(z) >= 0.0) {
            hi = z;
            break;
        }
        lo = z;
        gap *= 1.5;
    }

    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

QuadraticRoots quadratic_roots(const SystemParams& p, double z) {
    const Hats h = hats_of(derive_rates(p));
    const Discriminants b = discriminants_of(h, z);
    require_real(b, z);
    QuadraticRoots r;
    std::tie(r.eta_min, r.eta_max) =
        positive_roots(h.m1 + (h.l0 + h.l2) * z, h.total, h.m2 / z + h.l1, b.beta12);
    std::tie(r.theta_min, r.theta_max) =
        positive_roots(h.m2 + (h.l0 + h.l1) * z, h.total, h.m1 / z + h.l2, b.beta21);
    return r;
}

KernelAtZ kernel_at(const SystemParams& p, double z) {
    const DerivedRates d = derive_rates(p);
    const double theta = p.theta();
    const double down1 = d.mu_hat_1 / d.sigma;
    const double down2 = d.mu_hat_2 / d.sigma;
    KernelAtZ k;
    k.neg_down = (down2 / z + p.lambda1) / theta;
    k.neg_up = (down1 + (p.lambda0 + p.lambda2) * z) / theta;
    k.diag_down = (down2 / z + p.lambda1 + 0.5 * p.lambda0) / theta;
    k.diag_up = (down1 / z + 0.5 * p.lambda0 + p.lambda2) / theta;
    k.pos_down = (down2 + (p.lambda0 + p.lambda1) * z) / theta;
    k.pos_up = (down1 / z + p.lambda2) / theta;
    k.self = 1.0 - (d.lambda + down1 + down2) / theta;
    return k;
}

DecayProfile decay_profile(const SystemParams& p) {
    const StabilityReport report = check_stability(p);
    if (!report.criterion1)
        throw HypothesisError(Hypothesis::NotCriterion1,
                              "requires rho1 < 1, rho2 < 1 and rho < 1");
    if (!report.strongly_pooled)
        throw HypothesisError(Hypothesis::NotStronglyPooled,
                              "requires lambda_hat_0 > |lambda_hat_2 - lambda_hat_1 + "
                              "rho^2 (mu_hat_1 - mu_hat_2)|");

    DecayProfile prof;
    prof.params = p;
    prof.rates = report.rates;
    const DerivedRates& d = prof.rates;
    prof.z_star = solve_f(p);
    prof.decay_rate = d.rho * d.rho;
    prof.strongly_balanced = report.strongly_balanced;
    prof.loads_dominated = std::max(d.rho1, d.rho2) < d.rho;

    const double z = 1.0 / prof.decay_rate;
    prof.roots = quadratic_roots(p, z);
    const KernelAtZ k = kernel_at(p, z);

    // The l = +-1 equations fix the two prefactors; the l = 0 equation then
    // discriminates between the four root pairs.
    const std::array<double, 2> etas{prof.roots.eta_min, prof.roots.eta_max};
    const std::array<double, 2> thetas{prof.roots.theta_min, prof.roots.theta_max};
    int best = -1;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double rn = etas[a], rp = thetas[b];
            const double cn = k.diag_down / (rn * (1.0 - k.self - rn * k.neg_up));
            const double cp = k.diag_up / (rp * (1.0 - k.self - rp * k.pos_down));
            const double res = std::abs(cn * rn * k.neg_up + k.self + cp * rp * k.pos_down - 1.0);
            const int idx = 2 * a + b;
            prof.branch_residuals[idx] = res;
            if (best < 0 || res < prof.branch_residuals[best]) best = idx;
        }
    }
    if (best != 0 || prof.branch_residuals[0] > 1e-9)
        throw NumericError("eigen-equation test did not select the (eta_min, theta_min) pair");

    const double l0 = d.lambda_hat_k[0];
    prof.ratio_neg = d.rho * d.gamma2 / (d.gamma1 + l0);
    prof.ratio_pos = d.rho * d.gamma1 / (d.gamma2 + l0);
    prof.prefactor_neg = (d.gamma2 + 0.5 * l0) / d.gamma2;
    prof.prefactor_pos = (d.gamma1 + 0.5 * l0) / d.gamma1;
    return prof;
}

double invariant_vector(const DecayProfile& profile, int l) {
    if (l == 0) return profile.x0;
    if (l < 0) return profile.prefactor_neg * profile.x0 * std::pow(profile.ratio_neg, -l);
    return profile.prefactor_pos * profile.x0 * std::pow(profile.ratio_pos, l);
}

double tail_evaluate(const DecayProfile& profile, int m, int l, int server) {
    if (m < 0) throw InputError("m must be nonnegative");
    if (server != 0 && server != 1) throw InputError("server must be 0 or 1");
    double v = std::pow(profile.decay_rate, m) * invariant_vector(profile, l);
    if (server == 0) v *= profile.params.mu / profile.rates.sigma;
    return v;
}

double eigen_residual(const DecayProfile& profile, int l) {
    const KernelAtZ k = kernel_at(profile.params, profile.z_star);
    auto x = [&](int n) { return invariant_vector(profile, n); };
    double rhs = 0.0;
    if (l <= -2)
        rhs = x(l - 1) * k.neg_up + x(l) * k.self + x(l + 1) * k.neg_down;
    else if (l == -1)
        rhs = x(-2) * k.neg_up + x(-1) * k.self + x(0) * k.diag_down;
    else if (l == 0)
        rhs = x(-1) * k.neg_up + x(0) * k.self + x(1) * k.pos_down;
    else if (l == 1)
        rhs = x(0) * k.diag_up + x(1) * k.self + x(2) * k.pos_down;
    else
        rhs = x(l - 1) * k.pos_up + x(l) * k.self + x(l + 1) * k.pos_down;
    return std::abs(rhs - x(l));
}

double marginal_sum(const DecayProfile& profile) {
    if (!profile.strongly_balanced)
        throw HypothesisError(Hypothesis::NotStronglyBalanced,
                              "the marginal series is only claimed under gamma2 < rho(gamma1 + "
                              "lambda_hat_0) and gamma1 < rho(gamma2 + lambda_hat_0)");
    const double rn = profile.ratio_neg, rp = profile.ratio_pos;
    const double series = 1.0 + profile.prefactor_neg * rn / (1.0 - rn) +
                          profile.prefactor_pos * rp / (1.0 - rp);
    return profile.x0 * series / (1.0 - profile.params.mu / profile.params.theta());
}

}  // namespace gjsoq
