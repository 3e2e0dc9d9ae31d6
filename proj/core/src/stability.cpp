#include "gjsoq/stability.hpp"

#include <cmath>

namespace gjsoq {

namespace {

double pooled_margin_of(const DerivedRates& d) noexcept {
    const double rho_sq = d.rho * d.rho;
    return d.lambda_hat_k[0] -
           std::abs(d.lambda_hat_k[2] - d.lambda_hat_k[1] + rho_sq * (d.mu_hat_1 - d.mu_hat_2));
}

}  // namespace

bool strongly_pooled(const DerivedRates& d) noexcept { return pooled_margin_of(d) > 0.0; }

bool strongly_balanced(const DerivedRates& d) noexcept {
    const double l0 = d.lambda_hat_k[0];
    return d.gamma2 < d.rho * (d.gamma1 + l0) && d.gamma1 < d.rho * (d.gamma2 + l0);
}

DriftVectors drift_vectors(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    const double theta = p.theta();
    const double down1 = d.mu_hat_1 / d.sigma;
    const double down2 = d.mu_hat_2 / d.sigma;

    DriftVectors out;
    out.r1 = {(p.lambda1 - down1) / theta, (p.lambda0 + p.lambda2 - down2) / theta};
    out.r2 = {(p.lambda0 + p.lambda1 - down1) / theta, (p.lambda2 - down2) / theta};
    out.h = {(p.lambda1 - d.mu_hat_1 / (d.lambda + p.alpha1)) / theta,
             (p.lambda0 + p.lambda2) / theta};
    out.v = {(p.lambda0 + p.lambda1) / theta,
             (p.lambda2 - d.mu_hat_2 / (d.lambda + p.alpha2)) / theta};
    out.d = {0.5 * (out.r1.mi + out.r2.mi), 0.5 * (out.r1.mj + out.r2.mj)};
    return out;
}

StabilityReport check_stability(const SystemParams& p) {
    StabilityReport r;
    r.rates = derive_rates(p);
    r.drifts = drift_vectors(p);
    const DerivedRates& d = r.rates;

    r.f1 = d.lambda * (p.lambda1 + p.alpha1) / d.mu_hat_1 - 1.0;
    r.f2 = d.lambda * (p.lambda2 + p.alpha2) / d.mu_hat_2 - 1.0;
    r.criterion1 = d.rho1 < 1.0 && d.rho2 < 1.0 && d.rho < 1.0;
    r.criterion2 = d.rho1 >= 1.0 && r.f1 < 0.0;
    r.criterion3 = d.rho2 >= 1.0 && r.f2 < 0.0;
    r.stable = r.criterion1 || r.criterion2 || r.criterion3;
    r.pooled_margin = pooled_margin_of(d);
    r.strongly_pooled = r.pooled_margin > 0.0;
    r.strongly_balanced = strongly_balanced(d);
    r.caveat =
        "criteria certify positive recurrence of the chain censored at busy states; "
        "transfer to the original chain is conjectured and checked only by simulation";
    return r;
}

}  // namespace gjsoq
