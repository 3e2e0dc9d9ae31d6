#include "gjsoq/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gjsoq {

const char* hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::NotCriterion1: return "not stable by criterion 1";
        case Hypothesis::NotStronglyPooled: return "not strongly pooled";
        case Hypothesis::NotStronglyBalanced: return "not strongly balanced";
        case Hypothesis::NotSymmetric: return "not symmetric";
        case Hypothesis::Unstable: return "unstable";
    }
    return "unknown hypothesis";
}

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InputError(std::string(name) + " must be finite");
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) throw InputError(std::string(name) + " must be > 0, got " + std::to_string(v));
}

void require_nonnegative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) throw InputError(std::string(name) + " must be >= 0, got " + std::to_string(v));
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void validate_for_simulation(const SystemParams& p) {
    require_nonnegative(p.lambda0, "lambda0");
    require_nonnegative(p.lambda1, "lambda1");
    require_nonnegative(p.lambda2, "lambda2");
    require_positive(p.mu, "mu");
    require_positive(p.alpha1, "alpha1");
    require_positive(p.alpha2, "alpha2");
}

void validate(const SystemParams& p) {
    validate_for_simulation(p);
    if (p.lambda0 == 0.0 && !(p.lambda1 > 0.0 && p.lambda2 > 0.0))
        throw InputError("lambda0 may be 0 only when lambda1 and lambda2 are both > 0");
}

bool is_symmetric(const SystemParams& p, double rel_tol) noexcept {
    return close_rel(p.lambda1, p.lambda2, rel_tol) && close_rel(p.alpha1, p.alpha2, rel_tol);
}

DerivedRates derive_rates(const SystemParams& p) {
    validate(p);
    DerivedRates d;
    d.lambda = p.lambda();
    d.sigma = d.lambda + p.alpha1 + p.alpha2;
    d.lambda_hat = d.lambda * d.sigma;
    d.lambda_hat_k = {p.lambda0 * d.sigma, p.lambda1 * d.sigma, p.lambda2 * d.sigma};
    d.mu_hat_1 = p.mu * p.alpha1;
    d.mu_hat_2 = p.mu * p.alpha2;
    d.rho = d.lambda_hat / (d.mu_hat_1 + d.mu_hat_2);
    d.rho1 = p.lambda1 > 0.0 ? d.lambda_hat_k[1] / d.mu_hat_1 : 0.0;
    d.rho2 = p.lambda2 > 0.0 ? d.lambda_hat_k[2] / d.mu_hat_2 : 0.0;
    const double rho_sq = d.rho * d.rho;
    d.gamma1 = d.mu_hat_1 * rho_sq + d.lambda_hat_k[2];
    d.gamma2 = d.mu_hat_2 * rho_sq + d.lambda_hat_k[1];
    return d;
}

Region region_of(int i, int j) {
    if (i < 0 || j < 0) throw InputError("lattice point outside the nonnegative quadrant");
    if (i == 0 && j == 0) return Region::O;
    if (j == 0) return Region::H;
    if (i == 0) return Region::V;
    if (i > j) return Region::R1;
    if (j > i) return Region::R2;
    return Region::D;
}

std::string_view region_name(Region r) noexcept {
    switch (r) {
        case Region::R1: return "r1";
        case Region::R2: return "r2";
        case Region::D: return "d";
        case Region::H: return "h";
        case Region::V: return "v";
        case Region::O: return "O";
    }
    return "?";
}

std::vector<TransitionBlock> transition_blocks(const SystemParams& p, Region region) {
    validate(p);
    const double theta = p.theta();
    const double lam = p.lambda();

    // Blocked arrivals (busy -> busy) by which orbit the smart stream joins.
    double to_orbit1 = p.lambda1;
    double to_orbit2 = p.lambda2;
    switch (region) {
        case Region::R1:
        case Region::H: to_orbit2 += p.lambda0; break;
        case Region::R2:
        case Region::V: to_orbit1 += p.lambda0; break;
        case Region::D:
        case Region::O:
            to_orbit1 += 0.5 * p.lambda0;
            to_orbit2 += 0.5 * p.lambda0;
            break;
    }
    const bool retry1 = region == Region::R1 || region == Region::R2 || region == Region::D ||
                        region == Region::H;
    const bool retry2 = region == Region::R1 || region == Region::R2 || region == Region::D ||
                        region == Region::V;

    std::vector<TransitionBlock> blocks;
    blocks.push_back({1, 0, {{{0.0, 0.0}, {0.0, to_orbit1 / theta}}}});
    blocks.push_back({0, 1, {{{0.0, 0.0}, {0.0, to_orbit2 / theta}}}});
    if (retry1) blocks.push_back({-1, 0, {{{0.0, p.alpha1 / theta}, {0.0, 0.0}}}});
    if (retry2) blocks.push_back({0, -1, {{{0.0, p.alpha2 / theta}, {0.0, 0.0}}}});

    // Idle self-loop absorbs the retrial clocks of empty orbits.
    const double idle_self = p.mu + (retry1 ? 0.0 : p.alpha1) + (retry2 ? 0.0 : p.alpha2);
    blocks.push_back({0, 0,
                      {{{idle_self / theta, lam / theta},
                        {p.mu / theta, (p.alpha1 + p.alpha2) / theta}}}});
    return blocks;
}

}  // namespace gjsoq
