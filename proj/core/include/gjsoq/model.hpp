#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "gjsoq/errors.hpp"

namespace gjsoq {

// Exogenous rates of the two-orbit system. lambda0 feeds the smart stream
// (blocked jobs join the shorter orbit, ties split 1/2); lambda1/lambda2 are
// dedicated streams; alpha1/alpha2 are constant retrial rates.
struct SystemParams {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double mu = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;

    double lambda() const noexcept { return lambda0 + lambda1 + lambda2; }
    // Uniformization constant.
    double theta() const noexcept { return lambda() + mu + alpha1 + alpha2; }

    SystemParams scaled(double factor) const noexcept {
        return {lambda0 * factor, lambda1 * factor, lambda2 * factor,
                mu * factor,      alpha1 * factor,  alpha2 * factor};
    }
    SystemParams mirrored() const noexcept {
        return {lambda0, lambda2, lambda1, mu, alpha2, alpha1};
    }
};

// Throws InputError naming the first violated field.
void validate(const SystemParams& p);

// Weaker check used by the simulator: finite, nonnegative arrivals, positive mu/alpha.
void validate_for_simulation(const SystemParams& p);

bool is_symmetric(const SystemParams& p, double rel_tol = 1e-12) noexcept;

// Hatted quantities. Every field is homogeneous of degree 2 (rates squared)
// or 0 (the loads), so dimensionless outputs are invariant under rescaling.
struct DerivedRates {
    double lambda = 0.0;
    double sigma = 0.0;  // lambda + alpha1 + alpha2
    double lambda_hat = 0.0;
    std::array<double, 3> lambda_hat_k{};
    double mu_hat_1 = 0.0;
    double mu_hat_2 = 0.0;
    double rho = 0.0;
    double rho1 = 0.0;  // 0 when lambda1 == 0
    double rho2 = 0.0;  // 0 when lambda2 == 0
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

DerivedRates derive_rates(const SystemParams& p);

enum class Region { R1, R2, D, H, V, O };

inline constexpr std::array<Region, 6> kAllRegions{Region::R1, Region::R2, Region::D,
                                                   Region::H,  Region::V,  Region::O};

// r1: i>j>0, r2: j>i>0, d: i=j>0, h: j=0<i, v: i=0<j, O: origin.
Region region_of(int i, int j);
std::string_view region_name(Region r) noexcept;

using Mat2 = std::array<std::array<double, 2>, 2>;

// Uniformized one-step block: rows/cols indexed by server state (0 idle, 1 busy).
struct TransitionBlock {
    int di = 0;
    int dj = 0;
    Mat2 matrix{};
};

// All blocks of the given region divided by theta; their sum is row-stochastic.
std::vector<TransitionBlock> transition_blocks(const SystemParams& p, Region region);

}  // namespace gjsoq
