#pragma once

#include <string>

#include "gjsoq/model.hpp"

namespace gjsoq {

// Mean one-step displacement of the censored chain, divided by theta.
struct Drift {
    double mi = 0.0;
    double mj = 0.0;
};

struct DriftVectors {
    Drift r1;
    Drift r2;
    Drift h;
    Drift v;
    Drift d;  // componentwise mean of r1 and r2
};

DriftVectors drift_vectors(const SystemParams& p);

struct StabilityReport {
    DerivedRates rates;
    DriftVectors drifts;
    bool criterion1 = false;  // rho1 < 1, rho2 < 1, rho < 1
    bool criterion2 = false;  // rho1 >= 1, f1 < 0
    bool criterion3 = false;  // rho2 >= 1, f2 < 0
    double f1 = 0.0;
    double f2 = 0.0;
    bool stable = false;
    bool strongly_pooled = false;
    bool strongly_balanced = false;
    // lambda_hat_0 - |lambda_hat_2 - lambda_hat_1 + rho^2 (mu_hat_1 - mu_hat_2)|, rate^2 units.
    double pooled_margin = 0.0;
    std::string caveat;
};

// Strict inequalities throughout: rho == 1 or f == 0 is unstable.
StabilityReport check_stability(const SystemParams& p);

bool strongly_pooled(const DerivedRates& d) noexcept;
bool strongly_balanced(const DerivedRates& d) noexcept;

}  // namespace gjsoq
