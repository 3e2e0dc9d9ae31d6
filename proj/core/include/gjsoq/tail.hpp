#pragma once

#include <array>

#include "gjsoq/model.hpp"

namespace gjsoq {

// Discriminants of the two quadratics at z; both must be >= 0 for f(z) to exist.
struct Discriminants {
    double beta12 = 0.0;
    double beta21 = 0.0;
};

Discriminants discriminants(const SystemParams& p, double z);

// f(z); throws NumericError naming the negative discriminant.
double f_value(const SystemParams& p, double z);

// Root of f(z) = 1 on (1, z_max]; requires rho < 1. Equals rho^-2.
double solve_f(const SystemParams& p);

struct QuadraticRoots {
    double eta_min = 0.0;
    double eta_max = 0.0;
    double theta_min = 0.0;
    double theta_max = 0.0;
};

// Roots of the two quadratics in eta (l < 0 side) and theta (l > 0 side) at z.
QuadraticRoots quadratic_roots(const SystemParams& p, double z);

// Entries of the transition generating kernel A*(z) seen from each zone.
// Suffix is the step in l; divided by theta.
struct KernelAtZ {
    double neg_down = 0.0;   // a_{-1}: zone "-" step l-1
    double self = 0.0;       // a_0
    double neg_up = 0.0;     // a_{+1}: zone "-" step l+1
    double diag_down = 0.0;  // c_{-1}
    double diag_up = 0.0;    // c_{+1}
    double pos_down = 0.0;   // b_{-1}
    double pos_up = 0.0;     // b_{+1}
};

KernelAtZ kernel_at(const SystemParams& p, double z);

struct DecayProfile {
    SystemParams params;
    DerivedRates rates;
    double z_star = 0.0;
    double decay_rate = 0.0;  // rho^2
    QuadraticRoots roots;
    double x0 = 1.0;
    double ratio_neg = 0.0;
    double ratio_pos = 0.0;
    double prefactor_neg = 0.0;
    double prefactor_pos = 0.0;
    bool strongly_balanced = false;
    bool loads_dominated = false;  // max(rho1, rho2) < rho
    // l = 0 eigen-equation residual of each (eta, theta) candidate pair, in the
    // order (min,min), (min,max), (max,min), (max,max); the selected pair is (min,min).
    std::array<double, 4> branch_residuals{};
};

// Throws HypothesisError (NotCriterion1 or NotStronglyPooled).
DecayProfile decay_profile(const SystemParams& p);

// x_l(rho^-2): x0 at l = 0, geometric in |l| on each side.
double invariant_vector(const DecayProfile& profile, int l);

// rho^{2m} x_l, times mu / (lambda + alpha1 + alpha2) for the idle server.
double tail_evaluate(const DecayProfile& profile, int m, int l, int server);

// |x_l - sum_k x_k A*_{k,l}(rho^-2)| using the closed-form x_l.
double eigen_residual(const DecayProfile& profile, int l);

// (1 / (1 - mu/theta)) * sum over l of x_l. Conjectural prefactor; requires
// strongly balanced, throws HypothesisError otherwise.
double marginal_sum(const DecayProfile& profile);

}  // namespace gjsoq
