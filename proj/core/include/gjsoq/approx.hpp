#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gjsoq/model.hpp"

namespace gjsoq {

// Symmetric closed form: lambda1 = lambda2, alpha1 = alpha2.
struct SymmetricApprox {
    SystemParams params;
    double lambda_hat = 0.0;
    double lambda_hat_0 = 0.0;
    double lambda_hat_plus = 0.0;
    double mu_hat = 0.0;
    double gamma = 0.0;  // lambda_hat / (2 mu_hat), equals rho
    double delta = 0.0;  // off-diagonal geometric factor, in (0, 1]
    double x_plus = 0.0;
    double x_minus = 0.0;
    double A_minus = 0.0;  // solved from the boundary equation
    double c = 1.0;

    // value / rho^{i+j}; stays representable where the value underflows.
    double scaled(int i, int j, int server) const;
    double value(int i, int j, int server) const;
};

// Throws HypothesisError (NotSymmetric, Unstable).
SymmetricApprox make_symmetric(const SystemParams& p);

// Asymmetric closed form; valid under rho < 1 and strong pooling.
struct AsymmetricApprox {
    SystemParams params;
    double rho = 0.0;
    double delta_plus = 0.0;   // j > i decay per unit of j - i
    double delta_minus = 0.0;  // i > j decay per unit of i - j
    double x_plus = 0.0;
    double x_minus = 0.0;
    double y_plus = 0.0;
    double y_minus = 0.0;
    double A_minus = 0.0;
    double B_minus = 0.0;
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double diagonal = 0.0;  // coefficient of rho^{2i} on i = j
    double c = 1.0;
    std::vector<std::string> warnings;

    double scaled(int i, int j, int server) const;
    double value(int i, int j, int server) const;
    // 1 + A(x-/x+)^i or 1 + B(y-/y+)^j for the branch owning (i, j); 1 on the diagonal.
    double correction(int i, int j) const;
};

// Throws HypothesisError (Unstable, NotStronglyPooled).
AsymmetricApprox make_asymmetric(const SystemParams& p);

// A_minus obtained by solving the j = 0 boundary equation of the j > i branch
// directly; equals the printed coefficient.
double solve_boundary_coefficient(const SystemParams& p);

double approx_symmetric(const SystemParams& p, int i, int j, int server);
double approx_asymmetric(const SystemParams& p, int i, int j, int server);

struct GridCell {
    int i = 0;
    int j = 0;
    int server = 0;
    double value = 0.0;
    std::string regime_tag;
};

struct GridOptions {
    int i_max = 20;
    int j_max = 20;
    // Cells with max(i, j) below this are tagged as outside the asymptotic regime.
    int asymptotic_threshold = 10;
    // Divide by the grid total instead of using c = 1.
    bool normalize = false;
};

// Uses the symmetric evaluator on symmetric inputs, the asymmetric one otherwise.
std::vector<GridCell> approx_grid(const SystemParams& p, const GridOptions& opt);

// (k, Pr(k+1)/Pr(k)) for k = 0..k_max, Pr(k) summed over the anti-diagonal i + j = k.
std::vector<std::pair<int, double>> ratio_curve(const SystemParams& p, int k_max);

}  // namespace gjsoq
