#include "gjsoq/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "gjsoq/stability.hpp"

namespace gjsoq {

namespace {

double idle_factor(const SystemParams& p, int i, int j) {
    return p.mu / (p.lambda() + (i > 0 ? p.alpha1 : 0.0) + (j > 0 ? p.alpha2 : 0.0));
}

void check_cell(int i, int j, int server) {
    if (i < 0 || j < 0) throw InputError("cell indices must be nonnegative");
    if (server != 0 && server != 1) throw InputError("server must be 0 or 1");
}

}  // namespace

SymmetricApprox make_symmetric(const SystemParams& p) {
    validate(p);
    if (!is_symmetric(p))
        throw HypothesisError(Hypothesis::NotSymmetric,
                              "lambda1 != lambda2 or alpha1 != alpha2; use the asymmetric form");
    SymmetricApprox s;
    s.params = p;
    const double lam = p.lambda();
    const double alpha = p.alpha1;
    const double lam_plus = p.lambda1;
    const double sigma = lam + 2.0 * alpha;
    s.lambda_hat = lam * sigma;
    s.lambda_hat_0 = p.lambda0 * sigma;
    s.lambda_hat_plus = lam_plus * sigma;
    s.mu_hat = alpha * p.mu;
    if (!(s.lambda_hat < 2.0 * s.mu_hat))
        throw HypothesisError(Hypothesis::Unstable, "requires lambda_hat < 2 mu_hat");

    s.gamma = s.lambda_hat / (2.0 * s.mu_hat);
    const double lh2 = s.lambda_hat * s.lambda_hat;
    s.delta = (lh2 + 4.0 * s.lambda_hat_plus * s.mu_hat) /
              (lh2 + 4.0 * (s.lambda_hat_0 + s.lambda_hat_plus) * s.mu_hat);
    s.x_plus = s.gamma / s.delta;
    s.x_minus = (s.lambda_hat_0 + s.lambda_hat_plus) / (s.mu_hat * s.x_plus);

    // Boundary equation on the edge next to the empty orbit.
    const double w = s.gamma * s.delta;
    const double a = lam * (lam + alpha) + s.mu_hat - s.mu_hat * w - lam_plus * (lam + alpha) / w;
    const double b = s.mu_hat * (lam + alpha) / sigma;
    s.A_minus = (b * s.x_plus - a) / (a - b * s.x_minus);
    return s;
}

double SymmetricApprox::scaled(int i, int j, int server) const {
    check_cell(i, j, server);
    double v;
    if (i == j) {
        const double lh2 = lambda_hat * lambda_hat;
        v = (lh2 + 4.0 * lambda_hat_plus * mu_hat) / (lambda_hat * (lambda_hat + 2.0 * mu_hat));
    } else {
        const int low = std::min(i, j);
        v = std::pow(delta, std::abs(j - i)) *
            (1.0 + A_minus * std::pow(x_minus / x_plus, low));
    }
    v *= c;
    if (server == 0) v *= idle_factor(params, i, j);
    return v;
}

double SymmetricApprox::value(int i, int j, int server) const {
    return scaled(i, j, server) * std::pow(gamma, i + j);
}

double solve_boundary_coefficient(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    const double rho = d.rho, rho_sq = rho * rho;
    const double lam = d.lambda;
    const double delta_plus = (d.lambda_hat_k[2] + rho_sq * d.mu_hat_1) /
                              (d.lambda_hat_k[0] + d.lambda_hat_k[1] + rho_sq * d.mu_hat_2);
    const double x_plus = rho / delta_plus;
    const double x_minus =
        (d.lambda_hat_k[0] + d.lambda_hat_k[1]) * (d.lambda_hat_k[2] + rho_sq * d.mu_hat_1) /
        (d.mu_hat_1 * rho * (d.lambda_hat_k[0] + d.lambda_hat_k[1] + rho_sq * d.mu_hat_2));
    const double w = rho * delta_plus;
    const double a = lam * (lam + p.alpha2) + d.mu_hat_2 - d.mu_hat_2 * w -
                     p.lambda2 * (lam + p.alpha2) / w;
    const double b = d.mu_hat_1 * (lam + p.alpha2) / d.sigma;
    return (b * x_plus - a) / (a - b * x_minus);
}

AsymmetricApprox make_asymmetric(const SystemParams& p) {
    const StabilityReport report = check_stability(p);
    const DerivedRates& d = report.rates;
    if (!(d.rho < 1.0)) throw HypothesisError(Hypothesis::Unstable, "requires rho < 1");
    if (!report.strongly_pooled)
        throw HypothesisError(Hypothesis::NotStronglyPooled,
                              "requires lambda_hat_0 > |rho^2 (mu_hat_2 - mu_hat_1) + "
                              "lambda_hat_1 - lambda_hat_2|");

    AsymmetricApprox s;
    s.params = p;
    s.rho = d.rho;
    const double r = d.rho, r2 = r * r;
    const double L = d.lambda_hat, L0 = d.lambda_hat_k[0], L1 = d.lambda_hat_k[1],
                 L2 = d.lambda_hat_k[2];
    const double M1 = d.mu_hat_1, M2 = d.mu_hat_2;
    const double lam = d.lambda, sigma = d.sigma;

    s.delta_plus = (L2 + r2 * M1) / (L0 + L1 + r2 * M2);
    s.delta_minus = (L1 + r2 * M2) / (L0 + L2 + r2 * M1);
    s.x_plus = r / s.delta_plus;
    s.x_minus = (L0 + L1) * (L2 + r2 * M1) / (M1 * r * (L0 + L1 + r2 * M2));
    s.y_plus = r / s.delta_minus;
    s.y_minus = (L0 + L2) * (L1 + r2 * M2) / (M2 * r * (L0 + L2 + r2 * M1));
    s.eps_plus = (L2 + M1 * r2) * (L0 + 2.0 * L1 + 2.0 * M2 * r2) / (2.0 * r2);
    s.eps_minus = (L1 + M2 * r2) * (L0 + 2.0 * L2 + 2.0 * M1 * r2) / (2.0 * r2);

    const double xp = s.x_plus, yp = s.y_plus;
    const double la2 = lam + p.alpha2, la1 = lam + p.alpha1;
    s.A_minus = (xp * xp * (M1 * la2 / sigma + p.lambda2 * la2 / r2) - xp * (lam * la2 + M2) +
                 r2 * M2) /
                (xp * (lam * la2 + M2) - ((p.lambda0 + p.lambda1) * la2 + r2 * M2) -
                 p.lambda2 * la2 / r2 * xp * xp);
    s.B_minus = (yp * yp * (M2 * la1 / sigma + p.lambda1 * la1 / r2) - yp * (lam * la1 + M1) +
                 r2 * M1) /
                (yp * (lam * la1 + M1) - ((p.lambda0 + p.lambda2) * la1 + r2 * M1) -
                 p.lambda1 * la1 / r2 * yp * yp);

    const double root = std::sqrt(s.eps_plus / s.eps_minus);
    s.diagonal = (L1 + r2 * M2) / (L * (1.0 + r)) * root + (L2 + r2 * M1) / (L * (1.0 + r)) / root;

    if (!(s.x_minus < s.x_plus))
        s.warnings.push_back("x_minus/x_plus >= 1: j > i correction does not decay in i");
    if (!(s.y_minus < s.y_plus))
        s.warnings.push_back("y_minus/y_plus >= 1: i > j correction does not decay in j");
    if (!(1.0 + s.A_minus > 0.0))
        s.warnings.push_back("1 + A_minus <= 0: nonpositive values on the edge i = 0");
    if (!(1.0 + s.B_minus > 0.0))
        s.warnings.push_back("1 + B_minus <= 0: nonpositive values on the edge j = 0");
    return s;
}

double AsymmetricApprox::correction(int i, int j) const {
    if (j > i) return 1.0 + A_minus * std::pow(x_minus / x_plus, i);
    if (i > j) return 1.0 + B_minus * std::pow(y_minus / y_plus, j);
    return 1.0;
}

double AsymmetricApprox::scaled(int i, int j, int server) const {
    check_cell(i, j, server);
    double v;
    if (j > i)
        v = std::sqrt(eps_minus / eps_plus) * std::pow(delta_plus, j - i) * correction(i, j);
    else if (i > j)
        v = std::sqrt(eps_plus / eps_minus) * std::pow(delta_minus, i - j) * correction(i, j);
    else
        v = diagonal;
    v *= c;
    if (server == 0) v *= idle_factor(params, i, j);
    return v;
}

double AsymmetricApprox::value(int i, int j, int server) const {
    return scaled(i, j, server) * std::pow(rho, i + j);
}

double approx_symmetric(const SystemParams& p, int i, int j, int server) {
    return make_symmetric(p).value(i, j, server);
}

double approx_asymmetric(const SystemParams& p, int i, int j, int server) {
    return make_asymmetric(p).value(i, j, server);
}

namespace {

struct Evaluator {
    std::function<double(int, int, int)> scaled;
    std::function<double(int, int)> correction;
    double rho = 0.0;
};

Evaluator evaluator_for(const SystemParams& p) {
    validate(p);
    if (is_symmetric(p)) {
        auto s = std::make_shared<SymmetricApprox>(make_symmetric(p));
        return {[s](int i, int j, int k) { return s->scaled(i, j, k); },
                [s](int i, int j) {
                    return i == j ? 1.0
                                  : 1.0 + s->A_minus * std::pow(s->x_minus / s->x_plus,
                                                                std::min(i, j));
                },
                s->gamma};
    }
    auto s = std::make_shared<AsymmetricApprox>(make_asymmetric(p));
    return {[s](int i, int j, int k) { return s->scaled(i, j, k); },
            [s](int i, int j) { return s->correction(i, j); }, s->rho};
}

}  // namespace

std::vector<GridCell> approx_grid(const SystemParams& p, const GridOptions& opt) {
    if (opt.i_max < 0 || opt.j_max < 0) throw InputError("grid extents must be nonnegative");
    const Evaluator ev = evaluator_for(p);
    std::vector<GridCell> cells;
    double total = 0.0;
    for (int i = 0; i <= opt.i_max; ++i) {
        for (int j = 0; j <= opt.j_max; ++j) {
            std::string tag =
                std::max(i, j) >= opt.asymptotic_threshold ? "asymptotic" : "pre-asymptotic";
            if (!(ev.correction(i, j) > 0.0)) tag = "nonpositive-correction";
            for (int k = 0; k <= 1; ++k) {
                const double v = ev.scaled(i, j, k) * std::pow(ev.rho, i + j);
                total += v;
                cells.push_back({i, j, k, v, tag});
            }
        }
    }
    if (opt.normalize && total > 0.0)
        for (auto& c : cells) c.value /= total;
    return cells;
}

std::vector<std::pair<int, double>> ratio_curve(const SystemParams& p, int k_max) {
    if (k_max < 0) throw InputError("k_max must be nonnegative");
    const Evaluator ev = evaluator_for(p);
    // Pr(k) / rho^k, so that the ratio survives where Pr(k) underflows.
    auto scaled_mass = [&](int k) {
        double sum = 0.0;
        for (int i = 0; i <= k; ++i) sum += ev.scaled(i, k - i, 0) + ev.scaled(i, k - i, 1);
        return sum;
    };
    std::vector<std::pair<int, double>> out;
    double current = scaled_mass(0);
    for (int k = 0; k <= k_max; ++k) {
        const double next = scaled_mass(k + 1);
        out.emplace_back(k, ev.rho * next / current);
        current = next;
    }
    return out;
}

}  // namespace gjsoq
