// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gjsoq/gjsoq.hpp>

#include "block_censor.hpp"
#include "draws.hpp"
#include "validate.hpp"

namespace {

using namespace gjsoq;
using gjsoq::testing::Draws;
using gjsoq::testing::baseline;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

Outcome derived_rates() {
    const StabilityReport r = check_stability(baseline());
    const bool ok = round4(r.rates.rho) == 0.7636 && round4(r.rates.rho1) == 0.2545 &&
                    round4(r.rates.rho2) == 0.1273 && round4(r.pooled_margin) == 0.0679;
    return {ok, "rho=" + num(r.rates.rho) + " rho1=" + num(r.rates.rho1) + " rho2=" +
                    num(r.rates.rho2) + " pooled margin=" + num(r.pooled_margin)};
}

Outcome decay_identity() {
    Draws draws(1001);
    double worst_root = 0.0, worst_quad = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const SystemParams p = draws.stable_pooled();
        const DerivedRates d = derive_rates(p);
        const double z = 1.0 / (d.rho * d.rho);
        worst_root = std::max(worst_root, std::abs(solve_f(p) - z));
        const QuadraticRoots q = quadratic_roots(p, z);
        const double l0 = d.lambda_hat_k[0];
        const double eta_other = d.rho * d.gamma2 / (d.gamma1 + l0);
        const double theta_other = d.rho * d.gamma1 / (d.gamma2 + l0);
        // Compare as sets.
        const double e_lo = std::min(eta_other, d.rho), e_hi = std::max(eta_other, d.rho);
        const double t_lo = std::min(theta_other, d.rho), t_hi = std::max(theta_other, d.rho);
        worst_quad = std::max({worst_quad, std::abs(q.eta_min - e_lo), std::abs(q.eta_max - e_hi),
                               std::abs(q.theta_min - t_lo), std::abs(q.theta_max - t_hi)});
    }
    return {worst_root <= 1e-8 && worst_quad <= 1e-10,
            "1000 draws: max |z* - rho^-2| = " + num(worst_root) +
                " (limit 1e-8), max root deviation = " + num(worst_quad) + " (limit 1e-10)"};
}

Outcome oracle_decay() {
    const SystemParams p = baseline();
    const DerivedRates d = derive_rates(p);
    const TruncatedSolution sol = solve_stationary(p, 60);
    const MinDiffTable t = transform_min_diff(sol);
    double worst = 0.0, worst_idle = 0.0;
    for (int m = 15; m <= 25; ++m)
        for (int l = -2; l <= 2; ++l)
            worst = std::max(worst, std::abs(t.at(m + 1, l, 1) / t.at(m, l, 1) / (d.rho * d.rho) - 1.0));
    const double idle = p.mu / d.sigma;
    for (int m = 1; m <= 60; ++m)
        for (int l = -60; l <= 60; ++l)
            if (t.contains(m, l))
                worst_idle = std::max(worst_idle, std::abs(t.at(m, l, 0) / t.at(m, l, 1) / idle - 1.0));
    return {worst <= 0.02 && worst_idle <= 0.005,
            "n_max=60: max decay deviation from rho^2=" + num(d.rho * d.rho) + " is " + num(worst) +
                " (limit 0.02), max idle/busy deviation " + num(worst_idle) + " (limit 0.005)"};
}

Outcome validation_checks(const std::function<bool(const std::string&)>& pick) {
    cli::ValidationOptions opt;
    opt.run_oracle = false;
    const cli::ValidationReport report = cli::run_validation(baseline(), opt);
    Outcome out{true, ""};
    for (const auto& c : report.checks) {
        if (!pick(c.name)) continue;
        if (!c.diagnostic) out.passed = out.passed && c.passed;
        out.detail += std::string(out.detail.empty() ? "" : "; ") +
                      (c.diagnostic ? "[diagnostic] " : "") + c.name + ": " + c.detail;
    }
    return out;
}

Outcome heuristic_agreement() {
    return validation_checks([](const std::string& n) { return n.rfind("baseline", 0) == 0; });
}

Outcome ratio_reproduction() {
    return validation_checks([](const std::string& n) { return n.rfind("preset-", 0) == 0; });
}

Outcome reference_system() {
    Draws draws(1006);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const SystemParams p = draws.rho_below_one();
        worst = std::max(worst, std::abs(reference_decay_rate(p) - derive_rates(p).rho));
    }
    double worst_level = 0.0;
    for (const SystemParams& p : {baseline(), SystemParams{0.04, 0.01, 0.01, 0.44, 0.25, 0.25}}) {
        const auto levels = reference_stationary(p, 80);
        const double zeta = reference_decay_rate(p);
        for (int lvl = 30; lvl < 80; ++lvl) {
            const double ratio = (levels[lvl + 1].idle + levels[lvl + 1].busy) /
                                 (levels[lvl].idle + levels[lvl].busy);
            worst_level = std::max(worst_level, std::abs(ratio - zeta));
        }
    }
    return {worst <= 1e-10 && worst_level <= 1e-6,
            "1000 draws: max |zeta - rho| = " + num(worst) +
                " (limit 1e-10); level ratio from level 30: max |ratio - zeta| = " +
                num(worst_level) + " (limit 1e-6)"};
}

Outcome symmetric_reduction() {
    Draws draws(1007);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const SystemParams p = draws.symmetric_stable();
        const SymmetricApprox s = make_symmetric(p);
        const AsymmetricApprox a = make_asymmetric(p);
        for (int c = 0; c < 50; ++c) {
            const int i = draws.integer(0, 60), j = draws.integer(0, 60), k = draws.integer(0, 1);
            const double sv = s.value(i, j, k), av = a.value(i, j, k);
            // Scaled forms avoid comparing underflowed values.
            const double rel = sv > 1e-280 ? std::abs(sv / av - 1.0)
                                           : std::abs(s.scaled(i, j, k) / a.scaled(i, j, k) - 1.0);
            worst = std::max(worst, rel);
        }
    }
    return {worst < 1e-9, "100 sets x 50 cells: max relative error " + num(worst) + " (limit 1e-9)"};
}

Outcome simulation_consistency() {
    const SystemParams p = baseline();
    const TruncatedSolution sol = solve_stationary(p, 60);
    SimConfig cfg;
    cfg.horizon = 1e6;
    cfg.seed = 42;
    const Trajectory t = simulate(p, cfg);
    const double busy_z = std::abs(t.summary.busy.mean - sol.busy_fraction()) / t.summary.busy.std_error;
    const double min_z = std::abs(t.summary.min_orbit.mean - sol.mean_min()) / t.summary.min_orbit.std_error;
    return {busy_z <= 3.0 && min_z <= 3.0,
            "horizon 1e6 seed 42 (" + std::to_string(t.summary.events) + " events): busy " +
                num(t.summary.busy.mean) + " vs " + num(sol.busy_fraction()) + " (" + num(busy_z) +
                " SE), E[min] " + num(t.summary.min_orbit.mean) + " vs " + num(sol.mean_min()) +
                " (" + num(min_z) + " SE), limit 3 SE"};
}

Outcome regime_suite() {
    const Scenario suite[] = {Scenario::Criterion1Pooled,   Scenario::RhoGe1,
                              Scenario::Criterion2Stable,   Scenario::Criterion2Unstable,
                              Scenario::Criterion3Stable,   Scenario::Criterion3Unstable,
                              Scenario::Criterion1Unpooled};
    SimConfig cfg;
    cfg.horizon = 1e6;
    cfg.seed = 42;
    Outcome out{true, ""};
    for (Scenario s : suite) {
        const RegimeDemo d = regime_demo(s, cfg);
        const bool expect_stable = scenario_expected_stable(s);
        const bool ok = d.report.stable == expect_stable &&
                        (expect_stable ? d.growth_ratio < 1.25 : d.growth_ratio >= 1.25);
        out.passed = out.passed && ok;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + std::string(scenario_name(s)) +
                      " growth " + num(d.growth_ratio) + (ok ? "" : " (wrong)");
    }
    out.detail += "; stable < 1.25 <= unstable";
    return out;
}

Outcome kernel_correctness() {
    double worst_block = 0.0;
    constexpr int n = 30;
    for (const SystemParams& p : {baseline(), SystemParams{0.3, 0.0, 0.12, 1.1, 0.7, 0.2}}) {
        const Eigen::MatrixXd pe = gjsoq::testing::censor_by_blocks(p, n);
        const CensoredKernel k = censored_kernel(p);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j + 1 < n; ++j) {
                std::map<int, double> expected;
                for (const auto& e : k.at(region_of(i, j)))
                    expected[(i + e.di) * n + (j + e.dj)] += e.probability;
                for (int c = 0; c < n * n; ++c) {
                    const auto it = expected.find(c);
                    const double want = it == expected.end() ? 0.0 : it->second;
                    worst_block = std::max(worst_block, std::abs(pe(i * n + j, c) - want));
                }
            }
    }
    double worst_image = 0.0;
    const SystemParams p = baseline();
    const CensoredKernel k = censored_kernel(p);
    const HalfPlaneKernel h = halfplane_kernel(p);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const int m = std::min(i, j), l = j - i;
            std::map<std::pair<int, int>, double> image;
            for (const auto& e : k.at(region_of(i, j))) {
                const int i2 = i + e.di, j2 = j + e.dj;
                image[{std::min(i2, j2) - m, (j2 - i2) - l}] += e.probability;
            }
            const Zone z = zone_of(m, l);
            double total = 0.0;
            for (const auto& e : h.at(z)) total += e.probability;
            double covered = 0.0;
            for (const auto& [step, prob] : image) {
                worst_image = std::max(worst_image, std::abs(h.probability(z, step.first, step.second) - prob));
                covered += prob;
            }
            worst_image = std::max(worst_image, std::abs(total - covered));
        }
    return {worst_block <= 1e-12 && worst_image <= 1e-15,
            "30x30 block censoring max deviation " + num(worst_block) +
                " (limit 1e-12); 20x20 half-plane image max deviation " + num(worst_image)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"derived-rate reproduction", derived_rates},
        {"decay-rate identity", decay_identity},
        {"oracle-vs-theorem decay", oracle_decay},
        {"heuristic-vs-asymptotic agreement", heuristic_agreement},
        {"ratio reproduction", ratio_reproduction},
        {"reference system", reference_system},
        {"symmetric reduction", symmetric_reduction},
        {"simulation-oracle consistency", simulation_consistency},
        {"stability-regime suite", regime_suite},
        {"kernel correctness", kernel_correctness},
    };
    int failures = 0;
    for (size_t n = 0; n < criteria.size(); ++n) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.passed;
        std::printf("%s %zu %s: %s [%.2fs]\n", o.passed ? "PASS" : "FAIL", n + 1,
                    criteria[n].first.c_str(), o.detail.c_str(), secs);
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
