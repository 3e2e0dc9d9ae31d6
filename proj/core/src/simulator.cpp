#include "gjsoq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gjsoq {

namespace {

// Uniform draws from the top 53 bits; no implementation-defined distributions.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}
    double closed_open() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double open_closed() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
    double exponential(double rate) { return -std::log(open_closed()) / rate; }

private:
    std::mt19937_64 engine_;
};

class Accumulator {
public:
    Accumulator(double horizon, double warmup_fraction, int batches)
        : horizon_(horizon),
          warm_(horizon * warmup_fraction),
          batch_len_((horizon - warm_) / batches),
          busy_(batches, 0.0),
          min_(batches, 0.0),
          total_(batches, 0.0) {}

    void add(double t0, double t1, const SimState& s) {
        if (t1 <= t0) return;
        const double total = static_cast<double>(s.n1 + s.n2);
        full_ += total * (t1 - t0);
        const double half = 0.5 * horizon_;
        if (t0 < half) half_ += total * (std::min(t1, half) - t0);

        double a = std::max(t0, warm_);
        const int last = static_cast<int>(busy_.size()) - 1;
        while (a < t1) {
            int b = static_cast<int>((a - warm_) / batch_len_);
            b = std::clamp(b, 0, last);
            const double end = b == last ? t1 : std::min(t1, warm_ + (b + 1) * batch_len_);
            const double len = end - a;
            busy_[b] += (s.busy ? 1.0 : 0.0) * len;
            min_[b] += static_cast<double>(std::min(s.n1, s.n2)) * len;
            total_[b] += total * len;
            n1_ += static_cast<double>(s.n1) * len;
            n2_ += static_cast<double>(s.n2) * len;
            abs_diff_ += static_cast<double>(std::llabs(s.n1 - s.n2)) * len;
            a = end;
        }
    }

    void finish(TrajectorySummary& out) const {
        const double span = horizon_ - warm_;
        out.mean_n1 = n1_ / span;
        out.mean_n2 = n2_ / span;
        out.mean_abs_diff = abs_diff_ / span;
        out.busy = estimate(busy_);
        out.min_orbit = estimate(min_);
        out.total = estimate(total_);
        out.total_avg_half = half_ / (0.5 * horizon_);
        out.total_avg_full = full_ / horizon_;
    }

private:
    BatchEstimate estimate(const std::vector<double>& integrals) const {
        const double n = static_cast<double>(integrals.size());
        double mean = 0.0;
        for (double v : integrals) mean += v / batch_len_;
        mean /= n;
        double ss = 0.0;
        for (double v : integrals) ss += (v / batch_len_ - mean) * (v / batch_len_ - mean);
        return {mean, std::sqrt(ss / (n - 1.0) / n)};
    }

    double horizon_, warm_, batch_len_;
    std::vector<double> busy_, min_, total_;
    double n1_ = 0.0, n2_ = 0.0, abs_diff_ = 0.0, half_ = 0.0, full_ = 0.0;
};

}  // namespace

Trajectory simulate(const SystemParams& p, const SimConfig& config) {
    validate_for_simulation(p);
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon))
        throw InputError("horizon must be a positive finite time");
    if (config.batches < 2) throw InputError("batches must be >= 2");
    if (!(config.warmup_fraction >= 0.0 && config.warmup_fraction < 1.0))
        throw InputError("warmup_fraction must lie in [0, 1)");

    Trajectory traj;
    traj.rng_algorithm = "mt19937_64; uniforms from top 53 bits; exponentials by inversion";
    traj.seed = config.seed;
    Uniform rng(config.seed);
    Accumulator acc(config.horizon, config.warmup_fraction, config.batches);

    const double lam = p.lambda();
    SimState s;
    long long next_sample = 0;
    auto record_until = [&](double t_end) {
        if (config.sample_dt <= 0.0) return;
        while (true) {
            const double ts = static_cast<double>(next_sample) * config.sample_dt;
            if (ts >= t_end || ts > config.horizon) break;
            traj.samples.push_back({ts, s.n1, s.n2, s.busy});
            ++next_sample;
        }
    };

    long long events = 0;
    while (true) {
        double rate;
        if (s.busy)
            rate = p.mu + lam;
        else
            rate = lam + (s.n1 > 0 ? p.alpha1 : 0.0) + (s.n2 > 0 ? p.alpha2 : 0.0);
        const double dt = rate > 0.0 ? rng.exponential(rate) : std::numeric_limits<double>::infinity();
        const double t_next = s.t + dt;
        if (t_next >= config.horizon) {
            record_until(std::nextafter(config.horizon, std::numeric_limits<double>::infinity()));
            acc.add(s.t, config.horizon, s);
            s.t = config.horizon;
            break;
        }
        record_until(t_next);
        acc.add(s.t, t_next, s);
        s.t = t_next;
        ++events;

        double u = rng.closed_open() * rate;
        if (s.busy) {
            if ((u -= p.mu) < 0.0) {
                s.busy = false;
            } else if ((u -= p.lambda0) < 0.0) {
                if (s.n1 < s.n2)
                    ++s.n1;
                else if (s.n2 < s.n1)
                    ++s.n2;
                else if (rng.closed_open() < 0.5)
                    ++s.n1;
                else
                    ++s.n2;
            } else if ((u -= p.lambda1) < 0.0) {
                ++s.n1;
            } else {
                ++s.n2;
            }
        } else {
            if ((u -= lam) < 0.0) {
                s.busy = true;
            } else if (s.n1 > 0 && (u -= p.alpha1) < 0.0) {
                --s.n1;
                s.busy = true;
            } else if (s.n2 > 0) {
                --s.n2;
                s.busy = true;
            } else {
                // Rounding put u past the last active clock; attribute it to orbit 1.
                --s.n1;
                s.busy = true;
            }
        }
    }

    acc.finish(traj.summary);
    traj.summary.events = events;
    traj.summary.event_rate = static_cast<double>(events) / config.horizon;
    traj.final_state = s;
    return traj;
}

std::string_view scenario_name(Scenario s) noexcept {
    switch (s) {
        case Scenario::Criterion1Pooled: return "criterion1-pooled";
        case Scenario::Criterion1Unpooled: return "criterion1-unpooled";
        case Scenario::RhoGe1: return "rho-ge-1";
        case Scenario::Criterion2Stable: return "criterion2-stable";
        case Scenario::Criterion2Unstable: return "criterion2-unstable";
        case Scenario::Criterion3Stable: return "criterion3-stable";
        case Scenario::Criterion3Unstable: return "criterion3-unstable";
        case Scenario::HeavyTrafficCollapse: return "heavy-traffic-collapse";
    }
    return "?";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : kAllScenarios)
        if (scenario_name(s) == name) return s;
    throw InputError("unknown scenario '" + std::string(name) + "'");
}

SystemParams scenario_params(Scenario s) {
    switch (s) {
        case Scenario::Criterion1Pooled: return {0.15, 0.05, 0.01, 0.44, 0.25, 0.1};
        case Scenario::Criterion1Unpooled: return {0.02, 0.3, 0.05, 1.0, 1.0, 1.0};
        case Scenario::RhoGe1: return {0.8, 0.05, 0.05, 1.0, 1.0, 1.0};
        case Scenario::Criterion2Stable: return {0.05, 0.3, 0.05, 1.0, 1.0, 3.0};
        case Scenario::Criterion2Unstable: return {0.05, 0.3, 0.05, 1.0, 0.15, 2.0};
        case Scenario::Criterion3Stable: return SystemParams{0.05, 0.3, 0.05, 1.0, 1.0, 3.0}.mirrored();
        case Scenario::Criterion3Unstable: return SystemParams{0.05, 0.3, 0.05, 1.0, 0.15, 2.0}.mirrored();
        case Scenario::HeavyTrafficCollapse: return {0.68, 0.02, 0.02, 1.0, 1.0, 1.0};
    }
    return {};
}

bool scenario_expected_stable(Scenario s) noexcept {
    return s != Scenario::RhoGe1 && s != Scenario::Criterion2Unstable &&
           s != Scenario::Criterion3Unstable;
}

RegimeDemo regime_demo(Scenario s, const SimConfig& config) {
    return regime_demo(s, scenario_params(s), config);
}

RegimeDemo regime_demo(Scenario s, const SystemParams& p, const SimConfig& config) {
    RegimeDemo demo{s, p, check_stability(p), simulate(p, config), {}, 0.0};
    const auto& sum = demo.trajectory.summary;
    demo.growth_ratio = sum.total_avg_half > 0.0 ? sum.total_avg_full / sum.total_avg_half : 1.0;
    const auto& r = demo.report;
    std::string a = std::string(scenario_name(s)) + ": rho=" + std::to_string(r.rates.rho) +
                    " rho1=" + std::to_string(r.rates.rho1) + " rho2=" + std::to_string(r.rates.rho2) +
                    " f1=" + std::to_string(r.f1) + " f2=" + std::to_string(r.f2);
    a += r.stable ? "; censored chain stable" : "; censored chain unstable";
    a += r.strongly_pooled ? ", strongly pooled" : ", not strongly pooled";
    demo.annotation = a;
    return demo;
}

}  // namespace gjsoq
