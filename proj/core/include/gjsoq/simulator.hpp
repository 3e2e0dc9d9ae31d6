#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gjsoq/model.hpp"
#include "gjsoq/stability.hpp"

namespace gjsoq {

struct SimState {
    long long n1 = 0;
    long long n2 = 0;
    bool busy = false;
    double t = 0.0;
};

struct SimConfig {
    double horizon = 1e6;
    std::uint64_t seed = 1;
    double sample_dt = 0.0;  // <= 0 disables snapshots
    double warmup_fraction = 0.5;
    int batches = 20;
};

struct Sample {
    double t = 0.0;
    long long n1 = 0;
    long long n2 = 0;
    bool busy = false;
};

struct BatchEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Time averages over [warmup, horizon] unless stated otherwise.
struct TrajectorySummary {
    double mean_n1 = 0.0;
    double mean_n2 = 0.0;
    double mean_abs_diff = 0.0;
    BatchEstimate busy;
    BatchEstimate min_orbit;
    BatchEstimate total;
    // Time-average of n1 + n2 over [0, T/2] and [0, T].
    double total_avg_half = 0.0;
    double total_avg_full = 0.0;
    long long events = 0;
    double event_rate = 0.0;
};

struct Trajectory {
    std::vector<Sample> samples;
    TrajectorySummary summary;
    SimState final_state;
    std::string rng_algorithm;
    std::uint64_t seed = 0;
};

// Exact event-driven run from the empty, idle state. Deterministic given config.
Trajectory simulate(const SystemParams& p, const SimConfig& config);

enum class Scenario {
    Criterion1Pooled,
    Criterion1Unpooled,
    RhoGe1,
    Criterion2Stable,
    Criterion2Unstable,
    Criterion3Stable,
    Criterion3Unstable,
    HeavyTrafficCollapse,
};

inline constexpr Scenario kAllScenarios[] = {
    Scenario::Criterion1Pooled,   Scenario::Criterion1Unpooled, Scenario::RhoGe1,
    Scenario::Criterion2Stable,   Scenario::Criterion2Unstable, Scenario::Criterion3Stable,
    Scenario::Criterion3Unstable, Scenario::HeavyTrafficCollapse,
};

std::string_view scenario_name(Scenario s) noexcept;
Scenario parse_scenario(std::string_view name);  // throws InputError
SystemParams scenario_params(Scenario s);
// True when the scenario's orbits are expected to stay bounded.
bool scenario_expected_stable(Scenario s) noexcept;

struct RegimeDemo {
    Scenario scenario;
    SystemParams params;
    StabilityReport report;
    Trajectory trajectory;
    std::string annotation;
    double growth_ratio = 0.0;  // total_avg_full / total_avg_half
};

RegimeDemo regime_demo(Scenario s, const SimConfig& config);
RegimeDemo regime_demo(Scenario s, const SystemParams& p, const SimConfig& config);

}  // namespace gjsoq
