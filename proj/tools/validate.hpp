#pragma once

#include <string>
#include <vector>

#include <gjsoq/model.hpp>

namespace gjsoq::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool diagnostic = false;  // reported, never fails the run
    std::string detail;
};

struct ValidationOptions {
    int n_max = 60;
    bool run_oracle = true;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

SystemParams baseline_params();
bool is_baseline(const SystemParams& p);

// baseline comparison, preset ratio curves, ratio limit and oracle decay check.
// Throws HypothesisError when p is outside the closed forms' domain.
ValidationReport run_validation(const SystemParams& p, const ValidationOptions& opt);

}  // namespace gjsoq::cli
