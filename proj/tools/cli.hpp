#pragma once

#include <string>
#include <vector>

namespace gjsoq::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kHypothesisViolation = 3,
    kValidationFailure = 4,
};

// args[0] is the program name. Never throws; returns an ExitCode.
int run(const std::vector<std::string>& args);

}  // namespace gjsoq::cli
