#pragma once

#include <stdexcept>
#include <string>

namespace gjsoq {

// Malformed or out-of-domain input (bad rates, missing fields, bad options).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Hypothesis {
    NotCriterion1,
    NotStronglyPooled,
    NotStronglyBalanced,
    NotSymmetric,
    Unstable,
};

const char* hypothesis_name(Hypothesis h);

// A closed form was requested outside the region where it is defined.
class HypothesisError : public std::domain_error {
public:
    HypothesisError(Hypothesis which, const std::string& detail)
        : std::domain_error(std::string(hypothesis_name(which)) + ": " + detail), which_(which) {}

    Hypothesis which() const noexcept { return which_; }

private:
    Hypothesis which_;
};

// Numerical procedure could not produce a result (bracket lost, singular system).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gjsoq
