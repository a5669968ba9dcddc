#pragma once

#include <stdexcept>
#include <string>

namespace nblab {

// Exit-code mapping used by the CLI: usage errors -> 2,
// numeric/conditioning errors -> 3, precision failures -> 4.

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : NumericError {
    using NumericError::NumericError;
};

struct ConditioningError : NumericError {
    double cond_estimate;
    ConditioningError(const std::string& msg, double cond)
        : NumericError(msg), cond_estimate(cond) {}
};

struct PrecisionError : std::runtime_error {
    double achieved_bound;
    PrecisionError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_bound(achieved) {}
};

}  // namespace nblab
