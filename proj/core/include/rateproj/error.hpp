#ifndef RATEPROJ_ERROR_HPP_
#define RATEPROJ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rateproj {

// Base class for all failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails a structural precondition (wrong length, empty, too short).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// A rate or derived quantity is non-finite, nonpositive, or out of range.
class InvalidRateError : public Error {
public:
    using Error::Error;
};

// Not enough usable data points for a fit or an estimate.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// No time variation in the data; k(t) is identically zero.
class DegenerateTrendError : public Error {
public:
    using Error::Error;
};

// Requested e0 target lies outside the achievable range of the bracket.
class UnbracketedTargetError : public Error {
public:
    UnbracketedTargetError(const std::string& msg, double e0_min, double e0_max)
        : Error(msg), achievable_min(e0_min), achievable_max(e0_max) {}
    double achievable_min;
    double achievable_max;
};

// Iterative solver failed to reach tolerance within the iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input file; message carries file/line/column.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace rateproj

#endif  // RATEPROJ_ERROR_HPP_
