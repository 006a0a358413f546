#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swsync {

/// Base class for all domain failures raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed edge-list input. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Moments that no non-negative triangular density reproduces.
class FitError : public Error {
public:
    using Error::Error;
};

/// Iterative method gave up (eigensolver sweeps, cycle detection, ...).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Non-finite state during time integration.
class BlowUpError : public Error {
public:
    BlowUpError(double time, const std::string& what)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace swsync
