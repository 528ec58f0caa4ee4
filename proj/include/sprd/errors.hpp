#pragma once

#include <stdexcept>
#include <string>

namespace sprd {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input lies outside the function's domain (pole, negative coefficient, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A configured hard limit was exceeded (derivative-order cap, panel budget).
struct CapacityError : Error {
    using Error::Error;
};

/// An adaptive solve hit its maximum resolution without certifying the result.
struct ResolutionError : Error {
    using Error::Error;
};

/// A linear system could not be solved (singular or indefinite matrix).
struct SolverError : Error {
    using Error::Error;
};

namespace detail {
std::string format_achieved(double achieved);
}

/// A quadrature or iteration finished above its requested tolerance.
struct AccuracyError : Error {
    AccuracyError(const std::string& msg, double achieved)
        : Error(msg + " (achieved error " + detail::format_achieved(achieved) + ")"),
          achieved_error(achieved) {}
    double achieved_error;
};

/// A reference quantity is not accurate enough for the requested measurement.
struct PrecisionError : Error {
    using Error::Error;
};

/// Malformed expression or configuration text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), where(position) {}
    std::size_t where;
};

} // namespace sprd
