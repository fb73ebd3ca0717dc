#pragma once

#include <stdexcept>
#include <string>

namespace pairtrap {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A series, quadrature or iteration failed to reach its tolerance.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A special-function evaluation failed inside a solver; carries the
/// offending arguments in the message.
struct EvaluationError : Error {
    explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

/// An energy window contained fewer roots than requested.
struct WindowTooNarrow : Error {
    explicit WindowTooNarrow(const std::string& msg) : Error(msg) {}
};

/// The supplied energy does not satisfy the matching condition.
struct NotAnEigenvalue : Error {
    explicit NotAnEigenvalue(const std::string& msg) : Error(msg) {}
};

/// A solution grid cannot resolve a required feature (e.g. the step edge).
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};

/// Two fields that must share a grid do not.
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

/// An integration sweep left the floating-point range.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// A linear solve encountered a singular system.
struct SolveError : Error {
    explicit SolveError(const std::string& msg) : Error(msg) {}
};

} // namespace pairtrap
