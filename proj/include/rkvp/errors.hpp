#pragma once

#include <stdexcept>
#include <string>

namespace rkvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument: out-of-domain point, bad derivative order, malformed config.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

/// A quantity cannot be evaluated at the requested point (e.g. a limit that
/// does not exist).
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

/// The iterate hit the phi floor; the nonlinear right-hand side is singular.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double nu, double t)
        : Error(msg), nu(nu), t(t) {}
    double nu;
    double t;
};

/// Gram matrix could not be factorized even after jitter retries.
class ConditioningError : public Error {
public:
    explicit ConditioningError(const std::string& msg) : Error(msg) {}
};

/// An iterative solve (Newton) failed to converge.
class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

/// File could not be opened or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace rkvp
