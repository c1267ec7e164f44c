#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace degenlab {

/// Invalid problem description. Carries the name of the violated standing
/// assumption ("(A.1)" ... "(A.5_SD)") when one applies.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, std::string assumption = {})
        : std::runtime_error(assumption.empty() ? msg : msg + " [violates " + assumption + "]"),
          assumption_(std::move(assumption)) {}

    const std::string& assumption() const { return assumption_; }

private:
    std::string assumption_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mismatched array/mesh sizes.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iteration or a linear solve failed to converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A refinement sequence was neither clearly convergent nor clearly
/// divergent. Carries the observed sequence for diagnostics.
class IndeterminateError : public std::runtime_error {
public:
    IndeterminateError(const std::string& msg, std::vector<double> sequence)
        : std::runtime_error(msg), sequence_(std::move(sequence)) {}

    const std::vector<double>& sequence() const { return sequence_; }

private:
    std::vector<double> sequence_;
};

}  // namespace degenlab
