#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdev {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

/// A pivot of the banded factorization fell below the singularity threshold.
class SingularSystem : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "SingularSystem"; }
};

/// t_lambda <= 2(E - V_b): the grid is too coarse for the requested energy.
class PreconditionViolated : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "PreconditionViolated"; }
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "DegenerateDenominator"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "InvalidArgument"; }
};

class UnknownPreset : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "UnknownPreset"; }
};

/// An iteration ran out of steps. Carries the per-step update norms.
class MaxIterationsExceeded : public Error {
public:
    MaxIterationsExceeded(const std::string& what, std::vector<double> history,
                          std::vector<double> best_iterate = {})
        : Error(what), history_(std::move(history)), best_(std::move(best_iterate)) {}

    const char* kind() const noexcept override { return "MaxIterationsExceeded"; }
    const std::vector<double>& history() const noexcept { return history_; }
    const std::vector<double>& best_iterate() const noexcept { return best_; }

private:
    std::vector<double> history_;
    std::vector<double> best_;
};

/// Configuration text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}
    const char* kind() const noexcept override { return "ParseError"; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A configuration value is out of range. `field()` is the dotted key path.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const char* kind() const noexcept override { return "ValidationError"; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace qdev
