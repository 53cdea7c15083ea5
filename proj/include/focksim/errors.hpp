#pragma once

#include <stdexcept>
#include <string>

namespace focksim {

/// Base class for all library errors.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad argument values: dimensions below 2, negative counts, indices out of range.
class InvalidArgumentError : public SimError {
public:
    using SimError::SimError;
};

/// Truncation dimension too small for the requested amplitude.
class TruncationError : public SimError {
public:
    using SimError::SimError;
};

/// Incompatible dimensions between operators and states.
class ShapeError : public SimError {
public:
    using SimError::SimError;
};

/// Norm lost to truncation exceeded the per-run budget.
class NormLeakageError : public SimError {
public:
    using SimError::SimError;
};

/// Config parsing or validation failure; carries the offending field path.
class ConfigError : public SimError {
public:
    ConfigError(std::string field, const std::string& msg)
        : SimError(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace focksim
