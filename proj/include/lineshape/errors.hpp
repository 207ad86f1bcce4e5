// errors.hpp — exception types shared by the lineshape library

#pragma once

#include <stdexcept>
#include <string>

namespace lineshape {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its tolerance (maps to CLI exit 3).
class NumericalError : public Error {
public:
    using Error::Error;
};

class DenominatorNearZero : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RemovableSingularity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleProximity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleOnPath : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroArea : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class WindowMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed configuration text.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

    int line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    std::string message_;
};

/// A field violates its documented constraint.
class ValidationError : public Error {
public:
    ValidationError(std::string field, std::string constraint)
        : Error(field + ": " + constraint), field_(std::move(field)), constraint_(std::move(constraint)) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

} // namespace lineshape
