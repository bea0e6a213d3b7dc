// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsvar {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- time scale construction and lookup ---

class EmptyTimeScale : public Error {
public:
    using Error::Error;
};

class BadGrid : public Error {
public:
    using Error::Error;
};

class NotInScale : public Error {
public:
    using Error::Error;
};

class TooSmall : public Error {
public:
    using Error::Error;
};

// --- expression parsing and evaluation ---

/// Malformed expression text; position is the 0-based offset of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t position)
        : Error(message + " (offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Identifier that is not a known variable or function for the declared dimension.
class UnknownVariable : public Error {
public:
    UnknownVariable(const std::string& message, std::size_t position)
        : Error(message + " (offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the domain of a subexpression (ln/sqrt of a negative,
/// division by zero, fractional power of a negative base).
class DomainError : public Error {
public:
    DomainError(const std::string& message, std::string subexpression)
        : Error(message + " in \"" + subexpression + "\""),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

// --- variational checks ---

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class WrongFlavor : public Error {
public:
    using Error::Error;
};

/// The transformed time map fails to be strictly increasing.
class NotMonotone : public Error {
public:
    using Error::Error;
};

// --- search ---

class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Enumeration would exceed the configured candidate cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& message, double candidate_count)
        : Error(message), candidate_count_(candidate_count) {}

    /// Number of candidates that would have been generated.
    double candidate_count() const noexcept { return candidate_count_; }

private:
    double candidate_count_;
};

class SingularJacobian : public Error {
public:
    using Error::Error;
};

/// Newton iteration stopped short of the residual target; carries the
/// max-norm residual after each iteration.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& message, std::vector<double> residual_history)
        : Error(message), residual_history_(std::move(residual_history)) {}

    const std::vector<double>& residual_history() const noexcept {
        return residual_history_;
    }

private:
    std::vector<double> residual_history_;
};

}  // namespace tsvar
