#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hscm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad parameters, coordinates
/// outside a support, invalid configuration).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// The naive sampler refuses graphs above its quadratic-cost bound unless
/// explicitly overridden.
class SizeGuardError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Numerical failure: non-convergence, disagreeing dual routes, degenerate
/// estimator input.
class NumericalError : public Error
{
public:
    using Error::Error;
};

class QuadratureError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class InsufficientTailError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class IoError : public Error
{
public:
    using Error::Error;
};

class ParseError : public IoError
{
public:
    ParseError(const std::string& what, std::size_t line)
        : IoError(what + " (line " + std::to_string(line) + ")"), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace hscm
