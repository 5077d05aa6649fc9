#pragma once

#include <stdexcept>
#include <string>

namespace ppat {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value violated a documented domain constraint (range, emptiness, ...).
class DomainError : public Error {
    using Error::Error;
};

/// Division by an exact zero.
class DivisionByZeroError : public Error {
public:
    DivisionByZeroError() : Error("division by zero") {}
};

/// Scheme parameters failed validation (m > n, n = 0, ...).
class InvalidParamsError : public Error {
    using Error::Error;
};

/// An exhaustive computation would exceed its configured budget.
class BudgetExceededError : public Error {
    using Error::Error;
};

/// A challenge form the backend cannot serve (e.g. repeated positions
/// against a per-combination digest store).
class UnsupportedChallengeError : public Error {
    using Error::Error;
};

/// A request that is neither an accept nor a reject: malformed lengths,
/// out-of-range positions, unknown key ids.
class ProtocolError : public Error {
    using Error::Error;
};

/// A stored record failed structural validation on load or verify.
class IntegrityError : public Error {
    using Error::Error;
};

/// Reading an input source failed part-way through.
class IoError : public Error {
    using Error::Error;
};

} // namespace ppat
