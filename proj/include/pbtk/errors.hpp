#pragma once

#include <stdexcept>
#include <string>

namespace pbtk {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalues coincide within the gap threshold (Jordan block / exceptional point).
class DefectiveMatrix : public Error {
public:
    using Error::Error;
};

/// Two-level model parameters sit on or beyond the exceptional point (Omega not real positive).
class ExceptionalPoint : public Error {
public:
    using Error::Error;
};

/// A precondition on an input value was violated; the message names the constraint.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Polynomial degree would exceed the configured cap.
class DegreeOverflow : public Error {
public:
    DegreeOverflow(int needed, int cap)
        : Error("polynomial degree " + std::to_string(needed) + " exceeds cap " +
                std::to_string(cap) + " (raise the cap to at least " + std::to_string(needed) + ")"),
          needed_(needed) {}

    int needed() const noexcept { return needed_; }

private:
    int needed_;
};

/// Malformed configuration or command line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace pbtk
