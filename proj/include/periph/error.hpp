#pragma once

#include <stdexcept>
#include <string>

namespace periph {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input (PD codes, group specs, presentations).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structurally invalid object or argument (bad index, failed invariant).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A configured resource limit (group order cap, search limit) was hit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A precondition of an algebraic operation does not hold.
class PreconditionFailed : public Error {
public:
    PreconditionFailed(std::string code, const std::string& what)
        : Error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// An internal consistency check failed; indicates a bug, never user error.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace periph
