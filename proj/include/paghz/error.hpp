#ifndef PAGHZ_ERROR_HPP
#define PAGHZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace paghz {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable tag used in reports ("DegenerateState", ...).
    virtual const char* kind() const noexcept { return "Error"; }
};

class InvalidParams : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "InvalidParams"; }
};

/// The state vector has (numerically) zero norm, e.g. the odd GHZ state at alpha = 0.
class DegenerateState : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "DegenerateState"; }
};

class InvalidReduction : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "InvalidReduction"; }
};

class CutoffExceeded : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "CutoffExceeded"; }
};

/// A quantity that must be real came out with a significant imaginary part.
/// This signals an implementation bug, not a physical condition.
class NonRealResult : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "NonRealResult"; }
};

class UndefinedQ : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "UndefinedQ"; }
};

class UndefinedG3 : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "UndefinedG3"; }
};

}  // namespace paghz

#endif  // PAGHZ_ERROR_HPP
