#pragma once

#include <stdexcept>
#include <string>

namespace hb {

// Base for every error raised by the library. The CLI maps each subclass to
// its own exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition does not hold (singular curve, log of a
// nonpositive number, parameters outside a theorem's range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Two directed bounds overlap; the caller must raise the precision.
class IndeterminateError : public Error {
public:
    using Error::Error;
};

// An enumeration would exceed the configured size ceiling.
class ResourceGuardError : public Error {
public:
    using Error::Error;
};

}  // namespace hb
