#pragma once

#include <stdexcept>
#include <string>

namespace dcc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside the operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Requested irrep degree exceeds what the small-d evaluator supports.
class DegreeOverflow : public Error {
public:
    using Error::Error;
};

/// Explicit dense construction refused because the space is too large.
class DimensionGuard : public Error {
public:
    using Error::Error;
};

/// A finite design failed its orthogonality certification.
class CertificationError : public Error {
public:
    using Error::Error;
};

/// A design file is malformed.
class DesignFormatError : public Error {
public:
    using Error::Error;
};

}  // namespace dcc
