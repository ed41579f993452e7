#pragma once

#include <stdexcept>
#include <string>

namespace codediter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// NaN or infinity where a finite value is required.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A factorization met a (numerically) rank-deficient input it cannot continue from.
class DegenerateBasisError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be read, parsed or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace codediter
