#pragma once

#include <stdexcept>
#include <string>

namespace lfi {

/// Base class of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, non-finite value, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A linear-algebra step could not be completed (singular covariance, failed factorization).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace lfi
