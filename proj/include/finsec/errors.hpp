#pragma once

#include <stdexcept>
#include <string>

namespace finsec {

// Base class for all library errors. Each subclass maps to one failure
// category and one CLI exit code (see tools/).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A matrix or vector argument has incompatible or unsupported dimensions.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A factorization detected (numerical) rank deficiency where a full-rank
// matrix is required.
class RankDeficient : public Error {
public:
    using Error::Error;
};

// An index argument lies outside its admissible range.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// A function produced NaN or infinity where a finite value is required.
class NonFiniteValue : public Error {
public:
    using Error::Error;
};

// Root finding for the inverse of a diffeomorphism did not reach the
// requested tolerance.
class InverseNotConverged : public Error {
public:
    using Error::Error;
};

// Minor enumeration would exceed the hard combination budget.
class TooManyMinors : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent user configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace finsec
