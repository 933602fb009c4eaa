// errors.hpp — Exception hierarchy shared by all qfc modules.

#pragma once

#include <stdexcept>
#include <string>

namespace qfc {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameter values (bad dimensions, p outside [0,1], sigma <= 0 ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A numerical precondition was violated (non-Hermitian input, size mismatch).
class ContractError : public Error {
public:
    using Error::Error;
};

// Argument outside a function's validated accuracy range.
class RangeError : public Error {
public:
    using Error::Error;
};

// Post-selection onto a subspace carrying (numerically) zero amplitude.
class PostselectError : public Error {
public:
    using Error::Error;
};

// Lattice/guard configuration cannot support the requested evolution.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Tomography quorum problems: singular B matrix or incomplete count data.
class QuorumError : public Error {
public:
    using Error::Error;
};

}  // namespace qfc
