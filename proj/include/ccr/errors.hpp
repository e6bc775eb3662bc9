#pragma once

#include <stdexcept>
#include <string>

namespace ccr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MassMismatch : public Error {
public:
    using Error::Error;
};

class GroupMismatch : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature exhausted its budget above the requested tolerance.
class QuadratureNonConvergence : public Error {
public:
    QuadratureNonConvergence(const std::string& what, double error_estimate)
        : Error(what), error_estimate_(error_estimate) {}
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

/// The n = 0 line integral has an endpoint singularity that needs splitting.
class SingularQuadrature : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NegativeInput : public Error {
public:
    using Error::Error;
};

/// The group-averaged field does not exist off the a(0, k, 0) = 0 subspace.
class ZeroModeDivergence : public Error {
public:
    using Error::Error;
};

class ZeroModeUndefined : public Error {
public:
    using Error::Error;
};

class NonSymplectic : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ccr
