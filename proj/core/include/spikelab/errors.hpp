#pragma once

#include <stdexcept>
#include <string>

namespace spikelab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid ensemble dimensions (p < n, empty matrix, too many spikes).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the documented domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver did not converge within its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Requested scaling is undefined for the spike configuration.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A Nystrom evaluation did not stabilise under quadrature refinement.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// ODE integration failed (step size underflow or step budget exhausted).
class ODEError : public Error {
public:
    using Error::Error;
};

/// Malformed combinatorial input, e.g. an edge path that is not even.
class StructureError : public Error {
public:
    using Error::Error;
};

/// Exact enumeration requested for a law without finite support.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or persisted file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace spikelab
