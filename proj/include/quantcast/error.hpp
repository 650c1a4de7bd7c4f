#pragma once

#include <stdexcept>
#include <string>

namespace quantcast {

/// Bad input to an operation (wrong length, out-of-range order, degenerate segment).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Object is not in a state where the operation is defined (e.g. missing anchors).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Not enough observations left after differencing / lagging.
class InsufficientData : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Dimension mismatch in neural-network inputs or weights.
class ShapeError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Optimizer did not converge from any start.
class FitFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No candidate in an order search produced a usable model.
class NoModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed external data (CSV, JSON, remote response).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed data that violates an integrity rule (duplicate dates, negative prices).
class DataIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Network request failed after all retries.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace quantcast
