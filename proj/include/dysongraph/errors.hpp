#pragma once

#include <stdexcept>
#include <string>

namespace dysongraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. coupling outside (0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exponential-size guard tripped.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Requested order or precision lies beyond what was computed.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int required_lo = 0)
        : Error(what), required_lo_(required_lo) {}
    int required_lo() const noexcept { return required_lo_; }

private:
    int required_lo_;
};

/// Step functions that cannot be brought to a common partition.
class RefinementError : public Error {
public:
    using Error::Error;
};

/// Coefficients outside the supported class (e.g. non-integer multiplicities).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Operands living in different universes / target algebras.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// A postcondition that can only fail through an implementation bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace dysongraph
