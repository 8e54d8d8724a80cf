#pragma once

#include <stdexcept>
#include <string>

namespace birep {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- validation ---

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class UnknownEdge : public Error {
public:
    using Error::Error;
};

class BadEndpoint : public Error {
public:
    using Error::Error;
};

class SingularComponent : public Error {
public:
    using Error::Error;
};

// --- serialization ---

/// Carries a human-readable position (byte offset or JSON path) of the defect.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::string position)
        : Error(message + " (at " + position + ")"), position_(std::move(position)) {}
    const std::string& position() const { return position_; }

private:
    std::string position_;
};

// --- numerical decision procedures ---

/// A singular-value test landed inside the (tol, 10*tol) band; the verdict
/// would depend on the tolerance, so no verdict is given.
class ToleranceAmbiguous : public Error {
public:
    using Error::Error;
};

class NotBlockDiagonal : public Error {
public:
    using Error::Error;
};

class CopiesDisagree : public Error {
public:
    using Error::Error;
};

// --- matrix functions ---

class SingularInput : public Error {
public:
    using Error::Error;
};

class BranchCutHit : public Error {
public:
    using Error::Error;
};

class NoCommonBranch : public Error {
public:
    using Error::Error;
};

class SpectrumTooClustered : public Error {
public:
    using Error::Error;
};

/// A computed quantity failed its own a-posteriori accuracy check.
class NumericalError : public Error {
public:
    using Error::Error;
};

// --- solvers ---

class NotIsomorphicOrTooFar : public Error {
public:
    using Error::Error;
};

class CorrectionFailed : public Error {
public:
    using Error::Error;
};

class RecoveryFailed : public Error {
public:
    using Error::Error;
};

}  // namespace birep
