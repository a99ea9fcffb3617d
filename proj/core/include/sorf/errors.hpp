#pragma once

#include <stdexcept>
#include <string>

namespace sorf {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs that violate a documented precondition (dimensions, ranges, shapes).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Failures of the numerical pipeline: deflation, positivity, breakdown.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateRotation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A subdiagonal pair (h_{k+1,k}, k_{k+1,k}) became negligible.
class DeflationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PositivityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A pole coincides with a node, or lies inside the support of the measure.
class SpectrumOverlapError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleCollisionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BreakdownError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Imported data failed re-validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace sorf
