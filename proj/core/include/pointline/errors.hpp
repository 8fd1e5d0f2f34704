#pragma once

#include <stdexcept>
#include <string>

namespace pointline {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: the request itself is ill-posed.
class DomainError : public Error {
public:
    using Error::Error;
};

// Well-posed request that the numerics could not complete.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public DomainError {
public:
    using DomainError::DomainError;
};

class NormViolation : public DomainError {
public:
    using DomainError::DomainError;
};

// beta == 0: the interaction has no local transfer-matrix form.
class SeparatedInteraction : public DomainError {
public:
    using DomainError::DomainError;
};

class NotInSubfamily : public DomainError {
public:
    using DomainError::DomainError;
};

class Unsupported : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateDenominator : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RootFindingIncomplete : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TrackingAmbiguity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GaugeSingularity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace pointline
