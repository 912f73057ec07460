#pragma once

#include <stdexcept>
#include <string>

namespace dbbound {

// Base of every error raised by the library. The CLI maps the two families
// below onto distinct exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Bad user input: parameters, correlations, grids.
class InputError : public Error {
   public:
    using Error::Error;
};

// Numerical failure inside an otherwise valid computation.
class NumericError : public Error {
   public:
    using Error::Error;
};

class InvalidParams : public InputError {
   public:
    using InputError::InputError;
};

class InvalidCorrelation : public InputError {
   public:
    using InputError::InputError;
};

class DomainError : public InputError {
   public:
    using InputError::InputError;
};

class SingularConditioning : public NumericError {
   public:
    using NumericError::NumericError;
};

class NegativeInformation : public NumericError {
   public:
    using NumericError::NumericError;
};

class EmptyFamily : public NumericError {
   public:
    using NumericError::NumericError;
};

}  // namespace dbbound
