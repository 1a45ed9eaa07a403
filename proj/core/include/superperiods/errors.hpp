#pragma once

#include <stdexcept>
#include <string>

namespace superperiods {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user input (bad polynomial, degree too small, malformed divisor).
struct InputError : Error {
  using Error::Error;
};

// A ball straddles a branch cut or leaves a function's domain.
struct DomainError : Error {
  using Error::Error;
};

// Not enough precision to certify a result; the pipeline may retry.
struct PrecisionError : Error {
  using Error::Error;
};

// Retries exhausted.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// Inconsistency that indicates a bug rather than bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace superperiods
