#pragma once

#include <stdexcept>

namespace bellpair {

// Input matrix fails a structural requirement (Hermiticity, trace, shape).
class ValidationError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Scalar parameter outside its documented range.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

// A correlation matrix whose reconstruction is not positive semidefinite.
class UnphysicalCorrelationsError : public ValidationError {
  using ValidationError::ValidationError;
};

// A marginal (or other PSD input) has an eigenvalue below rank_tol, so the
// requested inverse square root does not exist.
class SingularMarginalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A filter maps the state to (numerically) zero.
class AnnihilatedStateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// R = 0: no measurement direction is preferred, optimal settings undefined.
class DegenerateStateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text input does not match the expected JSON schema.
class ParseError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace bellpair
