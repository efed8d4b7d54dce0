#pragma once

#include <stdexcept>
#include <string>

namespace fqcircle {

// Argument outside the mathematical domain of an operation (non-finite input,
// alpha <= 0, energy above the spectral ceiling, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Result not representable in binary64.
class RangeError : public std::range_error {
  public:
    using std::range_error::range_error;
};

// Bad problem size or grid (d < 2, d > max_dimension, ...).
class ConfigurationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Dimension mismatch between operands.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Initial data that violate the constraint of a quantization case.
class ConsistencyError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// sin(xi) == 0: the closed-form wavefunction divides by zero there and the
// caller must use the analytic limit instead.
class DegenerateCaseError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Input violates a documented precondition (e.g. non-Hermitian matrix passed
// to the Hermitian eigensolver).
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fqcircle
