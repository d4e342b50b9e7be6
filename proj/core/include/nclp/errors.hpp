#pragma once

#include <stdexcept>
#include <string>

namespace nclp {

/// Shapes, descriptors or references that do not fit together.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (e.g. p < 1,
/// a non-self-adjoint argument to a spectral function).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A decomposition or iteration failed numerically.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nclp
