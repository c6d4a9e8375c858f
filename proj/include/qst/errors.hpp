#pragma once

#include <stdexcept>

namespace qst {

/// Argument outside an operation's domain: an invalid probability, a
/// non-unitary matrix, an unknown gate label, an out-of-range angle.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands whose qubit counts or matrix shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine did not produce a trustworthy value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map handed to something that needs a physical (CP) channel.
class NotCompletelyPositive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qst
