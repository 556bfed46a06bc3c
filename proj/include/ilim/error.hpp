#pragma once

#include <stdexcept>
#include <string>

namespace ilim {

/// Input outside the domain of a map (e.g. x outside [0, 1] for a tent map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Violated precondition: mismatched slopes, insufficient depth, invalid tower...
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration exceeded its configured node cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ilim
