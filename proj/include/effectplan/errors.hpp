#pragma once

#include <stdexcept>
#include <string>

namespace effectplan {

/// An input lies outside the domain where an operation is defined
/// (e.g. a non-positive odds ratio, or RR * P0 >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was applied to a kind of value it does not accept.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Required context is missing or inconsistent (e.g. no baseline risk for an
/// RR target).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace effectplan
