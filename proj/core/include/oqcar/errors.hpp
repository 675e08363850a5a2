#pragma once

#include <stdexcept>
#include <string>

namespace oqcar {

// Raised when a configuration document is malformed or misses required fields.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Raised when the dissipative weight is zero and no steady state exists.
class DegenerateDynamicsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when the car's payoff difference cannot be made zero by any p_C.
class NoIndifferenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a numerical result drifts outside its guaranteed envelope.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oqcar
