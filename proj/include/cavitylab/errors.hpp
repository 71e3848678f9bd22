#pragma once

#include <stdexcept>
#include <string>

namespace cavitylab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a formula (zero detuning, non-positive
// velocity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent configuration. key() names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// The adaptive integrator could not make progress.
class StiffnessError : public Error {
 public:
  StiffnessError(double time, const std::string& what)
      : Error(what + " at t = " + std::to_string(time) + " us"), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Adaptive quadrature failed to reach the requested accuracy.
class QuadratureError : public Error {
 public:
  QuadratureError(double estimate, double error_estimate)
      : Error("quadrature did not converge: estimate " +
              std::to_string(estimate) + ", error estimate " +
              std::to_string(error_estimate)),
        estimate_(estimate),
        error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace cavitylab
