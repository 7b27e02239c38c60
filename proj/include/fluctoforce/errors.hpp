// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace fluct {

// Closed-form evaluation hit a pole or a vanishing denominator
// (Maxwell-Garnett singularity, degenerate Fresnel denominator,
// normalization underflow). Signals an unphysical parameter set.
class SingularInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario / configuration file problems.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A physically valid but unsupported configuration was requested
// (e.g. plate pressure with a non-blackened outer face).
class UnsupportedConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive integration failed to reach the requested tolerance.
// Carries the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate(best_estimate), error_bound(error_bound) {}

  double best_estimate;
  double error_bound;
};

}  // namespace fluct
