#pragma once

#include <stdexcept>
#include <string>

namespace qgb {

// Base class for numerical failures (divergence, non-convergence, rejected inputs).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a quantity that must be finite diverges.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Inputs that are inconsistent with the declared configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Even space dimension n >= 4. */
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 4 || n % 2 != 0)
      throw ConfigError("dimension must be an even integer >= 4, got " + std::to_string(n));
  }

  int value() const { return n_; }
  int half() const { return n_ / 2; }
  operator int() const { return n_; }

  friend bool operator==(Dimension a, Dimension b) { return a.n_ == b.n_; }

 private:
  int n_;
};

}  // namespace qgb
