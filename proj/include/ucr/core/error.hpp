// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ucr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `location` is "line N" or a field path such as
/// "/generators/3/p_max".
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : Error(location + ": " + what), location_(location) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Shapes that do not agree (bus counts, horizons, feature widths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Gradient descent produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(double learning_rate, const std::string& what)
      : Error(what), learning_rate_(learning_rate) {}
  double learning_rate() const { return learning_rate_; }

 private:
  double learning_rate_;
};

}  // namespace ucr
