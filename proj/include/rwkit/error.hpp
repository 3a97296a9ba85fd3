#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Dimensions of two operands disagree, or a shape is unsupported by a transform.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A non-finite value appeared during an iteration.
class NumericError : public Error {
public:
  NumericError(const std::string& what, std::size_t iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

private:
  std::size_t iteration_;
};

/// An iterative solver hit its iteration cap before meeting its tolerance.
class IterationCapError : public Error {
public:
  using Error::Error;
};

/// A certificate precondition such as alpha*tau > 2*epsilon does not hold.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Monte-Carlo estimation produced no usable instance.
class EstimationError : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace rwkit
