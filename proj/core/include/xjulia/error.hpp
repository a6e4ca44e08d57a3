#pragma once

#include <stdexcept>
#include <string>

namespace xjulia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (user input).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A numerical contract was violated (non-convergence, failed residual or oracle check).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace xjulia
