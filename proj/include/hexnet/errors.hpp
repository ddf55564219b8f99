#pragma once

#include <stdexcept>
#include <string>

namespace hexnet {

// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised while loading or validating a configuration document.
class ConfigError : public Error {
 public:
  enum class Kind { MissingKey, OutOfRange, NonIntegerThzCount, Malformed, UnknownKey };

  ConfigError(Kind kind, std::string key, const std::string& what)
      : Error(what), kind_(kind), key_(std::move(key)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

 private:
  Kind kind_;
  std::string key_;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Failures of the numerical engines (quadrature budget, inconsistent results,
// conditioning on a zero-probability event).
class NumericalError : public Error {
 public:
  enum class Kind { MaxDepthExceeded, NumericalInconsistency, DegenerateEvent };

  NumericalError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace hexnet
