#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aoiq {

/// Base error carrying a stable machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Rejected input: bad parameters, malformed configs, dimension mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The math gave out: nonabsorbing chain, singular solve, divergent sum.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace aoiq
