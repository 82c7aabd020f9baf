#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mop {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownNodeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

enum class ProbeFailure { NotObserved, AlreadyExplored, BudgetExhausted };

class ProbeError : public Error {
 public:
  ProbeError(ProbeFailure reason, const std::string& what)
      : Error(what), reason_(reason) {}

  ProbeFailure reason() const noexcept { return reason_; }

 private:
  ProbeFailure reason_;
};

}  // namespace mop
