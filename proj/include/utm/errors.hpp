#pragma once

#include <stdexcept>
#include <string>

namespace utm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A geometric operation was handed a degenerate input (zero vector, coincident points).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Bad parameters or scenario contents.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Scenario file could not be parsed.
class ParseError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// The planner ran out of iterations before reaching the goal region.
class PlanningError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace utm
