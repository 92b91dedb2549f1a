#pragma once

#include <stdexcept>
#include <string>

namespace capent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent metadata (e.g. no bipartite split), bad CLI/config values.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Inputs that cannot come from any physical dynamics.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace capent
