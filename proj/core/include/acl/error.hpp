#pragma once

#include <stdexcept>
#include <string>

namespace acl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class SolverError : public Error {
public:
  using Error::Error;
};

// Descent collapsed onto the zero field.
class SeedError : public SolverError {
public:
  using SolverError::SolverError;
};

// A profile or grid is too coarse or too short for the requested quantity.
class AccuracyError : public Error {
public:
  using Error::Error;
};

class FitError : public Error {
public:
  using Error::Error;
};

} // namespace acl
