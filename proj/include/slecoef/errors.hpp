#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slecoef {

// Base class of everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed text or conflicting options (CLI exit code 2).
struct UsageError : Error {
  using Error::Error;
};
struct ParseError : UsageError {
  using UsageError::UsageError;
};

// Numeric and solver failures (CLI exit code 3).
struct DomainError : Error {
  using Error::Error;
};

struct SingularPivot : Error {
  SingularPivot(std::string what, std::vector<long> i, std::vector<long> j)
      : Error(std::move(what)), index_i(std::move(i)), index_j(std::move(j)) {}
  std::vector<long> index_i, index_j;
};

struct EtaRangeError : DomainError {
  using DomainError::DomainError;
};

struct CompileError : Error {
  using Error::Error;
};

struct SpectralFailure : Error {
  SpectralFailure(std::string what, double edge_mass)
      : Error(std::move(what)), edge_mass(edge_mass) {}
  double edge_mass;
};

struct FitError : Error {
  using Error::Error;
};

struct McError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace slecoef
